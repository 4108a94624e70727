#ifndef MVENT_LAWS_HPP
#define MVENT_LAWS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mvent/dynamics.hpp"
#include "mvent/space.hpp"

namespace mvent {

struct GenParams {
    std::size_t min_points = 2;
    std::size_t max_points = 6;
    std::size_t metrics = 1;
    // Expected fraction of X in each image; images always hold at least one
    // point, and density 1 gives the full relation.
    double density = 0.4;
    std::size_t max_prefix = 1;
    std::size_t max_cycle = 2;
    std::size_t eps_count = 3;
    std::size_t n_max = 4;
};

struct LawInstance {
    std::uint64_t seed = 0;
    std::vector<std::vector<std::pair<double, double>>> coords;  // per pseudometric
    FiniteMetricSpace space;
    MapSequence seq;
    MapSequence selection;
    std::vector<std::vector<double>> eps;  // per pseudometric
    std::size_t n_max = 0;
};

// Deterministic in (seed, params): points uniform in the unit square with
// Euclidean distances, images uniform subsets of the given density.
LawInstance gen_system(std::uint64_t seed, const GenParams& params);

// One uniformly chosen image point per (map, point).
MapSequence gen_selection(std::uint64_t seed, const MapSequence& seq);

struct LawViolation {
    std::uint64_t seed = 0;
    std::string detail;    // which quantities, at which (p, eps, n)
    std::string instance;  // JSON serialization of the full instance
};

struct LawResult {
    std::string id;
    std::string module;
    std::string statement;
    std::size_t checked = 0;
    std::size_t skipped = 0;  // checks not run because an exact solver hit a cap
    std::vector<LawViolation> violations;
};

struct LawReport {
    std::uint64_t seed = 0;
    std::size_t count = 0;
    GenParams params;
    std::vector<LawResult> laws;
    bool pass = true;

    std::size_t violation_count() const;
};

class LawRecorder {
public:
    explicit LawRecorder(const LawInstance& inst) : inst_(inst) {}
    void check(bool ok, const std::string& detail);
    void skip() { ++skipped_; }

    std::size_t checked() const { return checked_; }
    std::size_t skipped() const { return skipped_; }
    const std::vector<std::string>& failures() const { return failures_; }
    const LawInstance& instance() const { return inst_; }

private:
    const LawInstance& inst_;
    std::size_t checked_ = 0;
    std::size_t skipped_ = 0;
    std::vector<std::string> failures_;
};

struct Law {
    std::string id;
    std::string module;
    std::string statement;
    std::function<void(const LawInstance&, LawRecorder&)> run;
};

const std::vector<Law>& law_registry();

// Instance i uses seed + i. Violations are listed in seed order. A nonempty
// `only` restricts the run to the named laws; unknown names throw kUnknownName.
LawReport run_suite(std::uint64_t seed, std::size_t count, const GenParams& params = {},
                    const std::vector<std::string>& only = {});

std::string instance_json(const LawInstance& inst);
std::string law_report_json(const LawReport& report);

}  // namespace mvent

#endif
