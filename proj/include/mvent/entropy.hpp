#ifndef MVENT_ENTROPY_HPP
#define MVENT_ENTROPY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvent/dynamics.hpp"
#include "mvent/extremal.hpp"
#include "mvent/space.hpp"

namespace mvent {

enum class Kind {
    kKtSep,
    kKtSpan,
    kCmSep,
    kCmSpan,
    kRhoSep,
    kRhoSpan,
    kHSep,
    kHSpan,
    kBranch,
    kUCover,
    kLCover,
    kBHaus,
};

const std::vector<Kind>& all_kinds();
const char* kind_name(Kind k);
// Throws kUnknownName.
Kind parse_kind(const std::string& name);
bool is_cover_kind(Kind k);

struct CountOptions {
    SolveMode mode = SolveMode::kAuto;
    std::size_t exact_budget = kDefaultExactBudget;
    std::size_t orbit_cap = kDefaultOrbitCap;
    std::size_t tuple_budget = kDefaultTupleBudget;
};

// Single-cell counts. `separated` picks s (max separated) or r (min spanning).
SolveResult count_kt(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                     std::size_t n, bool separated, const CountOptions& opt = {});
SolveResult count_cm(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                     std::size_t n, bool separated, const CountOptions& opt = {});
SolveResult count_rho(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                      std::size_t n, bool separated, const CountOptions& opt = {});
SolveResult count_haus(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                       std::size_t n, bool separated, const CountOptions& opt = {});
SolveResult count_branch(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                         std::size_t n, bool separated, const CountOptions& opt = {});
SolveResult count_ucover(const MapSequence& seq, const Cover& cover, std::size_t n, const CountOptions& opt = {});
SolveResult count_lcover(const MapSequence& seq, const Cover& cover, std::size_t n, const CountOptions& opt = {});

// Any count by kind. Cover kinds use the cover of closed eps-balls built by
// ball_cover.
SolveResult count_kind(const FiniteMetricSpace& space, const MapSequence& seq, Kind kind, std::size_t p,
                       double eps, std::size_t n, const CountOptions& opt = {});

// Least-squares slope of log(count) against n over the last `window` entries
// (counts[i] belongs to n = i + 1).
double fitted_slope(const std::vector<std::uint64_t>& counts, std::size_t window);
std::size_t default_window(std::size_t n_max);

struct EntropyEstimate {
    Kind kind{};
    std::size_t p = 0;
    // Separation scale, or the ball radius of the cover for cover kinds.
    double eps = 0;
    std::vector<std::uint64_t> counts;  // n = 1, 2, ...
    std::vector<double> rates;          // log(count) / n
    std::vector<Bound> bounds;          // per n
    double fitted_rate = 0;
    Bound bound = Bound::kExact;
    // True when the horizon stopped short of n_max because of a resource cap.
    bool truncated = false;
    std::string note;
};

struct SkippedCell {
    Kind kind{};
    std::size_t p = 0;
    double eps = 0;
    std::size_t n = 0;
    std::string reason;
};

struct ProfileOptions {
    std::vector<Kind> kinds = all_kinds();
    // Empty: per pseudometric, 8 values from diameter/2 halving each step.
    std::vector<double> eps_grid;
    std::size_t n_max = 10;
    std::size_t window = 0;  // 0: default_window(n_max)
    CountOptions count;
    // Single-valued selection used for the KT lower bound when the orbit set
    // exceeds the cap. Defaults to the median element of every image.
    std::optional<MapSequence> selection;
};

struct EntropyProfile {
    std::vector<EntropyEstimate> estimates;
    std::map<Kind, double> headline;
    std::map<Kind, Bound> headline_bound;
    std::vector<SkippedCell> skipped;
    std::vector<std::vector<double>> eps_grid;  // per pseudometric
    std::size_t window = 0;
};

std::vector<double> default_eps_grid(const FiniteMetricSpace& space, std::size_t p);

// Throws on resource caps in exact mode; in auto and greedy mode cells that
// hit a cap are skipped and listed.
EntropyProfile profile(const FiniteMetricSpace& space, const MapSequence& seq, const ProfileOptions& opt);

EntropyEstimate estimate(const FiniteMetricSpace& space, const MapSequence& seq, Kind kind, std::size_t p,
                         double eps, std::size_t n_max, std::size_t window, SolveMode mode);

// Single-valued selection picking the median element of every image.
MapSequence median_selection(const MapSequence& seq);

struct Prop61Result {
    std::vector<Index> exceptional;
    // False when minimality could only be established up to inclusion.
    bool minimum = true;
};

// Smallest set A such that p^H(phi^[j](x), phi^[j](y)) = p(f^[j](x), f^[j](y))
// for all j <= horizon and all x, y outside A. Throws kNotASelection naming
// the first (j, x) where f_j(x) is not in phi_j(x).
Prop61Result check_prop61(const FiniteMetricSpace& space, const MapSequence& seq, const MapSequence& selection,
                          std::size_t p, std::size_t horizon);

}  // namespace mvent

#endif
