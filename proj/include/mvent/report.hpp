#ifndef MVENT_REPORT_HPP
#define MVENT_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mvent/entropy.hpp"
#include "mvent/laws.hpp"

namespace mvent {

// Command-line overrides; unset fields fall back to the spec's [analysis]
// section, then to the built-in defaults.
struct RunOptions {
    std::optional<std::size_t> n_max, window, orbit_cap, exact_budget, tuple_budget;
    std::optional<std::vector<double>> eps_grid;
    std::optional<SolveMode> mode;
    // Analyze: draws the KT fallback selection at random instead of taking
    // image medians, unless the spec names a selection.
    std::optional<std::uint64_t> seed;
};

struct Report {
    std::string json;
    std::string csv;
    std::string summary;
    // Targets met (example), finite-n laws held (verify, hyper).
    bool passed = true;
};

inline constexpr const char* kCsvHeader = "kind,p,eps,n,count,rate,bound";

// Shortest decimal that reads back to the same double.
std::string format_double(double v);

// Errors propagate as mvent::Error; see error_class for the exit mapping.
Report run_analyze(const std::string& spec_text, const RunOptions& opt);
Report run_hyper(const std::string& spec_text, const RunOptions& opt);
Report run_example(const std::string& name, std::size_t grid, std::size_t jbar, const RunOptions& opt);
Report run_verify(std::uint64_t seed, std::size_t count, const GenParams& params);

}  // namespace mvent

#endif
