#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvent/mvent.h"

namespace {

struct Common {
    std::size_t n_max = 0, window = 0, orbit_cap = 0, exact_budget = 0, tuple_budget = 0;
    std::vector<double> eps_grid;
    std::string mode;
    std::optional<std::uint64_t> seed;
    std::string json_path, csv_path, format = "summary";
};

void add_output(CLI::App* cmd, Common& c) {
    cmd->add_option("-o,--output", c.json_path, "Write the JSON report to this file");
    cmd->add_option("--csv", c.csv_path, "Write the CSV table to this file");
    cmd->add_option("--format", c.format, "What to print on stdout")
        ->check(CLI::IsMember({"summary", "json", "csv", "none"}));
}

void add_analysis(CLI::App* cmd, Common& c) {
    cmd->add_option("--n-max", c.n_max, "Largest orbit length (default 10)")->check(CLI::PositiveNumber);
    cmd->add_option("--eps-grid", c.eps_grid, "Scales, comma separated (default: 8 halvings from diam/2)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mode", c.mode, "Solver mode")->check(CLI::IsMember({"exact", "greedy", "auto"}));
    cmd->add_option("--window", c.window, "Trailing window of the rate fit")->check(CLI::PositiveNumber);
    cmd->add_option("--orbit-cap", c.orbit_cap, "Largest orbit set to enumerate")->check(CLI::PositiveNumber);
    cmd->add_option("--exact-budget", c.exact_budget, "Largest component for exact solvers")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tuple-budget", c.tuple_budget, "Largest block-tuple walk for cover kinds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Draw the KT fallback selection at random with this seed");
    add_output(cmd, c);
}

mvent_options options_of(const Common& c) {
    mvent_options o;
    mvent_options_init(&o);
    o.n_max = c.n_max;
    o.window = c.window;
    o.orbit_cap = c.orbit_cap;
    o.exact_budget = c.exact_budget;
    o.tuple_budget = c.tuple_budget;
    o.eps_grid = c.eps_grid.empty() ? nullptr : c.eps_grid.data();
    o.eps_count = c.eps_grid.size();
    o.mode = c.mode.empty() ? nullptr : c.mode.c_str();
    o.has_seed = c.seed.has_value();
    o.seed = c.seed.value_or(0);
    return o;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_file(const std::string& path, const char* text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

// Prints and writes the report, then releases it.
int finish(mvent_status st, mvent_report* r, const Common& c) {
    if (!r) {
        std::cerr << "error (" << mvent_status_name(st) << "): " << mvent_last_error() << "\n";
        return st;
    }
    if (!c.json_path.empty() && !write_file(c.json_path, mvent_report_json(r))) {
        std::cerr << "error: cannot write " << c.json_path << "\n";
        mvent_report_free(r);
        return MVENT_ERR_VALIDATION;
    }
    if (!c.csv_path.empty() && !write_file(c.csv_path, mvent_report_csv(r))) {
        std::cerr << "error: cannot write " << c.csv_path << "\n";
        mvent_report_free(r);
        return MVENT_ERR_VALIDATION;
    }
    if (c.format == "summary") std::cout << mvent_report_summary(r);
    if (c.format == "json") std::cout << mvent_report_json(r);
    if (c.format == "csv") std::cout << mvent_report_csv(r);
    mvent_report_free(r);
    return st;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy estimates for multivalued nonautonomous maps on finite metric spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mvent_version());

    Common analyze_opts, hyper_opts, example_opts, verify_opts;
    std::string analyze_spec, hyper_spec, example_name;
    std::size_t grid = 1024, jbar = 2;
    std::uint64_t verify_seed = 1;
    std::size_t verify_count = 100;
    bool inject_fault = false;
    mvent_verify_params vp;
    mvent_verify_params_init(&vp);

    auto* analyze = app.add_subcommand("analyze", "Estimate every entropy of a system spec");
    analyze->add_option("spec", analyze_spec, "System spec file")->required();
    add_analysis(analyze, analyze_opts);

    auto* hyper = app.add_subcommand("hyper", "Compare s_H with the induced map on the hyperspace");
    hyper->add_option("spec", hyper_spec, "System spec file")->required();
    add_analysis(hyper, hyper_opts);

    auto* example = app.add_subcommand("example", "Reproduce a worked example");
    example->add_option("name", example_name, "ex61, ex62, ex62_nonauto, ex64, shift2 or golden")->required();
    example->add_option("--grid", grid, "Grid cells for interval maps")->check(CLI::Range(2, 100000000));
    example->add_option("--jbar", jbar, "Length of the phi1 prefix minus one (ex62_nonauto, ex64)");
    add_analysis(example, example_opts);

    auto* verify = app.add_subcommand("verify", "Check the finite-n laws on random systems");
    verify->add_option("--seed", verify_seed, "First seed");
    verify->add_option("--count", verify_count, "Number of systems");
    verify->add_option("--min-points", vp.min_points, "Fewest points per system")->check(CLI::Range(1, 12));
    verify->add_option("--max-points", vp.max_points, "Most points per system")->check(CLI::Range(1, 12));
    verify->add_option("--metrics", vp.metrics, "Pseudometrics per system")->check(CLI::Range(1, 4));
    verify->add_option("--density", vp.density, "Expected image fraction")->check(CLI::Range(0.0, 1.0));
    verify->add_option("--eps-count", vp.eps_count, "Scales per pseudometric")->check(CLI::Range(1, 16));
    verify->add_option("--n-max", vp.n_max, "Largest orbit length")->check(CLI::Range(1, 8));
    verify->add_flag("--inject-fault", inject_fault)->group("");
    add_output(verify, verify_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : MVENT_ERR_PARSE;
    }

    mvent_report* r = nullptr;
    if (*analyze || *hyper) {
        const auto& path = *analyze ? analyze_spec : hyper_spec;
        const auto& c = *analyze ? analyze_opts : hyper_opts;
        std::string text;
        if (!read_file(path, text)) {
            std::cerr << "error: cannot read " << path << "\n";
            return MVENT_ERR_VALIDATION;
        }
        auto o = options_of(c);
        auto st = *analyze ? mvent_analyze(text.c_str(), &o, &r) : mvent_hyper(text.c_str(), &o, &r);
        return finish(st, r, c);
    }
    if (*example) {
        auto o = options_of(example_opts);
        auto st = mvent_example(example_name.c_str(), grid, jbar, &o, &r);
        return finish(st, r, example_opts);
    }
    if (inject_fault && mvent_set_fault_injection(1) != MVENT_OK) {
        std::cerr << "error: " << mvent_last_error() << "\n";
        return MVENT_ERR_VALIDATION;
    }
    auto st = mvent_verify(verify_seed, verify_count, &vp, &r);
    return finish(st, r, verify_opts);
}
