#include "mvent/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "mvent/error.hpp"
#include "mvent/examples.hpp"
#include "mvent/hyperspace.hpp"
#include "mvent/system_spec.hpp"

namespace mvent {

namespace {

using json = nlohmann::ordered_json;

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void apply(const RunOptions& o, ProfileOptions& p) {
    if (o.n_max) p.n_max = *o.n_max;
    if (o.window) p.window = *o.window;
    if (o.orbit_cap) p.count.orbit_cap = *o.orbit_cap;
    if (o.exact_budget) p.count.exact_budget = *o.exact_budget;
    if (o.tuple_budget) p.count.tuple_budget = *o.tuple_budget;
    if (o.eps_grid) p.eps_grid = *o.eps_grid;
    if (o.mode) p.count.mode = *o.mode;
    if (p.n_max < 1) throw Error(ErrorCode::kInvalidArgument, "n_max must be at least 1");
    for (double e : p.eps_grid)
        if (!(e > 0) || !std::isfinite(e)) throw Error(ErrorCode::kInvalidArgument, "eps values must be positive");
}

json options_json(const ProfileOptions& p, std::size_t window) {
    json kinds = json::array();
    for (auto k : p.kinds) kinds.push_back(kind_name(k));
    return {{"kinds", kinds},
            {"n_max", p.n_max},
            {"window", window},
            {"mode", mode_name(p.count.mode)},
            {"orbit_cap", p.count.orbit_cap},
            {"exact_budget", p.count.exact_budget},
            {"tuple_budget", p.count.tuple_budget}};
}

json profile_json(const EntropyProfile& prof) {
    json headline = json::object();
    for (auto k : all_kinds()) {
        auto it = prof.headline.find(k);
        if (it == prof.headline.end()) continue;
        headline[kind_name(k)] = {{"rate", it->second}, {"bound", bound_name(prof.headline_bound.at(k))}};
    }
    json estimates = json::array();
    for (const auto& e : prof.estimates) {
        json bounds = json::array();
        for (auto b : e.bounds) bounds.push_back(bound_name(b));
        json one = {{"kind", kind_name(e.kind)}, {"p", e.p},           {"eps", e.eps},
                    {"fitted_rate", e.fitted_rate}, {"bound", bound_name(e.bound)}, {"truncated", e.truncated},
                    {"counts", e.counts}, {"rates", e.rates},       {"bounds", bounds}};
        if (!e.note.empty()) one["note"] = e.note;
        estimates.push_back(one);
    }
    json skipped = json::array();
    for (const auto& s : prof.skipped)
        skipped.push_back(
            {{"kind", kind_name(s.kind)}, {"p", s.p}, {"eps", s.eps}, {"n", s.n}, {"reason", s.reason}});
    json grid = json::array();
    for (const auto& g : prof.eps_grid) grid.push_back(g);
    // Open comparisons, reported side by side and never asserted.
    json observed = json::array();
    auto pair = [&](Kind a, Kind b) {
        if (prof.headline.count(a) && prof.headline.count(b))
            observed.push_back({{"left", kind_name(a)},
                                {"right", kind_name(b)},
                                {"left_rate", prof.headline.at(a)},
                                {"right_rate", prof.headline.at(b)}});
    };
    pair(Kind::kCmSep, Kind::kHSep);
    return {{"eps_grid", grid}, {"window", prof.window}, {"headline", headline},
            {"estimates", estimates}, {"skipped", skipped}, {"observations", observed}};
}

void csv_rows(std::ostringstream& out, const EntropyProfile& prof, const std::string& prefix) {
    for (const auto& e : prof.estimates)
        for (std::size_t i = 0; i < e.counts.size(); ++i)
            out << prefix << kind_name(e.kind) << ',' << e.p << ',' << format_double(e.eps) << ',' << i + 1 << ','
                << e.counts[i] << ',' << fixed6(e.rates[i]) << ',' << bound_name(e.bounds[i]) << '\n';
}

void summary_rows(std::ostringstream& out, const EntropyProfile& prof) {
    for (auto k : all_kinds()) {
        auto it = prof.headline.find(k);
        if (it == prof.headline.end()) continue;
        char buf[96];
        std::snprintf(buf, sizeof buf, "  %-9s %10s  %s\n", kind_name(k), fixed6(it->second).c_str(),
                      bound_name(prof.headline_bound.at(k)));
        out << buf;
    }
    if (!prof.skipped.empty()) out << "  " << prof.skipped.size() << " cells skipped (resource caps)\n";
}

std::string hash_of(const SystemSpec& spec) { return hex64(fnv1a64(serialize_spec(spec))); }

const char* relation_name(Target::Relation r) {
    switch (r) {
        case Target::Relation::kNear:
            return "near";
        case Target::Relation::kAtMost:
            return "at_most";
        case Target::Relation::kAtLeast:
            return "at_least";
        case Target::Relation::kReport:
            return "report";
    }
    return "report";
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Report run_analyze(const std::string& spec_text, const RunOptions& opt) {
    auto spec = parse_spec(spec_text);
    auto inst = realize(spec);
    auto popt = inst.options;
    apply(opt, popt);
    std::string selection = "median";
    if (inst.selection) {
        selection = "spec";
    } else if (opt.seed) {
        popt.selection = gen_selection(*opt.seed, inst.seq);
        selection = "random";
    }
    auto prof = profile(inst.space, inst.seq, popt);

    Report r;
    json doc = {{"command", "analyze"},
                {"spec_hash", hash_of(spec)},
                {"space", {{"points", inst.space.size()}, {"pseudometrics", inst.space.metric_count()}}},
                {"schedule", {{"prefix", inst.seq.prefix().size()}, {"cycle", inst.seq.cycle().size()}}},
                {"options", options_json(popt, prof.window)},
                {"selection", selection}};
    if (opt.seed) doc["seed"] = *opt.seed;
    doc["profile"] = profile_json(prof);
    r.json = doc.dump(2) + "\n";

    std::ostringstream csv;
    csv << kCsvHeader << '\n';
    csv_rows(csv, prof, "");
    r.csv = csv.str();

    std::ostringstream sum;
    sum << "spec " << hash_of(spec) << ": " << inst.space.size() << " points, n_max " << popt.n_max << ", window "
        << prof.window << ", mode " << mode_name(popt.count.mode) << "\n";
    summary_rows(sum, prof);
    r.summary = sum.str();
    return r;
}

Report run_hyper(const std::string& spec_text, const RunOptions& opt) {
    auto spec = parse_spec(spec_text);
    auto inst = realize(spec);
    auto popt = inst.options;
    apply(opt, popt);
    build_hyperspace(inst.space);  // size check before any counting

    Report r;
    json tables = json::array();
    std::ostringstream csv, sum;
    csv << "p,eps,n,s_haus,s_hyper,s_kt,bound_haus,bound_hyper,bound_kt\n";
    sum << "spec " << hash_of(spec) << ": hyperspace of " << inst.space.size() << " points ("
        << ((std::size_t{1} << inst.space.size()) - 1) << " subsets), n_max " << popt.n_max << ", mode "
        << mode_name(popt.count.mode) << "\n";
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p) {
        auto grid = popt.eps_grid.empty() ? default_eps_grid(inst.space, p) : popt.eps_grid;
        for (double eps : grid) {
            auto cmp = compare_hyper(inst.space, inst.seq, p, eps, popt.n_max, popt.count, kDefaultHyperLimit);
            r.passed = r.passed && cmp.holds;
            json rows = json::array();
            for (const auto& row : cmp.rows) {
                rows.push_back({{"n", row.n},
                                {"s_haus", row.s_haus},
                                {"s_hyper", row.s_hyper},
                                {"s_kt", row.s_kt},
                                {"bound_haus", bound_name(row.bound_haus)},
                                {"bound_hyper", bound_name(row.bound_hyper)},
                                {"bound_kt", bound_name(row.bound_kt)}});
                csv << p << ',' << format_double(eps) << ',' << row.n << ',' << row.s_haus << ',' << row.s_hyper
                    << ',' << row.s_kt << ',' << bound_name(row.bound_haus) << ',' << bound_name(row.bound_hyper)
                    << ',' << bound_name(row.bound_kt) << '\n';
            }
            tables.push_back({{"p", p}, {"eps", eps}, {"holds", cmp.holds}, {"rows", rows}});
            std::size_t last_h = cmp.rows.empty() ? 0 : cmp.rows.back().s_haus;
            std::size_t last_k = cmp.rows.empty() ? 0 : cmp.rows.back().s_hyper;
            sum << "  p=" << p << " eps=" << format_double(eps) << "  s_H(n_max)=" << last_h
                << "  s(phi*)(n_max)=" << last_k << "  " << (cmp.holds ? "PASS" : "FAIL") << "\n";
        }
    }
    json doc = {{"command", "hyper"},
                {"spec_hash", hash_of(spec)},
                {"space", {{"points", inst.space.size()}, {"pseudometrics", inst.space.metric_count()}}},
                {"hyperspace_points", (std::size_t{1} << inst.space.size()) - 1},
                {"options", options_json(popt, 0)},
                {"verdict", r.passed ? "PASS" : "FAIL"},
                {"tables", tables}};
    r.json = doc.dump(2) + "\n";
    r.csv = csv.str();
    sum << "verdict " << (r.passed ? "PASS" : "FAIL") << "\n";
    r.summary = sum.str();
    return r;
}

Report run_example(const std::string& name, std::size_t grid, std::size_t jbar, const RunOptions& opt) {
    auto ex = build_example(name, grid, jbar);
    std::string key = "example:" + name + ";grid=" + std::to_string(grid) + ";jbar=" + std::to_string(jbar);

    Report r;
    json parts = json::array();
    std::ostringstream csv, sum;
    csv << kCsvHeader << '\n';
    sum << name << ": " << ex.title << "\n";
    for (std::size_t i = 0; i < ex.parts.size(); ++i) {
        const auto& part = ex.parts[i];
        ProfileOptions popt;
        popt.kinds = part.kinds;
        popt.selection = part.selection;
        apply(opt, popt);
        auto prof = profile(part.space, part.seq, popt);
        csv_rows(csv, prof, std::to_string(i + 1) + "/");

        sum << "[" << i + 1 << "] " << part.label << " (" << part.space.size() << " points)\n";
        json targets = json::array();
        for (const auto& t : part.targets) {
            auto it = prof.headline.find(t.kind);
            std::optional<double> est;
            if (it != prof.headline.end()) est = it->second;
            bool ok = t.relation == Target::Relation::kReport || (est && t.holds(*est));
            if (t.relation != Target::Relation::kReport) r.passed = r.passed && ok;
            json tj = {{"text", t.text},
                       {"kind", kind_name(t.kind)},
                       {"relation", relation_name(t.relation)},
                       {"value", t.value},
                       {"tolerance", t.tolerance}};
            tj["estimate"] = est ? json(*est) : json(nullptr);
            tj["pass"] = t.relation == Target::Relation::kReport ? json(nullptr) : json(ok);
            targets.push_back(tj);
            char buf[256];
            std::snprintf(buf, sizeof buf, "  %-36s target %s  estimate %s  %s\n", t.text.c_str(),
                          fixed6(t.value).c_str(), est ? fixed6(*est).c_str() : "n/a",
                          t.relation == Target::Relation::kReport ? "REPORT" : ok ? "PASS" : "FAIL");
            sum << buf;
        }
        json pj = {{"label", part.label},
                   {"points", part.space.size()},
                   {"options", options_json(popt, prof.window)},
                   {"profile", profile_json(prof)},
                   {"targets", targets}};
        if (part.prop61_horizon > 0 && part.selection) {
            const auto& seq = part.restriction ? *part.restriction : part.seq;
            auto res = check_prop61(part.space, seq, *part.selection, 0, part.prop61_horizon);
            std::vector<std::string> labels;
            for (auto x : res.exceptional) labels.push_back(part.space.label(x));
            bool ok = part.prop61_expected.empty() || labels == part.prop61_expected;
            r.passed = r.passed && ok;
            pj["prop61"] = {{"horizon", part.prop61_horizon},
                            {"exceptional", labels},
                            {"minimum", res.minimum},
                            {"expected", part.prop61_expected},
                            {"pass", ok}};
            std::string set = "{";
            for (std::size_t k = 0; k < labels.size(); ++k) set += (k ? ", " : "") + labels[k];
            sum << "  exceptional set " << set << "}  " << (ok ? "PASS" : "FAIL") << "\n";
        }
        parts.push_back(pj);
    }
    json doc = {{"command", "example"},
                {"name", name},
                {"title", ex.title},
                {"spec_hash", hex64(fnv1a64(key))},
                {"grid", grid},
                {"jbar", jbar},
                {"pass", r.passed},
                {"parts", parts}};
    r.json = doc.dump(2) + "\n";
    r.csv = csv.str();
    sum << (r.passed ? "all targets met" : "some targets missed") << "\n";
    r.summary = sum.str();
    return r;
}

Report run_verify(std::uint64_t seed, std::size_t count, const GenParams& params) {
    auto lr = run_suite(seed, count, params);
    Report r;
    r.passed = lr.pass;
    r.json = law_report_json(lr);
    std::ostringstream csv, sum;
    csv << "law,module,checked,skipped,violations\n";
    sum << "verify: " << count << " systems from seed " << seed << ", " << lr.laws.size() << " laws\n";
    for (const auto& l : lr.laws) {
        csv << l.id << ',' << l.module << ',' << l.checked << ',' << l.skipped << ',' << l.violations.size() << '\n';
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-34s %9zu checked %6zu skipped %5zu violations\n", l.id.c_str(),
                      l.checked, l.skipped, l.violations.size());
        sum << buf;
        for (std::size_t i = 0; i < l.violations.size() && i < 5; ++i)
            sum << "    seed " << l.violations[i].seed << ": " << l.violations[i].detail << "\n";
        if (l.violations.size() > 5) sum << "    ... " << l.violations.size() - 5 << " more in the JSON report\n";
    }
    sum << (lr.pass ? "PASS" : "FAIL") << ": " << lr.violation_count() << " violations\n";
    r.csv = csv.str();
    r.summary = sum.str();
    return r;
}

}  // namespace mvent
