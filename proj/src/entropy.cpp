#include "mvent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "mvent/error.hpp"
#include "mvent/orbitmetrics.hpp"

namespace mvent {

namespace {

struct KindInfo {
    Kind kind;
    const char* name;
};

constexpr KindInfo kKinds[] = {
    {Kind::kKtSep, "KT_SEP"},   {Kind::kKtSpan, "KT_SPAN"}, {Kind::kCmSep, "CM_SEP"},   {Kind::kCmSpan, "CM_SPAN"},
    {Kind::kRhoSep, "RHO_SEP"}, {Kind::kRhoSpan, "RHO_SPAN"}, {Kind::kHSep, "H_SEP"},   {Kind::kHSpan, "H_SPAN"},
    {Kind::kBranch, "BRANCH"},  {Kind::kUCover, "U_COVER"}, {Kind::kLCover, "L_COVER"}, {Kind::kBHaus, "B_HAUS"},
};

// Closeness graphs over orbits larger than this are refused.
constexpr std::size_t kEdgeBudget = 10'000'000;

// Pairwise orbit-set comparisons above this use the threshold search instead.
constexpr double kBranchEnumerationWork = 2e8;

// Spaces larger than this get the lazy greedy branch count.
constexpr std::size_t kBranchFullGraphLimit = 400;

}  // namespace

const std::vector<Kind>& all_kinds() {
    static const std::vector<Kind> kinds = [] {
        std::vector<Kind> v;
        for (const auto& k : kKinds) v.push_back(k.kind);
        return v;
    }();
    return kinds;
}

const char* kind_name(Kind k) {
    for (const auto& info : kKinds)
        if (info.kind == k) return info.name;
    return "?";
}

Kind parse_kind(const std::string& name) {
    for (const auto& info : kKinds)
        if (name == info.name) return info.kind;
    throw Error(ErrorCode::kUnknownName, "unknown entropy kind '" + name + "'");
}

bool is_cover_kind(Kind k) { return k == Kind::kUCover || k == Kind::kLCover; }

namespace {

SolveResult solve(const Graph& g, bool separated, const CountOptions& opt) {
    return separated ? max_separated(g, opt.mode, opt.exact_budget) : min_spanning(g, opt.mode, opt.exact_budget);
}

Graph table_graph(const Matrix& table, double eps) { return threshold_graph(DistanceTable(table), eps); }

void check_eps(double eps) {
    if (!(eps > 0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
}

// Closeness graph on lexicographically ordered orbits: two orbits are
// adjacent when every coordinate pair is within eps. Orbits sharing a prefix
// are contiguous, so prefix classes are compared jointly and only close
// prefix pairs are refined.
class OrbitGraphBuilder {
public:
    OrbitGraphBuilder(const Matrix& metric, const OrbitSet& orbits, double eps)
        : m_(metric), o_(orbits), eps_(eps) {}

    std::optional<Graph> build() {
        g_.adj.assign(o_.count(), {});
        if (o_.count() > 1 && !rec(0, o_.count(), 0, o_.count(), 0)) return std::nullopt;
        for (auto& a : g_.adj) std::sort(a.begin(), a.end());
        return std::move(g_);
    }

private:
    Index coord(std::size_t i, std::size_t d) const { return o_.data[i * o_.n + d]; }

    void groups(std::size_t lo, std::size_t hi, std::size_t d, std::vector<std::size_t>& cuts) const {
        cuts.clear();
        cuts.push_back(lo);
        for (std::size_t i = lo + 1; i < hi; ++i)
            if (coord(i, d) != coord(i - 1, d)) cuts.push_back(i);
        cuts.push_back(hi);
    }

    bool rec(std::size_t a0, std::size_t a1, std::size_t b0, std::size_t b1, std::size_t d) {
        const bool same = a0 == b0;
        if (d == o_.n) {
            // Orbits are distinct, so leaf ranges hold one orbit each.
            if (same) return true;
            if (++edges_ > kEdgeBudget) return false;
            g_.adj[a0].push_back(static_cast<std::uint32_t>(b0));
            g_.adj[b0].push_back(static_cast<std::uint32_t>(a0));
            return true;
        }
        std::vector<std::size_t> ca, cb;
        groups(a0, a1, d, ca);
        if (same)
            cb = ca;
        else
            groups(b0, b1, d, cb);
        for (std::size_t i = 0; i + 1 < ca.size(); ++i)
            for (std::size_t j = same ? i : 0; j + 1 < cb.size(); ++j) {
                if (m_(coord(ca[i], d), coord(cb[j], d)) > eps_) continue;
                if (!rec(ca[i], ca[i + 1], cb[j], cb[j + 1], d + 1)) return false;
            }
        return true;
    }

    const Matrix& m_;
    const OrbitSet& o_;
    double eps_;
    Graph g_;
    std::size_t edges_ = 0;
};

Graph orbit_graph(const FiniteMetricSpace& space, std::size_t p, const OrbitSet& orbits, double eps) {
    auto g = OrbitGraphBuilder(space.metric(p), orbits, eps).build();
    if (!g)
        throw Error(ErrorCode::kExactSizeLimit,
                    "orbit closeness graph exceeds " + std::to_string(kEdgeBudget) + " edges");
    return std::move(*g);
}

void require_orbits_within_cap(const MapSequence& seq, std::size_t n, std::size_t cap) {
    std::uint64_t total = count_orbits(seq, n);
    if (total > cap) throw OrbitCapError(std::min<std::uint64_t>(total, cap), cap);
}

// Enumeration cost of all pairwise orbit-set comparisons at horizon n.
double branch_work(const MapSequence& seq, std::size_t n) {
    double sum = 0, sq = 0;
    for (Index x = 0; x < seq.size(); ++x) {
        double c = static_cast<double>(count_orbits(seq, n, x));
        sum += c;
        sq += c * c;
    }
    return (sum * sum - sq) / 2 * static_cast<double>(n);
}

Matrix branch_table_enumerated(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p,
                               std::size_t n, std::size_t cap) {
    const std::size_t size = space.size();
    std::vector<OrbitSet> sets;
    for (Index x = 0; x < size; ++x) sets.push_back(enumerate_orbits(seq, n, x, cap));
    Matrix t(size);
    for (Index x = 0; x < size; ++x)
        for (Index y = x + 1; y < size; ++y) {
            auto directed = [&](const OrbitSet& a, const OrbitSet& b) {
                double best = 0;
                for (std::size_t i = 0; i < a.count(); ++i) {
                    double nearest = 1e300;
                    for (std::size_t j = 0; j < b.count() && nearest > best; ++j)
                        nearest = std::min(nearest, pn(space, p, a.orbit(i), b.orbit(j)));
                    best = std::max(best, nearest);
                }
                return best;
            };
            double d = std::max(directed(sets[x], sets[y]), directed(sets[y], sets[x]));
            t(x, y) = t(y, x) = d;
        }
    return t;
}

Graph branch_graph_threshold(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                             std::size_t n) {
    BranchThreshold bt(space, seq, p, eps);
    Graph g;
    g.adj.resize(space.size());
    for (Index x = 0; x < space.size(); ++x)
        for (Index y = x + 1; y < space.size(); ++y)
            if (!bt.exceeds(n, x, y)) {
                g.adj[x].push_back(y);
                g.adj[y].push_back(x);
            }
    return g;
}

}  // namespace

SolveResult count_kt(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                     std::size_t n, bool separated, const CountOptions& opt) {
    check_eps(eps);
    require_orbits_within_cap(seq, n, opt.orbit_cap);
    auto orbits = enumerate_orbits(seq, n, std::nullopt, opt.orbit_cap);
    return solve(orbit_graph(space, p, orbits, eps), separated, opt);
}

SolveResult count_cm(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                     std::size_t n, bool separated, const CountOptions& opt) {
    check_eps(eps);
    return solve(table_graph(cm_matrix(space, seq, p, n), eps), separated, opt);
}

namespace {

SolveResult count_layers(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                         std::size_t n, bool separated, const CountOptions& opt, LayerTables::Kind kind) {
    check_eps(eps);
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "horizon must be at least 1");
    LayerTables t(space, seq, p, kind);
    while (t.horizon() < n) t.extend();
    return solve(table_graph(t.table(), eps), separated, opt);
}

}  // namespace

SolveResult count_rho(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                      std::size_t n, bool separated, const CountOptions& opt) {
    return count_layers(space, seq, p, eps, n, separated, opt, LayerTables::Kind::kRho);
}

SolveResult count_haus(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                       std::size_t n, bool separated, const CountOptions& opt) {
    return count_layers(space, seq, p, eps, n, separated, opt, LayerTables::Kind::kHausdorff);
}

SolveResult count_branch(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                         std::size_t n, bool separated, const CountOptions& opt) {
    check_eps(eps);
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "horizon must be at least 1");
    if (count_orbits(seq, n) <= opt.orbit_cap && branch_work(seq, n) <= kBranchEnumerationWork)
        return solve(table_graph(branch_table_enumerated(space, seq, p, n, opt.orbit_cap), eps), separated, opt);
    return solve(branch_graph_threshold(space, seq, p, eps, n), separated, opt);
}

SolveResult count_ucover(const MapSequence& seq, const Cover& cover, std::size_t n, const CountOptions& opt) {
    auto family = f_set_family(seq, cover, n, opt.tuple_budget);
    return min_subcover(family, PointSet::all(seq.size()), opt.mode, opt.exact_budget);
}

SolveResult count_lcover(const MapSequence& seq, const Cover& cover, std::size_t n, const CountOptions& opt) {
    std::vector<PointSet> classes;
    for (Index x = 0; x < seq.size(); ++x) classes.push_back(cover_An_class(seq, cover, n, x, opt.tuple_budget));
    return min_subcover(classes, PointSet::all(seq.size()), opt.mode, opt.exact_budget);
}

SolveResult count_kind(const FiniteMetricSpace& space, const MapSequence& seq, Kind kind, std::size_t p,
                       double eps, std::size_t n, const CountOptions& opt) {
    switch (kind) {
        case Kind::kKtSep: return count_kt(space, seq, p, eps, n, true, opt);
        case Kind::kKtSpan: return count_kt(space, seq, p, eps, n, false, opt);
        case Kind::kCmSep: return count_cm(space, seq, p, eps, n, true, opt);
        case Kind::kCmSpan: return count_cm(space, seq, p, eps, n, false, opt);
        case Kind::kRhoSep: return count_rho(space, seq, p, eps, n, true, opt);
        case Kind::kRhoSpan: return count_rho(space, seq, p, eps, n, false, opt);
        case Kind::kHSep:
        case Kind::kBHaus: return count_haus(space, seq, p, eps, n, true, opt);
        case Kind::kHSpan: return count_haus(space, seq, p, eps, n, false, opt);
        case Kind::kBranch: return count_branch(space, seq, p, eps, n, true, opt);
        case Kind::kUCover: check_eps(eps); return count_ucover(seq, ball_cover(space, p, eps), n, opt);
        case Kind::kLCover: check_eps(eps); return count_lcover(seq, ball_cover(space, p, eps), n, opt);
    }
    throw Error(ErrorCode::kInvalidArgument, "unhandled kind");
}

double fitted_slope(const std::vector<std::uint64_t>& counts, std::size_t window) {
    const std::size_t w = std::min(window, counts.size());
    if (w < 2) return 0.0;
    const std::size_t first = counts.size() - w;
    double sx = 0, sy = 0;
    for (std::size_t i = first; i < counts.size(); ++i) {
        sx += static_cast<double>(i + 1);
        sy += std::log(static_cast<double>(counts[i]));
    }
    const double mx = sx / static_cast<double>(w), my = sy / static_cast<double>(w);
    double num = 0, den = 0;
    for (std::size_t i = first; i < counts.size(); ++i) {
        double dx = static_cast<double>(i + 1) - mx;
        num += dx * (std::log(static_cast<double>(counts[i])) - my);
        den += dx * dx;
    }
    return num / den;
}

std::size_t default_window(std::size_t n_max) { return std::max<std::size_t>(2, (n_max + 1) / 2); }

std::vector<double> default_eps_grid(const FiniteMetricSpace& space, std::size_t p) {
    std::vector<double> grid;
    double e = space.diameter(p) / 2;
    for (int i = 0; i < 8; ++i, e /= 2) grid.push_back(e);
    return grid;
}

MapSequence median_selection(const MapSequence& seq) {
    auto pick = [](const MultiMap& m) {
        std::vector<Index> f;
        for (const auto& img : m.images()) f.push_back(img[(img.size() - 1) / 2]);
        return MultiMap::from_function(f);
    };
    std::vector<MultiMap> prefix, cycle;
    for (const auto& m : seq.prefix()) prefix.push_back(pick(m));
    for (const auto& m : seq.cycle()) cycle.push_back(pick(m));
    return MapSequence(std::move(prefix), std::move(cycle));
}

namespace {

// Accumulates per-n results for every (kind, p, eps) series.
class ProfileBuilder {
public:
    ProfileBuilder(const FiniteMetricSpace& space, const MapSequence& seq, const ProfileOptions& opt)
        : space_(space), seq_(seq), opt_(opt) {
        if (opt.n_max < 1) throw Error(ErrorCode::kInvalidArgument, "n_max must be at least 1");
        out_.window = opt.window ? opt.window : default_window(opt.n_max);
        if (out_.window < 2) throw Error(ErrorCode::kInvalidArgument, "window must be at least 2");
        for (std::size_t p = 0; p < space.metric_count(); ++p) {
            auto grid = opt.eps_grid.empty() ? default_eps_grid(space, p) : opt.eps_grid;
            for (double e : grid) check_eps(e);
            out_.eps_grid.push_back(grid);
        }
        for (Kind k : all_kinds())
            if (std::find(opt.kinds.begin(), opt.kinds.end(), k) != opt.kinds.end()) kinds_.push_back(k);
    }

    EntropyProfile run() {
        for (std::size_t p = 0; p < space_.metric_count(); ++p) {
            if (wants(Kind::kKtSep) || wants(Kind::kKtSpan)) run_kt(p);
            if (wants(Kind::kCmSep) || wants(Kind::kCmSpan)) run_cm(p);
            if (wants(Kind::kRhoSep) || wants(Kind::kRhoSpan)) run_layers(p, LayerTables::Kind::kRho);
            if (wants(Kind::kHSep) || wants(Kind::kHSpan) || wants(Kind::kBHaus))
                run_layers(p, LayerTables::Kind::kHausdorff);
            if (wants(Kind::kBranch)) run_branch(p);
            if (wants(Kind::kUCover) || wants(Kind::kLCover)) run_covers(p);
        }
        finish();
        return std::move(out_);
    }

private:
    bool wants(Kind k) const { return std::find(kinds_.begin(), kinds_.end(), k) != kinds_.end(); }
    const std::vector<double>& grid(std::size_t p) const { return out_.eps_grid[p]; }

    EntropyEstimate& series(Kind k, std::size_t p, std::size_t e) {
        auto key = std::make_tuple(static_cast<int>(k), p, e);
        auto it = series_.find(key);
        if (it == series_.end()) {
            EntropyEstimate est;
            est.kind = k;
            est.p = p;
            est.eps = grid(p)[e];
            it = series_.emplace(key, est).first;
        }
        return it->second;
    }

    void record(Kind k, std::size_t p, std::size_t e, const SolveResult& r, std::optional<Bound> force = {}) {
        auto& s = series(k, p, e);
        if (s.truncated) return;
        s.counts.push_back(r.cardinality);
        s.bounds.push_back(force ? *force : r.bound);
    }

    // Marks a series as stopped at horizon n; rethrows in exact mode.
    // Only called from handlers or after the exact-mode check.
    void stop(Kind k, std::size_t p, std::size_t e, std::size_t n, const Error& err) {
        if (opt_.count.mode == SolveMode::kExact) throw;
        auto& s = series(k, p, e);
        if (s.truncated) return;
        s.truncated = true;
        out_.skipped.push_back({k, p, grid(p)[e], n, err.what()});
    }

    void run_kt(std::size_t p) {
        const bool sep = wants(Kind::kKtSep), span = wants(Kind::kKtSpan);
        const std::size_t cap = opt_.count.orbit_cap;
        const bool over = count_orbits(seq_, opt_.n_max) > cap;
        if (over && opt_.count.mode == SolveMode::kExact) require_orbits_within_cap(seq_, opt_.n_max, cap);
        if (over && sep) run_kt_selection(p);
        for (std::size_t n = 1; n <= opt_.n_max; ++n) {
            const bool do_sep = sep && !over;
            if (!do_sep && !span) break;
            if (count_orbits(seq_, n) > cap) {
                if (opt_.count.mode == SolveMode::kExact) require_orbits_within_cap(seq_, n, cap);
                OrbitCapError err(cap, cap);
                for (std::size_t e = 0; e < grid(p).size(); ++e) {
                    if (do_sep) stop(Kind::kKtSep, p, e, n, err);
                    if (span) stop(Kind::kKtSpan, p, e, n, err);
                }
                break;
            }
            auto orbits = enumerate_orbits(seq_, n, std::nullopt, cap);
            for (std::size_t e = 0; e < grid(p).size(); ++e) {
                const bool live_sep = do_sep && !series(Kind::kKtSep, p, e).truncated;
                const bool live_span = span && !series(Kind::kKtSpan, p, e).truncated;
                if (!live_sep && !live_span) continue;
                try {
                    Graph g = orbit_graph(space_, p, orbits, grid(p)[e]);
                    if (live_sep) record(Kind::kKtSep, p, e, solve(g, true, opt_.count));
                    if (live_span) record(Kind::kKtSpan, p, e, solve(g, false, opt_.count));
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::kExactSizeLimit) throw;
                    if (live_sep) stop(Kind::kKtSep, p, e, n, err);
                    if (live_span) stop(Kind::kKtSpan, p, e, n, err);
                }
            }
        }
    }

    // Orbit sets of a selection are subsets of the full orbit sets, so its
    // separated counts bound the full ones from below.
    void run_kt_selection(std::size_t p) {
        MapSequence sel = opt_.selection ? *opt_.selection : median_selection(seq_);
        if (!sel.is_single_valued() || !seq_.contains(sel))
            throw Error(ErrorCode::kNotASelection, "KT fallback selection is not a single-valued selection");
        // On a single-valued sequence the Hausdorff layer table is the Bowen metric.
        LayerTables t(space_, sel, p, LayerTables::Kind::kHausdorff);
        for (std::size_t n = 1; n <= opt_.n_max; ++n) {
            if (n > 1) t.extend();
            DistanceTable table(t.table());
            for (std::size_t e = 0; e < grid(p).size(); ++e) {
                auto r = solve(threshold_graph(table, grid(p)[e]), true, opt_.count);
                record(Kind::kKtSep, p, e, r, Bound::kLowerBound);
                series(Kind::kKtSep, p, e).note = "orbit cap exceeded; counts of a single-valued selection";
            }
        }
    }

    void run_cm(std::size_t p) {
        CmTables t(space_, seq_, p);
        for (std::size_t n = 1; n <= opt_.n_max; ++n) {
            if (n > 1) t.extend();
            solve_table(p, t.table(), Kind::kCmSep, Kind::kCmSpan);
        }
    }

    void run_layers(std::size_t p, LayerTables::Kind kind) {
        LayerTables t(space_, seq_, p, kind);
        const bool rho = kind == LayerTables::Kind::kRho;
        for (std::size_t n = 1; n <= opt_.n_max; ++n) {
            if (n > 1) t.extend();
            if (rho)
                solve_table(p, t.table(), Kind::kRhoSep, Kind::kRhoSpan);
            else
                solve_table(p, t.table(), Kind::kHSep, Kind::kHSpan);
        }
    }

    void solve_table(std::size_t p, const Matrix& table, Kind sep_kind, Kind span_kind) {
        DistanceTable dt(table);
        for (std::size_t e = 0; e < grid(p).size(); ++e) {
            Graph g = threshold_graph(dt, grid(p)[e]);
            const bool sep = wants(sep_kind) || (sep_kind == Kind::kHSep && wants(Kind::kBHaus));
            if (sep && !series(sep_kind, p, e).truncated) {
                try {
                    record(sep_kind, p, e, solve(g, true, opt_.count));
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::kExactSizeLimit) throw;
                    stop(sep_kind, p, e, series(sep_kind, p, e).counts.size() + 1, err);
                }
            }
            if (wants(span_kind) && !series(span_kind, p, e).truncated) {
                try {
                    record(span_kind, p, e, solve(g, false, opt_.count));
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::kExactSizeLimit) throw;
                    stop(span_kind, p, e, series(span_kind, p, e).counts.size() + 1, err);
                }
            }
        }
    }

    void run_branch(std::size_t p) {
        const std::size_t size = space_.size();
        const bool large = size > kBranchFullGraphLimit;
        if (large && opt_.count.mode == SolveMode::kExact)
            throw Error(ErrorCode::kExactSizeLimit, "branch count on " + std::to_string(size) +
                                                        " points needs greedy or auto mode");
        if (large) return run_branch_lazy(p);
        for (std::size_t n = 1; n <= opt_.n_max; ++n) {
            const bool enumerate =
                count_orbits(seq_, n) <= opt_.count.orbit_cap && branch_work(seq_, n) <= kBranchEnumerationWork;
            std::optional<DistanceTable> table;
            if (enumerate) table.emplace(branch_table_enumerated(space_, seq_, p, n, opt_.count.orbit_cap));
            for (std::size_t e = 0; e < grid(p).size(); ++e) {
                if (series(Kind::kBranch, p, e).truncated) continue;
                Graph g = enumerate ? threshold_graph(*table, grid(p)[e])
                                    : branch_graph_threshold(space_, seq_, p, grid(p)[e], n);
                try {
                    record(Kind::kBranch, p, e, solve(g, true, opt_.count));
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::kExactSizeLimit) throw;
                    stop(Kind::kBranch, p, e, n, err);
                }
            }
        }
    }

    // Greedy separated sets in index order. A pair is separated at horizon n
    // when the Hausdorff layer bound already exceeds eps; otherwise the first
    // separating horizon is found by the threshold search and cached.
    void run_branch_lazy(std::size_t p) {
        const std::size_t size = space_.size();
        const auto& eps = grid(p);
        LayerTables lower(space_, seq_, p, LayerTables::Kind::kHausdorff);
        std::vector<BranchThreshold> searches;
        std::vector<std::unordered_map<std::uint64_t, std::uint8_t>> cache(eps.size());
        for (double e : eps) searches.emplace_back(space_, seq_, p, e);
        // Separation horizons only shrink with eps, so the horizon found at the
        // next larger eps bounds the search depth.
        std::vector<std::optional<std::size_t>> larger(eps.size());
        for (std::size_t e = 0; e < eps.size(); ++e)
            for (std::size_t f = 0; f < eps.size(); ++f)
                if (eps[f] > eps[e] && (!larger[e] || eps[f] < eps[*larger[e]])) larger[e] = f;
        for (std::size_t n = 1; n <= opt_.n_max; ++n) {
            if (n > 1) lower.extend();
            for (std::size_t e = 0; e < eps.size(); ++e) {
                if (series(Kind::kBranch, p, e).truncated) continue;
                auto first_horizon = [&](Index a, Index b) -> std::size_t {
                    std::uint64_t key = static_cast<std::uint64_t>(a) << 32 | b;
                    if (auto it = cache[e].find(key); it != cache[e].end()) return it->second;
                    std::size_t bound = opt_.n_max + 1;  // never separated within n_max
                    if (larger[e])
                        if (auto it = cache[*larger[e]].find(key); it != cache[*larger[e]].end()) bound = it->second;
                    std::size_t h = bound > opt_.n_max ? searches[e].first_horizon(opt_.n_max, a, b)
                                    : bound <= 1       ? 1
                                                       : std::min(bound, searches[e].first_horizon(bound - 1, a, b));
                    cache[e].emplace(key, static_cast<std::uint8_t>(std::min<std::size_t>(h, 255)));
                    return h;
                };
                std::vector<Index> chosen;
                try {
                    for (Index v = 0; v < size; ++v) {
                        bool free = true;
                        for (auto it = chosen.rbegin(); it != chosen.rend(); ++it) {
                            if (lower.table()(*it, v) > eps[e]) continue;
                            if (first_horizon(*it, v) <= n) continue;
                            free = false;
                            break;
                        }
                        if (free) chosen.push_back(v);
                    }
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::kExactSizeLimit) throw;
                    stop(Kind::kBranch, p, e, n, err);
                    continue;
                }
                SolveResult r;
                r.cardinality = chosen.size();
                r.witness.assign(chosen.begin(), chosen.end());
                r.bound = Bound::kLowerBound;
                record(Kind::kBranch, p, e, r);
            }
        }
    }

    void run_covers(std::size_t p) {
        for (std::size_t e = 0; e < grid(p).size(); ++e) {
            Cover cover = ball_cover(space_, p, grid(p)[e]);
            for (std::size_t n = 1; n <= opt_.n_max; ++n) {
                for (Kind k : {Kind::kUCover, Kind::kLCover}) {
                    if (!wants(k) || series(k, p, e).truncated) continue;
                    try {
                        record(k, p, e,
                               k == Kind::kUCover ? count_ucover(seq_, cover, n, opt_.count)
                                                  : count_lcover(seq_, cover, n, opt_.count));
                    } catch (const Error& err) {
                        if (err.code() != ErrorCode::kTupleBudgetExceeded && err.code() != ErrorCode::kExactSizeLimit)
                            throw;
                        stop(k, p, e, n, err);
                    }
                }
            }
        }
    }

    void finish() {
        // B_HAUS delegates to the Hausdorff separated series.
        if (wants(Kind::kBHaus)) {
            std::vector<EntropyEstimate> copies;
            for (const auto& [key, est] : series_)
                if (est.kind == Kind::kHSep) {
                    EntropyEstimate c = est;
                    c.kind = Kind::kBHaus;
                    c.note = "equal to H_SEP on finite spaces";
                    copies.push_back(c);
                }
            if (!wants(Kind::kHSep))
                for (auto it = series_.begin(); it != series_.end();)
                    it = it->second.kind == Kind::kHSep ? series_.erase(it) : std::next(it);
            for (auto& c : copies) series_.emplace(std::make_tuple(static_cast<int>(Kind::kBHaus), c.p, index_of(c)), c);
        }
        for (auto& [key, est] : series_) {
            for (std::size_t i = 0; i < est.counts.size(); ++i)
                est.rates.push_back(std::log(static_cast<double>(est.counts[i])) / static_cast<double>(i + 1));
            est.fitted_rate = fitted_slope(est.counts, out_.window);
            est.bound = Bound::kExact;
            for (auto b : est.bounds)
                if (b != Bound::kExact) est.bound = b;
            if (est.counts.size() < opt_.n_max) est.truncated = true;
            out_.estimates.push_back(est);
        }
        for (const auto& est : out_.estimates) {
            if (est.counts.size() < 2) continue;
            auto it = out_.headline.find(est.kind);
            if (it == out_.headline.end() || est.fitted_rate > it->second) {
                out_.headline[est.kind] = est.fitted_rate;
                out_.headline_bound[est.kind] = est.bound;
            }
        }
    }

    std::size_t index_of(const EntropyEstimate& est) const {
        const auto& g = grid(est.p);
        return static_cast<std::size_t>(std::find(g.begin(), g.end(), est.eps) - g.begin());
    }

    const FiniteMetricSpace& space_;
    const MapSequence& seq_;
    const ProfileOptions& opt_;
    std::vector<Kind> kinds_;
    std::map<std::tuple<int, std::size_t, std::size_t>, EntropyEstimate> series_;
    EntropyProfile out_;
};

}  // namespace

EntropyProfile profile(const FiniteMetricSpace& space, const MapSequence& seq, const ProfileOptions& opt) {
    if (seq.size() != space.size())
        throw Error(ErrorCode::kShapeMismatch, "schedule and space have different point counts");
    return ProfileBuilder(space, seq, opt).run();
}

EntropyEstimate estimate(const FiniteMetricSpace& space, const MapSequence& seq, Kind kind, std::size_t p,
                         double eps, std::size_t n_max, std::size_t window, SolveMode mode) {
    if (window < 2 || n_max < window) throw Error(ErrorCode::kInvalidArgument, "need n_max >= window >= 2");
    if (p >= space.metric_count()) throw Error(ErrorCode::kIndexOutOfRange, "pseudometric index out of range");
    ProfileOptions opt;
    opt.kinds = {kind};
    opt.eps_grid = {eps};
    opt.n_max = n_max;
    opt.window = window;
    opt.count.mode = mode;
    auto prof = profile(space, seq, opt);
    for (auto& est : prof.estimates)
        if (est.p == p) return est;
    throw Error(ErrorCode::kInvalidArgument, "estimate produced no series");
}

Prop61Result check_prop61(const FiniteMetricSpace& space, const MapSequence& seq, const MapSequence& selection,
                          std::size_t p, std::size_t horizon) {
    const std::size_t size = space.size();
    if (selection.size() != size || seq.size() != size)
        throw Error(ErrorCode::kShapeMismatch, "selection and schedule act on different point sets");
    if (!selection.is_single_valued()) throw Error(ErrorCode::kNotASelection, "selection is not single-valued");
    for (std::size_t j = 0; j <= horizon; ++j)
        for (Index x = 0; x < size; ++x)
            if (!seq.at(j).image(x).contains(selection.at(j).image(x)[0]))
                throw Error(ErrorCode::kNotASelection,
                            "f_" + std::to_string(j) + "(" + space.label(x) + ") is not in phi_" + std::to_string(j) +
                                "(" + space.label(x) + ")");
    Graph bad;
    bad.adj.resize(size);
    std::vector<Bitset> layer(size, Bitset(size));
    std::vector<Index> f(size);
    for (Index x = 0; x < size; ++x) {
        layer[x].set(x);
        f[x] = x;
    }
    const Matrix& m = space.metric(p);
    for (std::size_t j = 1; j <= horizon; ++j) {
        for (Index x = 0; x < size; ++x) {
            layer[x] = seq.at(j - 1).image_of(layer[x]);
            f[x] = selection.at(j - 1).image(f[x])[0];
        }
        std::vector<PointSet> sets;
        for (const auto& l : layer) sets.push_back(PointSet::from_bits(l));
        for (Index x = 0; x < size; ++x)
            for (Index y = x + 1; y < size; ++y) {
                if (!bad.adj[x].empty() && bad.adj[x].back() == y) continue;
                if (set_hausdorff(space, p, sets[x], sets[y]) != m(f[x], f[y])) {
                    bad.adj[x].push_back(y);
                    bad.adj[y].push_back(x);
                }
            }
    }
    for (auto& a : bad.adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    auto vc = min_vertex_cover(bad);
    Prop61Result out;
    for (auto v : vc.vertices) out.exceptional.push_back(static_cast<Index>(v));
    out.minimum = vc.exact;
    return out;
}

}  // namespace mvent
