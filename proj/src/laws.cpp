#include "mvent/laws.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "json.hpp"
#include "mvent/entropy.hpp"
#include "mvent/error.hpp"
#include "mvent/extremal.hpp"
#include "mvent/hyperspace.hpp"
#include "mvent/interval_map.hpp"
#include "mvent/orbitmetrics.hpp"
#include "mvent/system_spec.hpp"

namespace mvent {

namespace {

using json = nlohmann::ordered_json;

// Portable draws from a fixed engine; the std distributions are
// implementation-defined and would break cross-platform replay.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix(seed)) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::mt19937_64 eng_;
};

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string at(std::size_t p, double eps, std::size_t n) {
    return "p=" + std::to_string(p) + " eps=" + num(eps) + " n=" + std::to_string(n);
}

std::string cmp(const char* lhs, double a, const char* op, const char* rhs, double b) {
    return std::string(lhs) + "=" + num(a) + " " + op + " " + rhs + "=" + num(b);
}

std::vector<PointSet> nonempty_subsets(std::size_t n) {
    std::vector<PointSet> out;
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
        std::vector<Index> v;
        for (Index i = 0; i < n; ++i)
            if (m >> i & 1) v.push_back(i);
        out.push_back(PointSet::from_indices(std::move(v)));
    }
    return out;
}

std::vector<MultiMap> distinct_maps(const MapSequence& seq) {
    std::vector<MultiMap> out;
    for (const auto* part : {&seq.prefix(), &seq.cycle()})
        for (const auto& m : *part)
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    return out;
}

CountOptions exact_opts() {
    CountOptions o;
    o.mode = SolveMode::kExact;
    return o;
}

// Runs a count, turning resource caps into a skipped check.
template <class F>
auto guarded(LawRecorder& rec, F&& f) -> std::optional<decltype(f())> {
    try {
        return f();
    } catch (const Error& e) {
        if (error_class(e.code()) != ErrorClass::kResource) throw;
        rec.skip();
        return std::nullopt;
    }
}

template <class F>
void for_cells(const LawInstance& inst, F&& f) {
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p)
        for (double eps : inst.eps[p])
            for (std::size_t n = 1; n <= inst.n_max; ++n) f(p, eps, n);
}

using Counter = SolveResult (*)(const FiniteMetricSpace&, const MapSequence&, std::size_t, double, std::size_t,
                                bool, const CountOptions&);

std::optional<std::size_t> count_of(LawRecorder& rec, Counter c, const LawInstance& inst, const MapSequence& seq,
                                    std::size_t p, double eps, std::size_t n, bool sep) {
    return guarded(rec, [&] { return c(inst.space, seq, p, eps, n, sep, exact_opts()).cardinality; });
}

// lhs(phi) <= rhs(phi) at every cell.
void count_law(const LawInstance& inst, LawRecorder& rec, Counter lc, bool lsep, const char* lname, Counter rc,
               bool rsep, const char* rname) {
    for_cells(inst, [&](std::size_t p, double eps, std::size_t n) {
        auto a = count_of(rec, lc, inst, inst.seq, p, eps, n, lsep);
        auto b = count_of(rec, rc, inst, inst.seq, p, eps, n, rsep);
        if (a && b) rec.check(*a <= *b, at(p, eps, n) + ": " + cmp(lname, *a, "<=", rname, *b));
    });
}

// count(lhs_seq) <= count(rhs_seq) for one kind, comparing phi with its selection.
void selection_law(const LawInstance& inst, LawRecorder& rec, Counter c, bool sep, bool selection_first,
                   const char* name) {
    const auto& lhs = selection_first ? inst.selection : inst.seq;
    const auto& rhs = selection_first ? inst.seq : inst.selection;
    std::string lname = std::string(name) + (selection_first ? "(psi)" : "(phi)");
    std::string rname = std::string(name) + (selection_first ? "(phi)" : "(psi)");
    for_cells(inst, [&](std::size_t p, double eps, std::size_t n) {
        auto a = count_of(rec, c, inst, lhs, p, eps, n, sep);
        auto b = count_of(rec, c, inst, rhs, p, eps, n, sep);
        if (a && b) rec.check(*a <= *b, at(p, eps, n) + ": " + cmp(lname.c_str(), *a, "<=", rname.c_str(), *b));
    });
}

Matrix random_table(Rng& rng, std::size_t n) {
    std::vector<std::pair<double, double>> pts(n);
    for (auto& [x, y] : pts) {
        x = rng.uniform();
        y = rng.uniform();
    }
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = i == j ? 0.0 : std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
    return m;
}

// Tables the extremal laws run on: every CM table of the instance and one
// random Euclidean table of up to 12 items.
std::vector<DistanceTable> extremal_tables(const LawInstance& inst) {
    std::vector<DistanceTable> out;
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p)
        for (std::size_t n = 1; n <= inst.n_max; ++n) out.emplace_back(cm_matrix(inst.space, inst.seq, p, n));
    Rng rng(inst.seed ^ 0x7ab1e5ull);
    out.emplace_back(random_table(rng, rng.between(6, 12)));
    return out;
}

std::vector<double> table_eps(const LawInstance& inst, const DistanceTable& t) {
    std::vector<double> out;
    for (const auto& e : inst.eps)
        out.insert(out.end(), e.begin(), e.end());
    // one value sitting exactly on a table entry exercises the strict and
    // non-strict boundaries
    if (t.size() > 1) out.push_back(t(0, t.size() - 1));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t brute_separated(const DistanceTable& t, double eps) {
    std::size_t n = t.size(), best = 0;
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
        auto c = static_cast<std::size_t>(std::popcount(m));
        if (c <= best) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n && ok; ++j)
                if ((m >> i & 1) && (m >> j & 1) && !(t(i, j) > eps)) ok = false;
        if (ok) best = c;
    }
    return best;
}

std::size_t brute_spanning(const DistanceTable& t, double eps) {
    std::size_t n = t.size(), best = n;
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
        auto c = static_cast<std::size_t>(std::popcount(m));
        if (c >= best) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            bool near = false;
            for (std::size_t j = 0; j < n && !near; ++j) near = (m >> j & 1) && t(i, j) <= eps;
            ok = near;
        }
        if (ok) best = c;
    }
    return best;
}

std::size_t brute_subcover(const std::vector<PointSet>& blocks, const PointSet& universe) {
    std::size_t k = blocks.size(), best = k + 1;
    for (std::uint32_t m = 1; m < (1u << k); ++m) {
        auto c = static_cast<std::size_t>(std::popcount(m));
        if (c >= best) continue;
        PointSet u;
        for (std::size_t i = 0; i < k; ++i)
            if (m >> i & 1) u = u.empty() ? blocks[i] : set_union(u, blocks[i]);
        if (is_subset(universe, u)) best = c;
    }
    return best;
}

// A random family of up to 10 blocks whose union is X.
std::vector<PointSet> random_blocks(Rng& rng, std::size_t n) {
    std::vector<PointSet> out;
    std::size_t k = rng.between(2, 10);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Index> v;
        for (Index x = 0; x < n; ++x)
            if (rng.uniform() < 0.35) v.push_back(x);
        if (v.empty()) v.push_back(static_cast<Index>(rng.below(n)));
        out.push_back(PointSet::from_indices(std::move(v)));
    }
    for (Index x = 0; x < n; ++x) {
        bool covered = std::any_of(out.begin(), out.end(), [&](const PointSet& b) { return b.contains(x); });
        if (covered) continue;
        auto& b = out[rng.below(out.size())];
        b = set_union(b, PointSet::singleton(x));
    }
    return out;
}

std::vector<std::vector<std::uint64_t>> transition(const MultiMap& m) {
    std::vector<std::vector<std::uint64_t>> t(m.size(), std::vector<std::uint64_t>(m.size(), 0));
    for (Index x = 0; x < m.size(); ++x)
        for (Index y : m.image(x)) t[x][y] = 1;
    return t;
}

std::uint64_t matrix_orbit_count(const MapSequence& seq, std::size_t n) {
    std::size_t sz = seq.size();
    std::vector<std::uint64_t> row(sz, 1);  // paths ending at each point
    for (std::size_t j = 0; j + 1 < n; ++j) {
        auto t = transition(seq.at(j));
        std::vector<std::uint64_t> next(sz, 0);
        for (std::size_t x = 0; x < sz; ++x)
            for (std::size_t y = 0; y < sz; ++y) next[y] += row[x] * t[x][y];
        row = std::move(next);
    }
    std::uint64_t total = 0;
    for (auto v : row) total += v;
    return total;
}

std::string set_text(const FiniteMetricSpace& space, const PointSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + space.label(s[i]);
    return out + "}";
}

// --- space ---

void law_rho_le_hausdorff(const LawInstance& inst, LawRecorder& rec) {
    auto subsets = nonempty_subsets(inst.space.size());
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p)
        for (const auto& a : subsets)
            for (const auto& b : subsets) {
                double r = set_rho(inst.space, p, a, b), h = set_hausdorff(inst.space, p, a, b);
                if (r <= h) {
                    rec.check(true, "");
                    continue;
                }
                rec.check(false, "p=" + std::to_string(p) + " A=" + set_text(inst.space, a) +
                                     " B=" + set_text(inst.space, b) + ": " + cmp("rho", r, "<=", "d_H", h));
            }
}

void law_hausdorff_triangle(const LawInstance& inst, LawRecorder& rec) {
    if (inst.space.size() > 5) return;
    auto subsets = nonempty_subsets(inst.space.size());
    std::size_t k = subsets.size();
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p) {
        Matrix d(k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) d(i, j) = set_hausdorff(inst.space, p, subsets[i], subsets[j]);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                for (std::size_t c = 0; c < k; ++c) {
                    bool ok = d(a, c) <= d(a, b) + d(b, c) + 1e-12;
                    if (ok) {
                        rec.check(true, "");
                        continue;
                    }
                    rec.check(false, "p=" + std::to_string(p) + " A=" + set_text(inst.space, subsets[a]) +
                                         " B=" + set_text(inst.space, subsets[b]) +
                                         " C=" + set_text(inst.space, subsets[c]) + ": " +
                                         cmp("d(A,C)", d(a, c), "<=", "d(A,B)+d(B,C)", d(a, b) + d(b, c)));
                }
    }
}

void law_hausdorff_separates(const LawInstance& inst, LawRecorder& rec) {
    auto subsets = nonempty_subsets(inst.space.size());
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p) {
        bool metric = true;
        for (Index x = 0; x < inst.space.size(); ++x)
            for (Index y = 0; y < inst.space.size(); ++y)
                if (x != y && inst.space.distance(p, x, y) == 0) metric = false;
        if (!metric) continue;
        for (const auto& a : subsets)
            for (const auto& b : subsets) {
                bool ok = set_hausdorff(inst.space, p, a, b) != 0 || a == b;
                rec.check(ok, ok ? "" : "p=" + std::to_string(p) + " d_H(" + set_text(inst.space, a) + "," +
                                            set_text(inst.space, b) + ") = 0");
            }
    }
}

// --- dynamics ---

void law_small_within_large(const LawInstance& inst, LawRecorder& rec) {
    auto subsets = nonempty_subsets(inst.space.size());
    auto maps = distinct_maps(inst.seq);
    for (const auto& m : distinct_maps(inst.selection)) maps.push_back(m);
    for (std::size_t i = 0; i < maps.size(); ++i)
        for (const auto& b : subsets) {
            auto small = small_preimage(maps[i], b), large = large_preimage(maps[i], b);
            bool ok = is_subset(small, large) && (!maps[i].is_single_valued() || small == large);
            rec.check(ok, ok ? "" : "map " + std::to_string(i) + " B=" + set_text(inst.space, b) + ": small=" +
                                        set_text(inst.space, small) + " large=" + set_text(inst.space, large));
        }
}

void law_composed_image(const LawInstance& inst, LawRecorder& rec) {
    if (inst.space.size() > 5) return;
    for (std::size_t k = 0; k <= std::min<std::size_t>(4, inst.n_max); ++k)
        for (Index x = 0; x < inst.space.size(); ++x) {
            auto orbits = enumerate_orbits(inst.seq, k + 1, x);
            std::vector<Index> last;
            for (std::size_t i = 0; i < orbits.count(); ++i) last.push_back(orbits.orbit(i)[k]);
            std::sort(last.begin(), last.end());
            last.erase(std::unique(last.begin(), last.end()), last.end());
            auto expect = PointSet::from_indices(last);
            auto got = composed_image(inst.seq, k, x);
            rec.check(got == expect, "k=" + std::to_string(k) + " x=" + inst.space.label(x) + ": composed " +
                                         set_text(inst.space, got) + " vs orbits " + set_text(inst.space, expect));
        }
}

void law_f_set(const LawInstance& inst, LawRecorder& rec) {
    if (inst.space.size() > 5) return;
    Rng rng(inst.seed ^ 0xf5e7ull);
    for (std::size_t n = 1; n <= std::min<std::size_t>(4, inst.n_max); ++n) {
        auto orbits = enumerate_orbits(inst.seq, n);
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<PointSet> blocks;
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<Index> v;
                for (Index x = 0; x < inst.space.size(); ++x)
                    if (rng.uniform() < 0.6) v.push_back(x);
                if (v.empty()) v.push_back(static_cast<Index>(rng.below(inst.space.size())));
                blocks.push_back(PointSet::from_indices(std::move(v)));
            }
            std::vector<Index> first;
            for (std::size_t i = 0; i < orbits.count(); ++i) {
                auto o = orbits.orbit(i);
                bool inside = true;
                for (std::size_t j = 0; j < n && inside; ++j) inside = blocks[j].contains(o[j]);
                if (inside) first.push_back(o[0]);
            }
            std::sort(first.begin(), first.end());
            first.erase(std::unique(first.begin(), first.end()), first.end());
            auto expect = PointSet::from_indices(first);
            auto got = cover_f_set(inst.seq, blocks);
            std::string blocks_text;
            for (const auto& b : blocks) blocks_text += set_text(inst.space, b);
            rec.check(got == expect, "n=" + std::to_string(n) + " blocks=" + blocks_text + ": F=" +
                                         set_text(inst.space, got) + " orbits give " + set_text(inst.space, expect));
        }
    }
}

void law_an_cover(const LawInstance& inst, LawRecorder& rec) {
    for_cells(inst, [&](std::size_t p, double eps, std::size_t n) {
        auto cover = ball_cover(inst.space, p, eps / 2);
        Bitset covered(inst.space.size());
        bool own = true;
        for (Index x = 0; x < inst.space.size(); ++x) {
            auto cls = cover_An_class(inst.seq, cover, n, x);
            own = own && cls.contains(x);
            covered |= cls.to_bits(inst.space.size());
        }
        bool ok = own && covered.count() == inst.space.size();
        rec.check(ok, at(p, eps, n) + ": classes cover " + std::to_string(covered.count()) + " of " +
                          std::to_string(inst.space.size()) + " points");
    });
}

void law_orbit_count(const LawInstance& inst, LawRecorder& rec) {
    for (const auto* seq : {&inst.seq, &inst.selection})
        for (std::size_t n = 1; n <= inst.n_max + 2; ++n) {
            auto counted = count_orbits(*seq, n);
            auto oracle = matrix_orbit_count(*seq, n);
            auto listed = enumerate_orbits(*seq, n).count();
            bool ok = counted == oracle && listed == oracle;
            rec.check(ok, "n=" + std::to_string(n) + ": count_orbits=" + std::to_string(counted) +
                              " enumerate=" + std::to_string(listed) + " matrix=" + std::to_string(oracle));
        }
}

// --- orbitmetrics ---

template <class F>
void pairs_upto(const LawInstance& inst, F&& f) {
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p)
        for (std::size_t n = 1; n <= inst.n_max; ++n)
            for (Index x = 0; x < inst.space.size(); ++x)
                for (Index y = 0; y < inst.space.size(); ++y) f(p, n, x, y);
}

std::string pair_at(const LawInstance& inst, std::size_t p, std::size_t n, Index x, Index y) {
    return "p=" + std::to_string(p) + " n=" + std::to_string(n) + " x=" + inst.space.label(x) +
           " y=" + inst.space.label(y);
}

void law_rho_le_cm(const LawInstance& inst, LawRecorder& rec) {
    pairs_upto(inst, [&](std::size_t p, std::size_t n, Index x, Index y) {
        double m = 0;
        for (std::size_t k = 0; k < n; ++k) m = std::max(m, p_rho_at(inst.space, inst.seq, p, k, x, y));
        double cm = pn_cm(inst.space, inst.seq, p, n, x, y);
        rec.check(m <= cm, pair_at(inst, p, n, x, y) + ": " + cmp("max_k p_rho", m, "<=", "p_n^CM", cm));
    });
}

void law_haus_le_branch(const LawInstance& inst, LawRecorder& rec) {
    pairs_upto(inst, [&](std::size_t p, std::size_t n, Index x, Index y) {
        double m = 0;
        for (std::size_t k = 0; k < n; ++k) m = std::max(m, p_haus_at(inst.space, inst.seq, p, k, x, y));
        auto b = guarded(rec, [&] { return pn_branch(inst.space, inst.seq, p, n, x, y); });
        if (!b) return;
        double branch = *b;
        rec.check(m <= branch, pair_at(inst, p, n, x, y) + ": " + cmp("max_k p^H", m, "<=", "p_n^b", branch));
    });
}

void law_cm_oracle(const LawInstance& inst, LawRecorder& rec) {
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p)
        for (std::size_t n = 1; n <= inst.n_max; ++n) {
            std::vector<OrbitSet> from;
            for (Index x = 0; x < inst.space.size(); ++x) from.push_back(enumerate_orbits(inst.seq, n, x));
            auto table = cm_matrix(inst.space, inst.seq, p, n);
            for (Index x = 0; x < inst.space.size(); ++x)
                for (Index y = 0; y < inst.space.size(); ++y) {
                    double best = INFINITY;
                    for (std::size_t i = 0; i < from[x].count(); ++i)
                        for (std::size_t j = 0; j < from[y].count(); ++j)
                            best = std::min(best, pn(inst.space, p, from[x].orbit(i), from[y].orbit(j)));
                    double dp = pn_cm(inst.space, inst.seq, p, n, x, y);
                    bool ok = dp == best && table(x, y) == best;
                    rec.check(ok, pair_at(inst, p, n, x, y) + ": pn_cm=" + num(dp) + " table=" + num(table(x, y)) +
                                      " brute=" + num(best));
                }
        }
}

void law_symmetric(const LawInstance& inst, LawRecorder& rec) {
    pairs_upto(inst, [&](std::size_t p, std::size_t n, Index x, Index y) {
        if (y < x) return;
        auto both = [&](auto f) { return std::pair{f(x, y), f(y, x)}; };
        std::vector<std::pair<const char*, std::pair<double, double>>> vals = {
            {"p_n^CM", both([&](Index a, Index b) { return pn_cm(inst.space, inst.seq, p, n, a, b); })},
            {"p_rho", both([&](Index a, Index b) { return p_rho_at(inst.space, inst.seq, p, n - 1, a, b); })},
            {"p^H", both([&](Index a, Index b) { return p_haus_at(inst.space, inst.seq, p, n - 1, a, b); })},
        };
        try {
            vals.push_back(
                {"p_n^b", both([&](Index a, Index b) { return pn_branch(inst.space, inst.seq, p, n, a, b); })});
        } catch (const Error& e) {
            if (error_class(e.code()) != ErrorClass::kResource) throw;
            rec.skip();
        }
        auto orbits = enumerate_orbits(inst.seq, n, x);
        auto others = enumerate_orbits(inst.seq, n, y);
        if (orbits.count() && others.count())
            vals.push_back({"p_n", {pn(inst.space, p, orbits.orbit(0), others.orbit(0)),
                                    pn(inst.space, p, others.orbit(0), orbits.orbit(0))}});
        for (auto& [name, v] : vals) {
            bool ok = v.first == v.second && (x != y || v.first == 0);
            rec.check(ok, pair_at(inst, p, n, x, y) + ": " + name + " gives " + num(v.first) + " and " +
                              num(v.second));
        }
    });
}

// --- extremal ---

void law_span_le_sep(const LawInstance& inst, LawRecorder& rec) {
    for (const auto& t : extremal_tables(inst))
        for (double eps : table_eps(inst, t)) {
            auto r = guarded(rec, [&] { return min_spanning(t, eps, SolveMode::kExact).cardinality; });
            auto s = guarded(rec, [&] { return max_separated(t, eps, SolveMode::kExact).cardinality; });
            if (r && s)
                rec.check(*r <= *s, "table of " + std::to_string(t.size()) + " eps=" + num(eps) + ": " +
                                        cmp("span", *r, "<=", "sep", *s));
        }
}

void law_greedy_vs_exact(const LawInstance& inst, LawRecorder& rec) {
    std::string where;
    for (const auto& t : extremal_tables(inst))
        for (double eps : table_eps(inst, t)) {
            where = "table of " + std::to_string(t.size()) + " eps=" + num(eps) + ": ";
            auto se = guarded(rec, [&] { return max_separated(t, eps, SolveMode::kExact).cardinality; });
            auto sg = max_separated(t, eps, SolveMode::kGreedy).cardinality;
            if (se) rec.check(sg <= *se, where + cmp("greedy sep", sg, "<=", "exact sep", *se));
            auto re = guarded(rec, [&] { return min_spanning(t, eps, SolveMode::kExact).cardinality; });
            auto rg = min_spanning(t, eps, SolveMode::kGreedy).cardinality;
            if (re) rec.check(rg >= *re, where + cmp("greedy span", rg, ">=", "exact span", *re));
        }
    Rng rng(inst.seed ^ 0xc0e7ull);
    for (int trial = 0; trial < 4; ++trial) {
        std::size_t n = rng.between(3, 12);
        auto blocks = random_blocks(rng, n);
        auto all = PointSet::all(n);
        auto e = guarded(rec, [&] { return min_subcover(blocks, all, SolveMode::kExact).cardinality; });
        auto g = min_subcover(blocks, all, SolveMode::kGreedy).cardinality;
        if (e) rec.check(g >= *e, "random blocks: " + cmp("greedy subcover", g, ">=", "exact subcover", *e));
    }
}

void law_eps_monotone(const LawInstance& inst, LawRecorder& rec) {
    for (const auto& t : extremal_tables(inst)) {
        auto grid = table_eps(inst, t);
        std::optional<std::size_t> prev_s, prev_r;
        for (double eps : grid) {
            auto s = guarded(rec, [&] { return max_separated(t, eps, SolveMode::kExact).cardinality; });
            auto r = guarded(rec, [&] { return min_spanning(t, eps, SolveMode::kExact).cardinality; });
            std::string where = "table of " + std::to_string(t.size()) + " eps=" + num(eps) + ": ";
            if (s && prev_s) rec.check(*s <= *prev_s, where + cmp("sep", *s, "<=", "sep at smaller eps", *prev_s));
            if (r && prev_r) rec.check(*r <= *prev_r, where + cmp("span", *r, "<=", "span at smaller eps", *prev_r));
            prev_s = s;
            prev_r = r;
        }
    }
}

void law_brute_force(const LawInstance& inst, LawRecorder& rec) {
    for (const auto& t : extremal_tables(inst)) {
        if (t.size() > 12) continue;
        for (double eps : table_eps(inst, t)) {
            std::string where = "table of " + std::to_string(t.size()) + " eps=" + num(eps) + ": ";
            auto s = guarded(rec, [&] { return max_separated(t, eps, SolveMode::kExact).cardinality; });
            if (s) {
                auto b = brute_separated(t, eps);
                rec.check(*s == b, where + cmp("exact sep", *s, "==", "brute", b));
            }
            auto r = guarded(rec, [&] { return min_spanning(t, eps, SolveMode::kExact).cardinality; });
            if (r) {
                auto b = brute_spanning(t, eps);
                rec.check(*r == b, where + cmp("exact span", *r, "==", "brute", b));
            }
        }
    }
    Rng rng(inst.seed ^ 0xb207eull);
    for (int trial = 0; trial < 4; ++trial) {
        std::size_t n = rng.between(3, 12);
        auto blocks = random_blocks(rng, n);
        if (blocks.size() > 12) continue;
        auto all = PointSet::all(n);
        auto e = guarded(rec, [&] { return min_subcover(blocks, all, SolveMode::kExact).cardinality; });
        if (e) {
            auto b = brute_subcover(blocks, all);
            rec.check(*e == b, "random blocks: " + cmp("exact subcover", *e, "==", "brute", b));
        }
    }
}

// --- entropy ---

void law_cm_le_kt(const LawInstance& inst, LawRecorder& rec) {
    count_law(inst, rec, count_cm, true, "s_CM", count_kt, true, "s_KT");
}
void law_rcm_le_scm(const LawInstance& inst, LawRecorder& rec) {
    count_law(inst, rec, count_cm, false, "r_CM", count_cm, true, "s_CM");
}
void law_rho_le_cm_counts(const LawInstance& inst, LawRecorder& rec) {
    count_law(inst, rec, count_rho, true, "s_rho", count_cm, true, "s_CM");
    count_law(inst, rec, count_rho, false, "r_rho", count_cm, false, "r_CM");
}
void law_rrho_le_srho(const LawInstance& inst, LawRecorder& rec) {
    count_law(inst, rec, count_rho, false, "r_rho", count_rho, true, "s_rho");
}
void law_h_le_branch(const LawInstance& inst, LawRecorder& rec) {
    count_law(inst, rec, count_haus, true, "s_H", count_branch, true, "s_b");
}

void law_cm_le_ucover(const LawInstance& inst, LawRecorder& rec) {
    for_cells(inst, [&](std::size_t p, double eps, std::size_t n) {
        auto cover = ball_cover(inst.space, p, eps / 2);
        auto s = count_of(rec, count_cm, inst, inst.seq, p, eps, n, true);
        auto u = guarded(rec, [&] { return count_ucover(inst.seq, cover, n, exact_opts()).cardinality; });
        if (s && u) rec.check(*s <= *u, at(p, eps, n) + ": " + cmp("s_CM", *s, "<=", "N(F(A^n))", *u));
    });
}

void law_rcm_le_lcover(const LawInstance& inst, LawRecorder& rec) {
    for_cells(inst, [&](std::size_t p, double eps, std::size_t n) {
        auto cover = ball_cover(inst.space, p, eps / 2);
        auto r = count_of(rec, count_cm, inst, inst.seq, p, eps, n, false);
        auto l = guarded(rec, [&] { return count_lcover(inst.seq, cover, n, exact_opts()).cardinality; });
        if (r && l) rec.check(*r <= *l, at(p, eps, n) + ": " + cmp("r_CM", *r, "<=", "N(A^n)", *l));
    });
}

void law_selection_kt(const LawInstance& inst, LawRecorder& rec) { selection_law(inst, rec, count_kt, true, true, "s_KT"); }

void law_selection_cm(const LawInstance& inst, LawRecorder& rec) {
    selection_law(inst, rec, count_cm, true, false, "s_CM");
    selection_law(inst, rec, count_cm, false, false, "r_CM");
}

void law_selection_rho(const LawInstance& inst, LawRecorder& rec) {
    selection_law(inst, rec, count_rho, true, false, "s_rho");
    selection_law(inst, rec, count_rho, false, false, "r_rho");
}

void law_single_valued(const LawInstance& inst, LawRecorder& rec) {
    std::vector<const MapSequence*> seqs = {&inst.selection};
    if (inst.seq.is_single_valued()) seqs.push_back(&inst.seq);
    const std::pair<const char*, Counter> kinds[] = {
        {"KT", count_kt}, {"CM", count_cm}, {"rho", count_rho}, {"H", count_haus}, {"b", count_branch}};
    for (const auto* seq : seqs)
        for_cells(inst, [&](std::size_t p, double eps, std::size_t n) {
            for (bool sep : {true, false}) {
                std::vector<std::pair<const char*, std::size_t>> got;
                for (auto& [name, c] : kinds) {
                    if (!sep && c == count_branch) continue;
                    if (auto v = count_of(rec, c, inst, *seq, p, eps, n, sep)) got.push_back({name, *v});
                }
                if (got.size() < 2) continue;
                bool ok = true;
                std::string text;
                for (auto& [name, v] : got) {
                    ok = ok && v == got.front().second;
                    text += std::string(" ") + name + "=" + std::to_string(v);
                }
                rec.check(ok, at(p, eps, n) + (sep ? " separated:" : " spanning:") + text);
            }
        });
}

void law_bhaus(const LawInstance& inst, LawRecorder& rec) {
    for_cells(inst, [&](std::size_t p, double eps, std::size_t n) {
        auto b = guarded(rec, [&] { return count_kind(inst.space, inst.seq, Kind::kBHaus, p, eps, n, exact_opts()).cardinality; });
        auto h = guarded(rec, [&] { return count_kind(inst.space, inst.seq, Kind::kHSep, p, eps, n, exact_opts()).cardinality; });
        if (b && h) rec.check(*b == *h, at(p, eps, n) + ": " + cmp("B_HAUS", *b, "==", "H_SEP", *h));
    });
}

// --- hyperspace ---

void law_haus_le_hyper(const LawInstance& inst, LawRecorder& rec) {
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p)
        for (double eps : inst.eps[p]) {
            std::optional<HyperComparison> cmpn;
            try {
                cmpn = compare_hyper(inst.space, inst.seq, p, eps, inst.n_max, exact_opts(), kDefaultHyperLimit);
            } catch (const Error& e) {
                if (error_class(e.code()) != ErrorClass::kResource) throw;
                rec.skip();
                continue;
            }
            for (const auto& row : cmpn->rows)
                rec.check(row.s_haus <= row.s_hyper,
                          at(p, eps, row.n) + ": " + cmp("s_H", row.s_haus, "<=", "s(phi*)", row.s_hyper));
        }
}

void law_embedding(const LawInstance& inst, LawRecorder& rec) {
    auto hyper = build_hyperspace(inst.space);
    auto lifted = lift_sequence(inst.seq, hyper);
    for (std::size_t k = 0; k <= inst.n_max; ++k)
        for (Index x = 0; x < inst.space.size(); ++x) {
            auto direct = composed_image(inst.seq, k, x);
            auto up = composed_image(lifted, k, hyper.embed(x));
            bool ok = up.size() == 1 && hyper.subset(up[0]) == direct;
            rec.check(ok, "k=" + std::to_string(k) + " x=" + inst.space.label(x) + ": phi^[k](x)=" +
                              set_text(inst.space, direct) + " lifted gives " +
                              (up.size() == 1 ? set_text(inst.space, hyper.subset(up[0])) : "a non-singleton"));
        }
}

void law_singletons(const LawInstance& inst, LawRecorder& rec) {
    auto hyper = build_hyperspace(inst.space);
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p)
        for (Index x = 0; x < inst.space.size(); ++x)
            for (Index y = 0; y < inst.space.size(); ++y) {
                double h = hyper.space().distance(p, hyper.embed(x), hyper.embed(y));
                double d = inst.space.distance(p, x, y);
                rec.check(h == d, "p=" + std::to_string(p) + " x=" + inst.space.label(x) + " y=" +
                                      inst.space.label(y) + ": " + cmp("p^H", h, "==", "p", d));
            }
}

// --- ingestion ---

std::size_t ingestion_grid(const LawInstance& inst) { return Rng(inst.seed ^ 0x9a1dull).between(2, 24); }

void law_enclosure(const LawInstance& inst, LawRecorder& rec) {
    std::size_t n = ingestion_grid(inst);
    Rational step(1, static_cast<std::int64_t>(n));
    for (const auto& name : builtin_names()) {
        auto m = builtin(name);
        auto disc = discretize(m, n);
        for (Index g = 0; g <= n; ++g) {
            Rational x(g, static_cast<std::int64_t>(n));
            for (auto& [lo, hi] : evaluate(m, x))
                for (const auto& y : {lo, hi, (lo + hi) / Rational(2)}) {
                    bool found = false;
                    for (Index k : disc.image(g)) {
                        Rational diff = Rational(k, static_cast<std::int64_t>(n)) - y;
                        if (diff < Rational(0)) diff = -diff;
                        found = found || diff <= step;
                    }
                    rec.check(found, name + " N=" + std::to_string(n) + " g=" + x.to_string() + ": value " +
                                         y.to_string() + " has no grid point within 1/N in the image");
                }
        }
    }
}

void law_discretize_monotone(const LawInstance& inst, LawRecorder& rec) {
    std::size_t n = ingestion_grid(inst);
    auto phi0 = builtin("phi0"), half = builtin("phi_half"), phi1 = builtin("phi1"), tent = builtin("tent_f");
    const std::pair<IntervalMultiMap, IntervalMultiMap> chains[] = {
        {phi0, half}, {half, phi1}, {half, with_zero(half)}, {tent, map_union(tent, builtin("f01"))}};
    for (const auto& [small, big] : chains) {
        bool ok = discretize(big, n).contains(discretize(small, n));
        rec.check(ok, "N=" + std::to_string(n) + ": " + big.name() + " does not contain " + small.name());
    }
}

SystemSpec spec_of(const LawInstance& inst) {
    SystemSpec spec;
    spec.space.points = inst.space.labels();
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p) {
        std::vector<std::vector<Rational>> rows;
        for (Index x = 0; x < inst.space.size(); ++x) {
            std::vector<Rational> row;
            for (Index y = 0; y < inst.space.size(); ++y)
                row.emplace_back(std::llround(inst.space.distance(p, x, y) * 1e6), 1000000);
            rows.push_back(std::move(row));
        }
        spec.space.metrics.push_back(std::move(rows));
    }
    auto add_map = [&](const MultiMap& m, const std::string& name) {
        MapSpec ms;
        ms.name = name;
        for (Index x = 0; x < m.size(); ++x) {
            std::vector<std::string> img;
            for (Index y : m.image(x)) img.push_back(inst.space.label(y));
            ms.relation.push_back({inst.space.label(x), img});
        }
        spec.maps.push_back(ms);
        return name;
    };
    for (std::size_t j = 0; j < inst.seq.prefix().size(); ++j)
        spec.schedule.prefix.push_back(add_map(inst.seq.prefix()[j], "f" + std::to_string(j)));
    for (std::size_t j = 0; j < inst.seq.cycle().size(); ++j)
        spec.schedule.cycle.push_back(add_map(inst.seq.cycle()[j], "c" + std::to_string(j)));
    for (std::size_t j = 0; j < inst.selection.prefix().size(); ++j)
        spec.schedule.selection_prefix.push_back(add_map(inst.selection.prefix()[j], "sf" + std::to_string(j)));
    for (std::size_t j = 0; j < inst.selection.cycle().size(); ++j)
        spec.schedule.selection_cycle.push_back(add_map(inst.selection.cycle()[j], "sc" + std::to_string(j)));
    spec.analysis.n_max = inst.n_max;
    std::vector<Rational> eps;
    for (double e : inst.eps[0]) eps.emplace_back(std::llround(e * 1e6), 1000000);
    spec.analysis.eps = eps;
    spec.analysis.mode = "exact";
    return spec;
}

void law_round_trip(const LawInstance& inst, LawRecorder& rec) {
    auto spec = spec_of(inst);
    auto text = serialize_spec(spec);
    auto again = parse_spec(text);
    rec.check(again == spec && serialize_spec(again) == text, "serialized spec does not parse back to itself");
}

std::vector<Law> make_registry() {
    return {
        {"space.rho_le_hausdorff", "space", "set_rho(A,B) <= set_hausdorff(A,B)", law_rho_le_hausdorff},
        {"space.hausdorff_triangle", "space", "set_hausdorff satisfies the triangle inequality (|X| <= 5)",
         law_hausdorff_triangle},
        {"space.hausdorff_separates", "space", "set_hausdorff(A,B) = 0 implies A = B for a metric",
         law_hausdorff_separates},
        {"dynamics.small_within_large", "dynamics",
         "small preimage within large preimage, equal for single-valued maps", law_small_within_large},
        {"dynamics.composed_image_orbits", "dynamics",
         "composed_image(k, x) is the set of k-th orbit coordinates from x (|X| <= 5, k <= 4)", law_composed_image},
        {"dynamics.f_set_orbits", "dynamics",
         "cover_f_set equals first coordinates of blockwise orbits (|X| <= 5, n <= 4)", law_f_set},
        {"dynamics.an_classes_cover", "dynamics", "the classes A^n(x) cover X", law_an_cover},
        {"dynamics.orbit_count_matrix", "dynamics", "orbit counts equal sums of transition matrix products",
         law_orbit_count},
        {"orbitmetrics.rho_le_cm", "orbitmetrics", "max_k p_rho(k,x,y) <= p_n^CM(x,y)", law_rho_le_cm},
        {"orbitmetrics.haus_le_branch", "orbitmetrics", "max_k p^H(k,x,y) <= p_n^b(x,y)", law_haus_le_branch},
        {"orbitmetrics.cm_oracle", "orbitmetrics", "bottleneck p_n^CM equals the brute-force min over orbit pairs",
         law_cm_oracle},
        {"orbitmetrics.symmetric_vanishing", "orbitmetrics", "all orbit pseudometrics are symmetric and vanish on x = y",
         law_symmetric},
        {"extremal.span_le_sep", "extremal", "exact min spanning <= exact max separated", law_span_le_sep},
        {"extremal.greedy_vs_exact", "extremal", "greedy sep <= exact; greedy span and subcover >= exact",
         law_greedy_vs_exact},
        {"extremal.eps_monotone", "extremal", "raising eps never increases the separated or spanning optimum",
         law_eps_monotone},
        {"extremal.brute_force", "extremal", "exact solvers equal subset enumeration on <= 12 items",
         law_brute_force},
        {"entropy.cm_le_kt", "entropy", "s_CM <= s_KT", law_cm_le_kt},
        {"entropy.rcm_le_scm", "entropy", "r_CM <= s_CM", law_rcm_le_scm},
        {"entropy.rho_le_cm", "entropy", "s_rho <= s_CM and r_rho <= r_CM", law_rho_le_cm_counts},
        {"entropy.rrho_le_srho", "entropy", "r_rho <= s_rho", law_rrho_le_srho},
        {"entropy.h_le_branch", "entropy", "s_H <= s_b", law_h_le_branch},
        {"entropy.cm_le_ucover", "entropy", "s_CM(eps) <= N(F(phi; A^n)) for the eps/2 ball cover",
         law_cm_le_ucover},
        {"entropy.rcm_le_lcover", "entropy", "r_CM(eps) <= N(A^n(phi)) for the eps/2 ball cover",
         law_rcm_le_lcover},
        {"entropy.selection_kt", "entropy", "s_KT(psi) <= s_KT(phi) for a selection psi", law_selection_kt},
        {"entropy.selection_cm", "entropy", "s_CM(phi) <= s_CM(psi) and r_CM(phi) <= r_CM(psi)",
         law_selection_cm},
        {"entropy.selection_rho", "entropy", "s_rho(phi) <= s_rho(psi) and r_rho(phi) <= r_rho(psi)",
         law_selection_rho},
        {"entropy.single_valued_collapse", "entropy",
         "KT, CM, rho, H and branch counts coincide for single-valued sequences", law_single_valued},
        {"entropy.bhaus_equals_h", "entropy", "B_HAUS counts equal H_SEP counts", law_bhaus},
        {"hyperspace.haus_le_hyper", "hyperspace", "s_H(phi) <= s(phi*, p^H)", law_haus_le_hyper},
        {"hyperspace.embedding_commutes", "hyperspace", "phi^[k](x) = (phi*)^[k]({x})", law_embedding},
        {"hyperspace.singletons", "hyperspace", "p^H on singletons equals p", law_singletons},
        {"ingestion.enclosure_sound", "ingestion", "every exact value has a grid point within 1/N in the image",
         law_enclosure},
        {"ingestion.discretize_monotone", "ingestion", "discretization preserves inclusion of maps",
         law_discretize_monotone},
        {"ingestion.spec_round_trip", "ingestion", "parse(serialize(spec)) = spec", law_round_trip},
    };
}

json params_json(const GenParams& g) {
    return {{"min_points", g.min_points}, {"max_points", g.max_points}, {"metrics", g.metrics},
            {"density", g.density},       {"max_prefix", g.max_prefix}, {"max_cycle", g.max_cycle},
            {"eps_count", g.eps_count},   {"n_max", g.n_max}};
}

json maps_json(const std::vector<MultiMap>& maps) {
    json out = json::array();
    for (const auto& m : maps) {
        json rows = json::array();
        for (Index x = 0; x < m.size(); ++x) rows.push_back(m.image(x).indices());
        out.push_back(rows);
    }
    return out;
}

}  // namespace

void LawRecorder::check(bool ok, const std::string& detail) {
    ++checked_;
    if (!ok) failures_.push_back(detail);
}

std::size_t LawReport::violation_count() const {
    std::size_t n = 0;
    for (const auto& l : laws) n += l.violations.size();
    return n;
}

LawInstance gen_system(std::uint64_t seed, const GenParams& params) {
    if (params.min_points < 1 || params.min_points > params.max_points || params.max_points > 12 ||
        params.metrics < 1 || params.n_max < 1 || params.max_cycle < 1)
        throw Error(ErrorCode::kInvalidArgument, "generator parameters out of range");
    Rng rng(seed);
    std::vector<std::vector<std::pair<double, double>>> coords;
    std::size_t n = rng.between(params.min_points, params.max_points);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
    std::vector<Matrix> metrics;
    for (std::size_t p = 0; p < params.metrics; ++p) {
        std::vector<std::pair<double, double>> pts(n);
        for (auto& [x, y] : pts) {
            x = rng.uniform();
            y = rng.uniform();
        }
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = i == j ? 0.0 : std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
        coords.push_back(std::move(pts));
        metrics.push_back(std::move(m));
    }
    // Euclidean distances are a metric up to rounding in the last place.
    auto space = FiniteMetricSpace::trusted(labels, metrics);
    auto random_map = [&] {
        std::vector<PointSet> images;
        for (std::size_t x = 0; x < n; ++x) {
            std::vector<Index> img;
            for (Index y = 0; y < n; ++y)
                if (params.density >= 1 || rng.uniform() < params.density) img.push_back(y);
            if (img.empty()) img.push_back(static_cast<Index>(rng.below(n)));
            images.push_back(PointSet::from_indices(std::move(img)));
        }
        return MultiMap(n, std::move(images));
    };
    std::vector<MultiMap> prefix, cycle;
    std::size_t np = rng.between(0, params.max_prefix), nc = rng.between(1, params.max_cycle);
    for (std::size_t j = 0; j < np; ++j) prefix.push_back(random_map());
    for (std::size_t j = 0; j < nc; ++j) cycle.push_back(random_map());
    MapSequence seq(std::move(prefix), std::move(cycle));
    std::vector<std::vector<double>> eps_grid;
    for (std::size_t p = 0; p < params.metrics; ++p) {
        std::vector<double> eps;
        double diam = 0;
        for (double v : metrics[p].values()) diam = std::max(diam, v);
        if (n > 1) {
            // one value exactly on a pairwise distance
            std::size_t i = rng.below(n), j = (i + 1 + rng.below(n - 1)) % n;
            eps.push_back(metrics[p](i, j));
        }
        while (eps.size() < params.eps_count) eps.push_back((0.05 + 0.9 * rng.uniform()) * std::max(diam, 1e-3));
        eps.resize(params.eps_count);
        std::sort(eps.begin(), eps.end());
        eps_grid.push_back(std::move(eps));
    }
    auto selection = gen_selection(seed, seq);
    return {seed, std::move(coords), std::move(space), std::move(seq), std::move(selection), std::move(eps_grid),
            params.n_max};
}

MapSequence gen_selection(std::uint64_t seed, const MapSequence& seq) {
    Rng rng(seed ^ 0x5e1ec7ull);
    auto pick = [&](const MultiMap& m) {
        std::vector<Index> f(m.size());
        for (Index x = 0; x < m.size(); ++x) f[x] = m.image(x)[rng.below(m.image(x).size())];
        return MultiMap::from_function(f);
    };
    std::vector<MultiMap> prefix, cycle;
    for (const auto& m : seq.prefix()) prefix.push_back(pick(m));
    for (const auto& m : seq.cycle()) cycle.push_back(pick(m));
    return MapSequence(std::move(prefix), std::move(cycle));
}

const std::vector<Law>& law_registry() {
    static const std::vector<Law> registry = make_registry();
    return registry;
}

LawReport run_suite(std::uint64_t seed, std::size_t count, const GenParams& params,
                    const std::vector<std::string>& only) {
    LawReport report;
    report.seed = seed;
    report.count = count;
    report.params = params;
    std::vector<const Law*> registry;
    for (const auto& law : law_registry())
        if (only.empty() || std::find(only.begin(), only.end(), law.id) != only.end()) registry.push_back(&law);
    for (const auto& id : only)
        if (std::none_of(registry.begin(), registry.end(), [&](const Law* l) { return l->id == id; }))
            throw Error(ErrorCode::kUnknownName, "unknown law '" + id + "'");
    for (const auto* law : registry) report.laws.push_back({law->id, law->module, law->statement, 0, 0, {}});
    for (std::size_t i = 0; i < count; ++i) {
        auto inst = gen_system(seed + i, params);
        std::string serialized;
        for (std::size_t l = 0; l < registry.size(); ++l) {
            LawRecorder rec(inst);
            registry[l]->run(inst, rec);
            auto& out = report.laws[l];
            out.checked += rec.checked();
            out.skipped += rec.skipped();
            for (const auto& f : rec.failures()) {
                if (serialized.empty()) serialized = instance_json(inst);
                out.violations.push_back({inst.seed, f, serialized});
            }
        }
    }
    for (auto& l : report.laws)
        std::stable_sort(l.violations.begin(), l.violations.end(),
                         [](const LawViolation& a, const LawViolation& b) { return a.seed < b.seed; });
    report.pass = report.violation_count() == 0;
    return report;
}

std::string instance_json(const LawInstance& inst) {
    json j;
    j["seed"] = inst.seed;
    j["points"] = inst.space.labels();
    json coords = json::array();
    for (const auto& pts : inst.coords) {
        json c = json::array();
        for (auto& [x, y] : pts) c.push_back({x, y});
        coords.push_back(c);
    }
    j["coords"] = coords;
    json metrics = json::array();
    for (std::size_t p = 0; p < inst.space.metric_count(); ++p) {
        json rows = json::array();
        for (Index x = 0; x < inst.space.size(); ++x) {
            auto r = inst.space.metric(p).row(x);
            rows.push_back(std::vector<double>(r.begin(), r.end()));
        }
        metrics.push_back(rows);
    }
    j["metrics"] = metrics;
    j["prefix"] = maps_json(inst.seq.prefix());
    j["cycle"] = maps_json(inst.seq.cycle());
    j["selection_prefix"] = maps_json(inst.selection.prefix());
    j["selection_cycle"] = maps_json(inst.selection.cycle());
    j["eps"] = inst.eps;
    j["n_max"] = inst.n_max;
    j["spec"] = serialize_spec(spec_of(inst));
    return j.dump();
}

std::string law_report_json(const LawReport& report) {
    json j;
    j["seed"] = report.seed;
    j["count"] = report.count;
    j["params"] = params_json(report.params);
    j["mode"] = "exact";
    j["pass"] = report.pass;
    j["violations"] = report.violation_count();
    json laws = json::array();
    for (const auto& l : report.laws) {
        json v = json::array();
        for (const auto& x : l.violations)
            v.push_back({{"seed", x.seed}, {"detail", x.detail}, {"instance", json::parse(x.instance)}});
        laws.push_back({{"id", l.id},
                        {"module", l.module},
                        {"statement", l.statement},
                        {"checked", l.checked},
                        {"skipped", l.skipped},
                        {"violations", v}});
    }
    j["laws"] = laws;
    return j.dump(2) + "\n";
}

}  // namespace mvent
