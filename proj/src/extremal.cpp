#include "mvent/extremal.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>

#include "mvent/error.hpp"

namespace mvent {

const char* bound_name(Bound b) {
    switch (b) {
        case Bound::kExact: return "EXACT";
        case Bound::kLowerBound: return "LOWER_BOUND";
        case Bound::kUpperBound: return "UPPER_BOUND";
    }
    return "?";
}

const char* mode_name(SolveMode m) {
    switch (m) {
        case SolveMode::kExact: return "exact";
        case SolveMode::kGreedy: return "greedy";
        case SolveMode::kAuto: return "auto";
    }
    return "?";
}

SolveMode parse_mode(const std::string& name) {
    for (SolveMode m : {SolveMode::kExact, SolveMode::kGreedy, SolveMode::kAuto})
        if (name == mode_name(m)) return m;
    throw Error(ErrorCode::kUnknownName, "unknown solver mode '" + name + "'");
}

namespace fault {
namespace {
bool g_enabled = false;
}
void set_enabled(bool on) { g_enabled = on; }
#ifdef MVENT_FAULT_INJECTION
bool enabled() { return g_enabled; }
#else
bool enabled() { return false; }
#endif
}  // namespace fault

DistanceTable::DistanceTable(Matrix values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
    const std::size_t n = values_.size();
    if (!labels_.empty() && labels_.size() != n)
        throw Error(ErrorCode::kShapeMismatch, "table labels do not match its size");
    for (std::size_t i = 0; i < n; ++i) {
        if (values_(i, i) != 0.0)
            throw Error(ErrorCode::kNonzeroDiagonal, "table entry (" + std::to_string(i) + "," + std::to_string(i) + ") is nonzero");
        for (std::size_t j = i + 1; j < n; ++j)
            if (values_(i, j) != values_(j, i))
                throw Error(ErrorCode::kSymmetryViolation,
                            "table entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not symmetric");
    }
}

Graph threshold_graph(const DistanceTable& table, double eps) {
    Graph g;
    const std::size_t n = table.size();
    g.adj.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (table(i, j) <= eps) {
                g.adj[i].push_back(static_cast<std::uint32_t>(j));
                g.adj[j].push_back(static_cast<std::uint32_t>(i));
            }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

namespace {

std::vector<std::vector<std::uint32_t>> components(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::uint32_t> comp{static_cast<std::uint32_t>(s)};
        seen[s] = 1;
        for (std::size_t k = 0; k < comp.size(); ++k)
            for (auto v : g.adj[comp[k]])
                if (!seen[v]) {
                    seen[v] = 1;
                    comp.push_back(v);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

int lowest(std::uint64_t m) { return std::countr_zero(m); }

class MisSearch {
public:
    explicit MisSearch(std::vector<std::uint64_t> adj) : adj_(std::move(adj)) {}

    std::uint64_t run() {
        const int k = static_cast<int>(adj_.size());
        std::uint64_t all = k == 64 ? ~std::uint64_t{0} : bit(k) - 1;
        // Greedy start in index order.
        std::uint64_t p = all;
        best_ = 0;
        while (p) {
            int v = lowest(p);
            best_ |= bit(v);
            p &= ~(adj_[v] | bit(v));
        }
        best_size_ = std::popcount(best_);
        search(all, 0, 0);
        return best_;
    }

private:
    // Greedy clique partition of p; its size bounds any independent set in p.
    int clique_bound(std::uint64_t p) const {
        int cliques = 0;
        while (p) {
            int v = lowest(p);
            std::uint64_t clique = bit(v), cand = p & adj_[v];
            while (cand) {
                int u = lowest(cand);
                clique |= bit(u);
                cand &= adj_[u];
            }
            p &= ~clique;
            ++cliques;
        }
        return cliques;
    }

    void search(std::uint64_t p, std::uint64_t cur, int size) {
        if (!p) {
            if (size > best_size_) {
                best_ = cur;
                best_size_ = size;
            }
            return;
        }
        if (size + std::popcount(p) <= best_size_) return;
        if (size + clique_bound(p) <= best_size_) return;
        int vmin = -1, dmin = 65, vmax = -1, dmax = -1;
        for (std::uint64_t q = p; q; q &= q - 1) {
            int v = lowest(q);
            int d = std::popcount(adj_[v] & p);
            if (d < dmin) {
                dmin = d;
                vmin = v;
            }
            if (d > dmax) {
                dmax = d;
                vmax = v;
            }
        }
        if (dmin <= 1) {
            search(p & ~(adj_[vmin] | bit(vmin)), cur | bit(vmin), size + 1);
            return;
        }
        search(p & ~(adj_[vmax] | bit(vmax)), cur | bit(vmax), size + 1);
        search(p & ~bit(vmax), cur, size);
    }

    std::vector<std::uint64_t> adj_;
    std::uint64_t best_ = 0;
    int best_size_ = 0;
};

class CoverSearch {
public:
    CoverSearch(std::vector<std::uint64_t> sets, std::uint64_t universe)
        : sets_(std::move(sets)), universe_(universe) {}

    // Returns positions into the set list.
    std::vector<int> run(std::vector<int> start) {
        best_ = std::move(start);
        std::vector<int> chosen;
        search(universe_, chosen);
        return best_;
    }

private:
    void search(std::uint64_t uncovered, std::vector<int>& chosen) {
        if (!uncovered) {
            if (chosen.size() < best_.size()) best_ = chosen;
            return;
        }
        int largest = 0;
        for (auto s : sets_) largest = std::max(largest, std::popcount(s & uncovered));
        const int need = (std::popcount(uncovered) + largest - 1) / largest;
        if (chosen.size() + static_cast<std::size_t>(need) >= best_.size()) return;
        // Branch on the uncovered item with the fewest covering sets.
        int item = -1, fewest = 1 << 30;
        for (std::uint64_t q = uncovered; q; q &= q - 1) {
            int u = lowest(q);
            int c = 0;
            for (auto s : sets_) c += (s >> u) & 1;
            if (c < fewest) {
                fewest = c;
                item = u;
            }
        }
        std::vector<int> options;
        for (int s = 0; s < static_cast<int>(sets_.size()); ++s)
            if ((sets_[s] >> item) & 1) options.push_back(s);
        std::stable_sort(options.begin(), options.end(), [&](int a, int b) {
            return std::popcount(sets_[a] & uncovered) > std::popcount(sets_[b] & uncovered);
        });
        for (int s : options) {
            chosen.push_back(s);
            search(uncovered & ~sets_[s], chosen);
            chosen.pop_back();
        }
    }

    std::vector<std::uint64_t> sets_;
    std::uint64_t universe_;
    std::vector<int> best_;
};

// Lazy greedy cover of the items flagged in `active`, using only sets that
// touch them.
std::vector<std::size_t> greedy_cover(const std::vector<char>& active,
                                      const std::vector<std::vector<std::uint32_t>>& sets,
                                      const std::vector<std::size_t>& relevant) {
    std::vector<char> uncovered = active;
    std::size_t remaining = 0;
    for (auto a : active) remaining += a ? 1 : 0;
    auto gain = [&](std::size_t s) {
        std::size_t g = 0;
        for (auto i : sets[s]) g += uncovered[i] ? 1 : 0;
        return g;
    };
    // Max gain first, then lowest index.
    using Entry = std::pair<std::size_t, std::size_t>;
    auto cmp = [](const Entry& a, const Entry& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
    for (auto s : relevant) heap.push({gain(s), s});
    std::vector<std::size_t> picked;
    while (remaining > 0 && !heap.empty()) {
        auto [g, s] = heap.top();
        heap.pop();
        std::size_t now = gain(s);
        if (now == 0) continue;
        if (now < g) {
            heap.push({now, s});
            continue;
        }
        picked.push_back(s);
        for (auto i : sets[s])
            if (uncovered[i]) {
                uncovered[i] = 0;
                --remaining;
            }
    }
    return picked;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

SolveResult max_independent_set(const Graph& g, SolveMode mode, std::size_t budget) {
    SolveResult res;
    res.bound = mode == SolveMode::kGreedy ? Bound::kLowerBound : Bound::kExact;
    std::vector<char> taken(g.size(), 0);
    for (const auto& comp : components(g)) {
        const bool exact = mode != SolveMode::kGreedy && comp.size() <= std::min<std::size_t>(budget, 64);
        if (mode == SolveMode::kExact && !exact)
            throw Error(ErrorCode::kExactSizeLimit, "component of " + std::to_string(comp.size()) +
                                                        " items exceeds exact limit " +
                                                        std::to_string(std::min<std::size_t>(budget, 64)));
        if (!exact) {
            if (mode == SolveMode::kAuto) res.bound = Bound::kLowerBound;
            for (auto v : comp) {
                bool free = true;
                for (auto u : g.adj[v])
                    if (taken[u]) {
                        free = false;
                        break;
                    }
                if (free) taken[v] = 1;
            }
            continue;
        }
        if (comp.size() == 1) {
            taken[comp[0]] = 1;
            continue;
        }
        std::map<std::uint32_t, int> local;
        for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = static_cast<int>(i);
        std::vector<std::uint64_t> adj(comp.size(), 0);
        for (std::size_t i = 0; i < comp.size(); ++i)
            for (auto u : g.adj[comp[i]]) adj[i] |= bit(local[u]);
        std::uint64_t best = MisSearch(std::move(adj)).run();
        for (std::uint64_t q = best; q; q &= q - 1) taken[comp[lowest(q)]] = 1;
    }
    for (std::size_t v = 0; v < g.size(); ++v)
        if (taken[v]) res.witness.push_back(v);
    res.cardinality = res.witness.size();
    return res;
}

SolveResult min_set_cover(std::size_t universe, const std::vector<std::vector<std::uint32_t>>& sets,
                          SolveMode mode, std::size_t budget) {
    SolveResult res;
    res.bound = mode == SolveMode::kGreedy ? Bound::kUpperBound : Bound::kExact;
    if (universe == 0) return res;
    UnionFind uf(universe);
    std::vector<char> covered(universe, 0);
    for (const auto& s : sets)
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (s[k] >= universe) throw Error(ErrorCode::kIndexOutOfRange, "set item out of range");
            covered[s[k]] = 1;
            if (k) uf.unite(s[0], s[k]);
        }
    for (std::size_t i = 0; i < universe; ++i)
        if (!covered[i]) throw Error(ErrorCode::kInfeasible, "item " + std::to_string(i) + " lies in no set");

    std::map<std::uint32_t, std::vector<std::uint32_t>> comp_items;
    for (std::uint32_t i = 0; i < universe; ++i) comp_items[uf.find(i)].push_back(i);
    std::map<std::uint32_t, std::vector<std::size_t>> comp_sets;
    for (std::size_t s = 0; s < sets.size(); ++s)
        if (!sets[s].empty()) comp_sets[uf.find(sets[s][0])].push_back(s);

    std::vector<std::size_t> picked;
    std::vector<char> greedy_items(universe, 0);
    std::vector<std::size_t> greedy_sets;
    for (const auto& [root, items] : comp_items) {
        const auto& cand = comp_sets[root];
        const bool exact = mode != SolveMode::kGreedy && items.size() <= std::min<std::size_t>(budget, 64);
        if (mode == SolveMode::kExact && !exact)
            throw Error(ErrorCode::kExactSizeLimit, "component of " + std::to_string(items.size()) +
                                                        " items exceeds exact limit " +
                                                        std::to_string(std::min<std::size_t>(budget, 64)));
        if (!exact) {
            if (mode == SolveMode::kAuto) res.bound = Bound::kUpperBound;
            for (auto i : items) greedy_items[i] = 1;
            greedy_sets.insert(greedy_sets.end(), cand.begin(), cand.end());
            continue;
        }
        std::map<std::uint32_t, int> local;
        for (std::size_t i = 0; i < items.size(); ++i) local[items[i]] = static_cast<int>(i);
        // Keep one representative per distinct mask and drop masks strictly
        // contained in another.
        std::vector<std::uint64_t> masks;
        std::vector<std::size_t> owner;
        for (auto s : cand) {
            std::uint64_t m = 0;
            for (auto i : sets[s]) m |= bit(local[i]);
            if (std::find(masks.begin(), masks.end(), m) != masks.end()) continue;
            masks.push_back(m);
            owner.push_back(s);
        }
        std::vector<std::uint64_t> kept;
        std::vector<std::size_t> kept_owner;
        for (std::size_t a = 0; a < masks.size(); ++a) {
            bool dominated = false;
            for (std::size_t b = 0; b < masks.size() && !dominated; ++b)
                dominated = b != a && (masks[a] & ~masks[b]) == 0;
            if (!dominated) {
                kept.push_back(masks[a]);
                kept_owner.push_back(owner[a]);
            }
        }
        std::uint64_t all = items.size() == 64 ? ~std::uint64_t{0} : bit(static_cast<int>(items.size())) - 1;
        // Greedy start.
        std::vector<int> start;
        std::uint64_t left = all;
        while (left) {
            int bs = 0, bg = -1;
            for (int s = 0; s < static_cast<int>(kept.size()); ++s) {
                int gsz = std::popcount(kept[s] & left);
                if (gsz > bg) {
                    bg = gsz;
                    bs = s;
                }
            }
            start.push_back(bs);
            left &= ~kept[bs];
        }
        for (int s : CoverSearch(kept, all).run(start)) picked.push_back(kept_owner[s]);
    }
    if (!greedy_sets.empty()) {
        std::sort(greedy_sets.begin(), greedy_sets.end());
        auto g = greedy_cover(greedy_items, sets, greedy_sets);
        picked.insert(picked.end(), g.begin(), g.end());
    }
    std::sort(picked.begin(), picked.end());
    res.witness = picked;
    res.cardinality = picked.size();
    return res;
}

SolveResult max_separated(const Graph& close, SolveMode mode, std::size_t budget) {
    SolveResult res = max_independent_set(close, mode, budget);
    if (fault::enabled() && res.bound == Bound::kExact && res.cardinality > 0) ++res.cardinality;
    return res;
}

SolveResult max_separated(const DistanceTable& table, double eps, SolveMode mode, std::size_t budget) {
    if (!(eps > 0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
    return max_separated(threshold_graph(table, eps), mode, budget);
}

SolveResult min_spanning(const Graph& close, SolveMode mode, std::size_t budget) {
    std::vector<std::vector<std::uint32_t>> sets(close.size());
    for (std::size_t v = 0; v < close.size(); ++v) {
        sets[v] = close.adj[v];
        sets[v].insert(std::lower_bound(sets[v].begin(), sets[v].end(), static_cast<std::uint32_t>(v)),
                       static_cast<std::uint32_t>(v));
    }
    return min_set_cover(close.size(), sets, mode, budget);
}

VertexCover min_vertex_cover(const Graph& g, std::size_t budget) {
    const std::size_t n = g.size();
    // Greedy: repeatedly take a vertex of largest remaining degree.
    std::vector<std::size_t> deg(n);
    for (std::size_t v = 0; v < n; ++v) deg[v] = g.adj[v].size();
    std::vector<char> in(n, 0);
    std::vector<std::size_t> greedy;
    while (true) {
        std::size_t best = n, bd = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v] && deg[v] > bd) {
                bd = deg[v];
                best = v;
            }
        if (best == n) break;
        in[best] = 1;
        greedy.push_back(best);
        for (auto u : g.adj[best])
            if (!in[u]) --deg[u];
        deg[best] = 0;
    }
    // Drop redundant members, highest index first.
    std::sort(greedy.begin(), greedy.end());
    for (std::size_t k = greedy.size(); k-- > 0;) {
        std::size_t v = greedy[k];
        bool needed = false;
        for (auto u : g.adj[v])
            if (!in[u]) needed = true;
        if (!needed) in[v] = 0;
    }
    greedy.clear();
    for (std::size_t v = 0; v < n; ++v)
        if (in[v]) greedy.push_back(v);

    VertexCover out{greedy, false};
    if (greedy.empty()) {
        out.exact = true;
        return out;
    }
    // Any cover of size <= k must contain every vertex of degree > k.
    const std::size_t k = greedy.size() - 1;
    std::vector<char> forced(n, 0);
    std::size_t nforced = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (g.adj[v].size() > k) {
            forced[v] = 1;
            ++nforced;
        }
    if (nforced > k) {
        out.exact = true;
        return out;
    }
    Graph rest;
    rest.adj.resize(n);
    std::size_t edges = 0;
    for (std::size_t v = 0; v < n; ++v) {
        if (forced[v]) continue;
        for (auto u : g.adj[v])
            if (!forced[u]) {
                rest.adj[v].push_back(u);
                if (u > v) ++edges;
            }
    }
    const std::size_t left = k - nforced;
    if (edges > left * k) {
        out.exact = true;
        return out;
    }
    // Exact search on the kernel: cover = complement of a maximum independent
    // set within each nontrivial component.
    for (const auto& comp : components(rest))
        if (comp.size() > std::min<std::size_t>(budget, 64)) return out;
    SolveResult mis = max_independent_set(rest, SolveMode::kExact, budget);
    std::vector<char> free(n, 0);
    for (auto v : mis.witness) free[v] = 1;
    std::vector<std::size_t> cover;
    for (std::size_t v = 0; v < n; ++v)
        if (forced[v] || (!free[v] && !rest.adj[v].empty())) cover.push_back(v);
    out.exact = true;
    if (cover.size() < out.vertices.size()) out.vertices = cover;
    return out;
}

SolveResult min_spanning(const DistanceTable& table, double eps, SolveMode mode, std::size_t budget,
                         std::vector<std::size_t> universe, std::vector<std::size_t> candidates) {
    if (!(eps > 0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
    auto fill = [&](std::vector<std::size_t>& v) {
        if (v.empty())
            for (std::size_t i = 0; i < table.size(); ++i) v.push_back(i);
        for (auto i : v)
            if (i >= table.size()) throw Error(ErrorCode::kIndexOutOfRange, "item index out of range");
    };
    fill(universe);
    fill(candidates);
    std::vector<std::vector<std::uint32_t>> sets(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
        for (std::size_t u = 0; u < universe.size(); ++u)
            if (table(universe[u], candidates[c]) <= eps) sets[c].push_back(static_cast<std::uint32_t>(u));
    SolveResult res = min_set_cover(universe.size(), sets, mode, budget);
    for (auto& w : res.witness) w = candidates[w];
    return res;
}

SolveResult min_subcover(const std::vector<PointSet>& blocks, const PointSet& universe, SolveMode mode,
                         std::size_t budget) {
    std::map<Index, std::uint32_t> pos;
    for (auto i : universe) pos.emplace(i, static_cast<std::uint32_t>(pos.size()));
    std::vector<std::vector<std::uint32_t>> sets(blocks.size());
    std::vector<char> hit(universe.size(), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (auto i : blocks[b])
            if (auto it = pos.find(i); it != pos.end()) {
                sets[b].push_back(it->second);
                hit[it->second] = 1;
            }
    for (std::size_t k = 0; k < hit.size(); ++k)
        if (!hit[k]) throw Error(ErrorCode::kNotACover, "point " + std::to_string(universe[k]) + " is in no block");
    return min_set_cover(universe.size(), sets, mode, budget);
}

}  // namespace mvent
