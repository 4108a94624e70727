#include "mvent/orbitmetrics.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "mvent/error.hpp"

namespace mvent {

double pn(const FiniteMetricSpace& space, std::size_t p, std::span<const Index> a, std::span<const Index> b) {
    if (a.size() != b.size())
        throw Error(ErrorCode::kLengthMismatch, "tuples of length " + std::to_string(a.size()) + " and " +
                                                    std::to_string(b.size()));
    const Matrix& m = space.metric(p);
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, m(a[i], b[i]));
    return best;
}

double pn_cm(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t n, Index x,
             Index y) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "horizon must be at least 1");
    const Matrix& m = space.metric(p);
    const std::size_t size = space.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> cur(size * size, kInf), next(size * size);
    cur[x * size + y] = m(x, y);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::fill(next.begin(), next.end(), kInf);
        const MultiMap& f = seq.at(i);
        for (std::size_t u = 0; u < size; ++u)
            for (std::size_t v = 0; v < size; ++v) {
                double c = cur[u * size + v];
                if (c == kInf) continue;
                for (auto u2 : f.image(static_cast<Index>(u)))
                    for (auto v2 : f.image(static_cast<Index>(v))) {
                        double& slot = next[u2 * size + v2];
                        slot = std::min(slot, std::max(c, m(u2, v2)));
                    }
            }
        std::swap(cur, next);
    }
    return *std::min_element(cur.begin(), cur.end());
}

double p_rho_at(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t k, Index x,
                Index y) {
    return set_rho(space, p, composed_image(seq, k, x), composed_image(seq, k, y));
}

double p_haus_at(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t k, Index x,
                 Index y) {
    return set_hausdorff(space, p, composed_image(seq, k, x), composed_image(seq, k, y));
}

namespace {

double directed_orbit_distance(const FiniteMetricSpace& space, std::size_t p, const OrbitSet& a,
                               const OrbitSet& b) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.count(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.count() && nearest > best; ++j)
            nearest = std::min(nearest, pn(space, p, a.orbit(i), b.orbit(j)));
        best = std::max(best, nearest);
    }
    return best;
}

// One backward step of the all-pairs bottleneck recursion.
Matrix cm_step(const Matrix& metric, const MultiMap& f, const Matrix& v) {
    const std::size_t size = metric.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    Matrix w(size, kInf);
    for (std::size_t u = 0; u < size; ++u) {
        auto wr = &w(u, 0);
        for (auto u2 : f.image(static_cast<Index>(u))) {
            auto vr = v.row(u2);
            for (std::size_t t = 0; t < size; ++t) wr[t] = std::min(wr[t], vr[t]);
        }
    }
    Matrix out(size);
    for (std::size_t u = 0; u < size; ++u)
        for (std::size_t t = u; t < size; ++t) {
            double best = kInf;
            for (auto t2 : f.image(static_cast<Index>(t))) best = std::min(best, w(u, t2));
            double val = std::max(metric(u, t), best);
            out(u, t) = val;
            out(t, u) = val;
        }
    return out;
}

}  // namespace

double pn_branch(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t n, Index x,
                 Index y, std::size_t cap) {
    if (x == y) return 0.0;
    auto ox = enumerate_orbits(seq, n, x, cap);
    auto oy = enumerate_orbits(seq, n, y, cap);
    return std::max(directed_orbit_distance(space, p, ox, oy), directed_orbit_distance(space, p, oy, ox));
}

Matrix cm_matrix(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "horizon must be at least 1");
    const Matrix& metric = space.metric(p);
    Matrix v = metric;
    for (std::size_t i = n - 1; i-- > 0;) v = cm_step(metric, seq.at(i), v);
    return v;
}

CmTables::CmTables(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p)
    : space_(space), seq_(seq), p_(p), table_(space.metric(p)) {}

void CmTables::extend() {
    ++n_;
    if (seq_.is_autonomous())
        table_ = cm_step(space_.metric(p_), seq_.at(0), table_);
    else
        table_ = cm_matrix(space_, seq_, p_, n_);
}

LayerTables::LayerTables(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, Kind kind)
    : space_(space), seq_(seq), p_(p), kind_(kind), table_(space.metric(p)) {
    const std::size_t size = space.size();
    layer_.assign(size, Bitset(size));
    for (std::size_t x = 0; x < size; ++x) layer_[x].set(x);
}

void LayerTables::extend() {
    const MultiMap& f = seq_.at(n_ - 1);
    for (auto& s : layer_) s = f.image_of(s);
    ++n_;
    absorb();
}

void LayerTables::absorb() {
    const std::size_t size = space_.size();
    const LineEmbedding* line = space_.line_embedding(p_);
    const bool fast = line && line->monotone;
    std::vector<std::vector<detail::Run>> runs;
    std::vector<PointSet> sets;
    if (fast) {
        runs.reserve(size);
        for (const auto& s : layer_) runs.push_back(detail::runs_of(s));
    } else {
        sets.reserve(size);
        for (const auto& s : layer_) sets.push_back(PointSet::from_bits(s));
    }
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j) {
            if (layer_[i] == layer_[j]) continue;
            double d;
            if (kind_ == Kind::kRho) {
                if (layer_[i].intersects(layer_[j])) continue;
                d = fast ? detail::line_rho(*line, runs[i], runs[j]) : set_rho_direct(space_, p_, sets[i], sets[j]);
            } else {
                d = fast ? detail::line_hausdorff(*line, runs[i], runs[j])
                         : set_hausdorff_direct(space_, p_, sets[i], sets[j]);
            }
            if (d > table_(i, j)) {
                table_(i, j) = d;
                table_(j, i) = d;
            }
        }
}

BranchThreshold::BranchThreshold(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p,
                                 double eps, std::size_t state_budget)
    : space_(space), seq_(seq), p_(p), eps_(eps), state_budget_(state_budget) {
    const std::size_t size = space.size();
    const Matrix& m = space.metric(p);
    balls_.assign(size, Bitset(size));
    for (std::size_t c = 0; c < size; ++c)
        for (std::size_t y = 0; y < size; ++y)
            if (m(c, y) <= eps) balls_[c].set(y);
    auto build = [&](const MultiMap& f) {
        BlockImages b;
        b.levels.push_back({});
        for (Index x = 0; x < size; ++x) b.levels[0].push_back(f.image_bits(x));
        while (b.levels.back().size() > 1) {
            const auto& prev = b.levels.back();
            std::vector<Bitset> next;
            for (std::size_t i = 0; i + 1 < prev.size(); i += 2) {
                Bitset u = prev[i];
                u |= prev[i + 1];
                next.push_back(std::move(u));
            }
            b.levels.push_back(std::move(next));
        }
        return b;
    };
    for (const auto& f : seq.prefix()) blocks_.push_back(build(f));
    for (const auto& f : seq.cycle()) blocks_.push_back(build(f));
}

Bitset BranchThreshold::BlockImages::image_of(const Bitset& set) const {
    Bitset out(set.size());
    for (const auto& run : detail::runs_of(set)) {
        std::size_t lo = run.lo, hi = static_cast<std::size_t>(run.hi) + 1;  // [lo, hi)
        while (lo < hi) {
            std::size_t k = 0;
            while (k + 1 < levels.size() && lo % (std::size_t{2} << k) == 0 && lo + (std::size_t{2} << k) <= hi &&
                   (lo >> (k + 1)) < levels[k + 1].size())
                ++k;
            out |= levels[k][lo >> k];
            lo += std::size_t{1} << k;
        }
    }
    return out;
}

const BranchThreshold::BlockImages& BranchThreshold::blocks_at(std::size_t j) const {
    std::size_t pre = seq_.prefix().size();
    return j < pre ? blocks_[j] : blocks_[pre + (j - pre) % seq_.cycle().size()];
}

namespace {

struct State {
    Index u;
    Bitset alive;
    bool operator==(const State& o) const { return u == o.u && alive == o.alive; }
};

struct StateHash {
    std::size_t operator()(const State& s) const { return s.alive.hash() * 1315423911u + s.u; }
};

}  // namespace

std::size_t BranchThreshold::directed_first(std::size_t n_max, Index x, Index y) const {
    if (!balls_[x].test(y)) return 1;
    std::unordered_set<State, StateHash> level;
    Bitset start(space_.size());
    start.set(y);
    level.insert({x, start});
    for (std::size_t i = 0; i + 1 < n_max; ++i) {
        const MultiMap& f = seq_.at(i);
        const BlockImages& blocks = blocks_at(i);
        std::unordered_set<State, StateHash> next;
        for (const State& s : level) {
            Bitset img = blocks.image_of(s.alive);
            for (auto u2 : f.image(s.u)) {
                Bitset alive = img;
                alive &= balls_[u2];
                if (alive.none()) return i + 2;
                next.insert({u2, std::move(alive)});
            }
        }
        if (next.size() > state_budget_)
            throw Error(ErrorCode::kExactSizeLimit, "branch threshold search exceeded " +
                                                        std::to_string(state_budget_) + " states");
        level = std::move(next);
    }
    return n_max + 1;
}

bool BranchThreshold::directed_exceeds(std::size_t n, Index x, Index y) const {
    return directed_first(n, x, y) <= n;
}

std::size_t BranchThreshold::first_horizon(std::size_t n_max, Index x, Index y) const {
    if (x == y) return n_max + 1;
    return std::min(directed_first(n_max, x, y), directed_first(n_max, y, x));
}

bool BranchThreshold::exceeds(std::size_t n, Index x, Index y) const {
    if (x == y) return false;
    return directed_exceeds(n, x, y) || directed_exceeds(n, y, x);
}

}  // namespace mvent
