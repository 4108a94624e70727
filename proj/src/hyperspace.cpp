#include "mvent/hyperspace.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "mvent/error.hpp"

namespace mvent {

PointSet Hyperspace::subset(Index k) const {
    std::vector<Index> out;
    for (std::uint32_t m = mask(k); m; m &= m - 1) out.push_back(static_cast<Index>(std::countr_zero(m)));
    return PointSet::from_indices(std::move(out));
}

namespace {

// Hausdorff matrix over all subsets. dist[m][y] = min over x in m of p(x, y);
// the directed excess of b over a is the max of dist[a][y] over y in b.
Matrix hausdorff_table(const Matrix& p, std::size_t n) {
    std::size_t full = std::size_t{1} << n;
    std::vector<double> dist(full * n, std::numeric_limits<double>::infinity());
    for (std::size_t m = 1; m < full; ++m) {
        std::size_t low = static_cast<std::size_t>(std::countr_zero(m));
        std::size_t rest = m & (m - 1);
        for (std::size_t y = 0; y < n; ++y)
            dist[m * n + y] = rest ? std::min(dist[rest * n + y], p(low, y)) : p(low, y);
    }
    std::size_t k = full - 1;
    Matrix excess(k);  // excess(a-1, b-1) = sup over y in b of dist(y, a)
    std::vector<double> row(full);
    for (std::size_t a = 1; a < full; ++a) {
        row[0] = 0;
        for (std::size_t b = 1; b < full; ++b) {
            std::size_t low = static_cast<std::size_t>(std::countr_zero(b));
            row[b] = std::max(row[b & (b - 1)], dist[a * n + low]);
            excess(a - 1, b - 1) = row[b];
        }
    }
    Matrix h(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) h(i, j) = h(j, i) = std::max(excess(i, j), excess(j, i));
    return h;
}

}  // namespace

Hyperspace build_hyperspace(const FiniteMetricSpace& space, std::size_t size_limit) {
    std::size_t n = space.size();
    if (n > size_limit || n > 20)
        throw Error(ErrorCode::kSpaceTooLarge, "hyperspace of " + std::to_string(n) +
                                                   " points exceeds the limit of " + std::to_string(size_limit));
    std::size_t full = std::size_t{1} << n;
    std::vector<std::string> labels;
    labels.reserve(full - 1);
    for (std::size_t m = 1; m < full; ++m) {
        std::string s = "{";
        for (std::size_t x = 0; x < n; ++x)
            if (m >> x & 1) {
                if (s.size() > 1) s += ",";
                s += space.label(static_cast<Index>(x));
            }
        labels.push_back(s + "}");
    }
    std::vector<Matrix> metrics;
    for (std::size_t p = 0; p < space.metric_count(); ++p) metrics.push_back(hausdorff_table(space.metric(p), n));
    return Hyperspace(space, FiniteMetricSpace::trusted(std::move(labels), std::move(metrics)));
}

MultiMap lift_map(const MultiMap& map, const Hyperspace& hyper) {
    std::size_t n = hyper.base().size();
    if (map.size() != n) throw Error(ErrorCode::kShapeMismatch, "map and hyperspace base differ in size");
    std::size_t full = std::size_t{1} << n;
    std::vector<std::uint32_t> image(full, 0);
    std::vector<std::uint32_t> single(n, 0);
    for (Index x = 0; x < n; ++x)
        for (Index y : map.image(x)) single[x] |= std::uint32_t{1} << y;
    std::vector<Index> f(full - 1);
    for (std::size_t m = 1; m < full; ++m) {
        image[m] = image[m & (m - 1)] | single[std::countr_zero(m)];
        f[m - 1] = hyper.index_of(image[m]);
    }
    return MultiMap::from_function(f);
}

MapSequence lift_sequence(const MapSequence& seq, const Hyperspace& hyper) {
    std::vector<MultiMap> prefix, cycle;
    for (const auto& m : seq.prefix()) prefix.push_back(lift_map(m, hyper));
    for (const auto& m : seq.cycle()) cycle.push_back(lift_map(m, hyper));
    return MapSequence(std::move(prefix), std::move(cycle));
}

HyperComparison compare_hyper(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                              std::size_t n_max, const CountOptions& opt, std::size_t size_limit) {
    auto hyper = build_hyperspace(space, size_limit);
    auto lifted = lift_sequence(seq, hyper);
    HyperComparison out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        HyperRow row;
        row.n = n;
        auto h = count_haus(space, seq, p, eps, n, true, opt);
        auto s = count_kt(hyper.space(), lifted, p, eps, n, true, opt);
        row.s_haus = h.cardinality;
        row.bound_haus = h.bound;
        row.s_hyper = s.cardinality;
        row.bound_hyper = s.bound;
        try {
            auto kt = count_kt(space, seq, p, eps, n, true, opt);
            row.s_kt = kt.cardinality;
            row.bound_kt = kt.bound;
        } catch (const Error& e) {
            if (opt.mode == SolveMode::kExact || error_class(e.code()) != ErrorClass::kResource) throw;
            row.bound_kt = Bound::kLowerBound;
        }
        if (row.bound_haus == Bound::kExact && row.bound_hyper == Bound::kExact && row.s_haus > row.s_hyper)
            out.holds = false;
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace mvent
