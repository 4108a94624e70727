#ifndef MVENT_TEST_HELPERS_HPP
#define MVENT_TEST_HELPERS_HPP

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mvent/dynamics.hpp"
#include "mvent/error.hpp"
#include "mvent/space.hpp"

namespace testing_util {

using namespace mvent;

inline std::vector<std::string> labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
    return out;
}

inline FiniteMetricSpace discrete(std::size_t n) {
    Matrix m(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
    return FiniteMetricSpace(labels(n), {m});
}

inline FiniteMetricSpace unit_line(std::size_t n) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<double>(i);
    return FiniteMetricSpace::line(labels(n), c);
}

inline PointSet ps(std::vector<Index> v) { return PointSet::from_indices(std::move(v)); }

inline MultiMap relation(const std::vector<std::vector<Index>>& images) {
    std::vector<PointSet> sets;
    for (const auto& v : images) sets.push_back(ps(v));
    return MultiMap(images.size(), std::move(sets));
}

inline PointSet random_subset(std::mt19937_64& rng, std::size_t n) {
    std::vector<Index> v;
    while (v.empty())
        for (std::size_t i = 0; i < n; ++i)
            if (rng() & 1) v.push_back(static_cast<Index>(i));
    return ps(v);
}

inline MultiMap random_map(std::mt19937_64& rng, std::size_t n, double density) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<PointSet> images;
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<Index> v;
        for (std::size_t y = 0; y < n; ++y)
            if (u(rng) < density) v.push_back(static_cast<Index>(y));
        if (v.empty()) v.push_back(static_cast<Index>(rng() % n));
        images.push_back(ps(v));
    }
    return MultiMap(n, std::move(images));
}

inline MapSequence random_sequence(std::mt19937_64& rng, std::size_t n, double density) {
    std::size_t plen = rng() % 3, clen = 1 + rng() % 2;
    std::vector<MultiMap> prefix, cycle;
    for (std::size_t i = 0; i < plen; ++i) prefix.push_back(random_map(rng, n, density));
    for (std::size_t i = 0; i < clen; ++i) cycle.push_back(random_map(rng, n, density));
    return MapSequence(std::move(prefix), std::move(cycle));
}

// Random metric on n points from small integer coordinates in the plane.
inline FiniteMetricSpace random_space(std::mt19937_64& rng, std::size_t n) {
    while (true) {
        std::vector<std::pair<int, int>> pts;
        for (std::size_t i = 0; i < n; ++i) pts.emplace_back(static_cast<int>(rng() % 8), static_cast<int>(rng() % 8));
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
                m(i, j) = std::sqrt(dx * dx + dy * dy) / 8.0;
            }
        try {
            return FiniteMetricSpace(labels(n), {m});
        } catch (const Error&) {
        }
    }
}

}  // namespace testing_util

#endif
