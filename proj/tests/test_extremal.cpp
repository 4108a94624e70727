#include <bit>

#include "doctest.h"
#include "helpers.hpp"
#include "mvent/error.hpp"
#include "mvent/extremal.hpp"

using namespace mvent;
using namespace testing_util;

namespace {

DistanceTable line_table(std::size_t n) { return DistanceTable(unit_line(n).metric(0)); }

DistanceTable random_table(std::mt19937_64& rng, std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = static_cast<double>(1 + rng() % 6) / 4.0;
    return DistanceTable(m);
}

std::size_t brute_separated(const DistanceTable& t, double eps) {
    std::size_t n = t.size(), best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = i + 1; j < n && ok; ++j)
                if ((mask >> i & 1) && (mask >> j & 1) && !(t(i, j) > eps)) ok = false;
        if (ok) best = std::max<std::size_t>(best, std::popcount(mask));
    }
    return best;
}

std::size_t brute_spanning(const DistanceTable& t, double eps) {
    std::size_t n = t.size(), best = n;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t u = 0; u < n && ok; ++u) {
            bool hit = false;
            for (std::size_t c = 0; c < n; ++c)
                if ((mask >> c & 1) && t(u, c) <= eps) hit = true;
            ok = hit;
        }
        if (ok) best = std::min<std::size_t>(best, std::popcount(mask));
    }
    return best;
}

std::size_t brute_cover(std::size_t universe, const std::vector<std::vector<std::uint32_t>>& sets) {
    std::size_t best = sets.size() + 1;
    for (std::uint32_t mask = 0; mask < (1u << sets.size()); ++mask) {
        std::vector<char> hit(universe, 0);
        for (std::size_t s = 0; s < sets.size(); ++s)
            if (mask >> s & 1)
                for (auto i : sets[s]) hit[i] = 1;
        if (std::all_of(hit.begin(), hit.end(), [](char c) { return c; }))
            best = std::min<std::size_t>(best, std::popcount(mask));
    }
    return best;
}

void check_separated_witness(const DistanceTable& t, double eps, const SolveResult& r) {
    CHECK(r.witness.size() == r.cardinality);
    for (auto i : r.witness)
        for (auto j : r.witness)
            if (i != j) CHECK(t(i, j) > eps);
}

void check_spanning_witness(const DistanceTable& t, double eps, const SolveResult& r) {
    CHECK(r.witness.size() == r.cardinality);
    for (std::size_t u = 0; u < t.size(); ++u) {
        bool hit = false;
        for (auto c : r.witness) hit = hit || t(u, c) <= eps;
        CHECK(hit);
    }
}

}  // namespace

TEST_CASE("separated set examples") {
    auto d = DistanceTable(discrete(5).metric(0));
    auto r = max_separated(d, 0.5, SolveMode::kExact);
    CHECK(r.cardinality == 5);
    CHECK(r.bound == Bound::kExact);
    CHECK(max_separated(d, 1.0, SolveMode::kExact).cardinality == 1);
    auto line = line_table(4);
    auto s = max_separated(line, 1.0, SolveMode::kExact);
    CHECK(s.cardinality == 2);
    check_separated_witness(line, 1.0, s);
    CHECK(max_separated(line, 0.999, SolveMode::kExact).cardinality == 4);
    CHECK(max_separated(line, 3.0, SolveMode::kExact).cardinality == 1);
    CHECK(max_separated(line, 1.0, SolveMode::kGreedy).bound == Bound::kLowerBound);
    CHECK_THROWS_AS(max_separated(line, 0.0, SolveMode::kExact), Error);
}

TEST_CASE("spanning set examples") {
    auto d = DistanceTable(discrete(5).metric(0));
    CHECK(min_spanning(d, 0.5, SolveMode::kExact).cardinality == 5);
    CHECK(min_spanning(d, 1.0, SolveMode::kExact).cardinality == 1);
    auto line = line_table(4);
    auto s = min_spanning(line, 1.0, SolveMode::kExact);
    CHECK(s.cardinality == 2);
    check_spanning_witness(line, 1.0, s);
    CHECK(min_spanning(line, 1.0, SolveMode::kGreedy).bound == Bound::kUpperBound);
    // Restricted candidates that cannot reach the far end.
    CHECK_THROWS_AS(min_spanning(line, 1.0, SolveMode::kExact, 64, {0, 1, 2, 3}, {0}), Error);
    auto sub = min_spanning(line, 1.0, SolveMode::kExact, 64, {0, 3}, {1, 2});
    CHECK(sub.cardinality == 2);
}

TEST_CASE("subcover examples") {
    auto u = ps({1, 2, 3});
    CHECK(min_subcover({ps({1, 2, 3})}, u, SolveMode::kExact).cardinality == 1);
    CHECK(min_subcover({ps({1, 2}), ps({2, 3}), ps({1, 3})}, u, SolveMode::kExact).cardinality == 2);
    CHECK(min_subcover({ps({1}), ps({2}), ps({3})}, u, SolveMode::kExact).cardinality == 3);
    CHECK_THROWS_AS(min_subcover({ps({1}), ps({2})}, u, SolveMode::kExact), Error);
}

TEST_CASE("exact solvers equal subset enumeration on at most 12 items") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = 1 + rng() % 12;
        auto t = random_table(rng, n);
        for (double eps : {0.25, 0.5, 0.75, 1.0, 1.25}) {
            auto sep = max_separated(t, eps, SolveMode::kExact);
            auto span = min_spanning(t, eps, SolveMode::kExact);
            CHECK(sep.cardinality == brute_separated(t, eps));
            CHECK(span.cardinality == brute_spanning(t, eps));
            check_separated_witness(t, eps, sep);
            check_spanning_witness(t, eps, span);
            CHECK(span.cardinality <= sep.cardinality);
            auto gsep = max_separated(t, eps, SolveMode::kGreedy);
            auto gspan = min_spanning(t, eps, SolveMode::kGreedy);
            CHECK(gsep.cardinality <= sep.cardinality);
            CHECK(gspan.cardinality >= span.cardinality);
            check_separated_witness(t, eps, gsep);
            check_spanning_witness(t, eps, gspan);
        }
        std::size_t universe = 1 + rng() % 8, count = 1 + rng() % 10;
        std::vector<std::vector<std::uint32_t>> sets(count);
        for (auto& s : sets)
            for (std::uint32_t i = 0; i < universe; ++i)
                if (rng() % 3 == 0) s.push_back(i);
        for (std::uint32_t i = 0; i < universe; ++i) sets[rng() % count].push_back(i);
        for (auto& s : sets) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        auto exact = min_set_cover(universe, sets, SolveMode::kExact);
        CHECK(exact.cardinality == brute_cover(universe, sets));
        CHECK(min_set_cover(universe, sets, SolveMode::kGreedy).cardinality >= exact.cardinality);
    }
}

TEST_CASE("solvers are monotone in eps") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 60; ++trial) {
        auto t = random_table(rng, 1 + rng() % 10);
        std::size_t last_sep = 1u << 30, last_span = 1u << 30;
        for (double eps = 0.2; eps < 1.7; eps += 0.1) {
            auto s = max_separated(t, eps, SolveMode::kExact).cardinality;
            auto r = min_spanning(t, eps, SolveMode::kExact).cardinality;
            CHECK(s <= last_sep);
            CHECK(r <= last_span);
            last_sep = s;
            last_span = r;
        }
    }
}

TEST_CASE("budgets and auto mode") {
    auto line = line_table(80);
    CHECK_THROWS_AS(max_separated(line, 1.0, SolveMode::kExact), Error);
    auto a = max_separated(line, 1.0, SolveMode::kAuto);
    CHECK(a.bound == Bound::kLowerBound);
    CHECK(a.cardinality == 40);
    auto b = min_spanning(line, 1.0, SolveMode::kAuto);
    CHECK(b.bound == Bound::kUpperBound);
    check_spanning_witness(line, 1.0, b);
    // Many small components stay exact.
    Matrix m(100, 5.0);
    for (std::size_t i = 0; i < 100; ++i) m(i, i) = 0;
    for (std::size_t i = 0; i + 1 < 100; i += 2) m(i, i + 1) = m(i + 1, i) = 1.0;
    auto c = max_separated(DistanceTable(m), 2.0, SolveMode::kExact);
    CHECK(c.cardinality == 50);
    CHECK(c.bound == Bound::kExact);
}

TEST_CASE("table validation") {
    CHECK_THROWS_AS(DistanceTable(Matrix::from_rows({{0, 1}, {2, 0}})), Error);
    CHECK_THROWS_AS(DistanceTable(Matrix::from_rows({{1, 1}, {1, 0}})), Error);
}
