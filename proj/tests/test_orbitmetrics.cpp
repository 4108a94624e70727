#include "doctest.h"
#include "helpers.hpp"
#include "mvent/error.hpp"
#include "mvent/orbitmetrics.hpp"

using namespace mvent;
using namespace testing_util;

namespace {

double brute_cm(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t n, Index x, Index y) {
    auto ox = enumerate_orbits(seq, n, x), oy = enumerate_orbits(seq, n, y);
    double best = 1e300;
    for (std::size_t i = 0; i < ox.count(); ++i)
        for (std::size_t j = 0; j < oy.count(); ++j) best = std::min(best, pn(space, 0, ox.orbit(i), oy.orbit(j)));
    return best;
}

}  // namespace

TEST_CASE("pn") {
    auto line = unit_line(3);
    std::vector<Index> a{0, 1}, b{2, 1}, c{0};
    CHECK(pn(line, 0, a, a) == 0.0);
    CHECK(pn(line, 0, a, b) == 2.0);
    CHECK(pn(line, 0, std::span<const Index>(a).first(1), std::span<const Index>(b).first(1)) == 2.0);
    CHECK_THROWS_AS(pn(line, 0, a, c), Error);
}

TEST_CASE("orbit pseudometric examples") {
    auto d2 = discrete(2);
    auto full = MapSequence::autonomous(MultiMap::full(2));
    for (std::size_t n = 1; n <= 5; ++n) {
        CHECK(pn_cm(d2, full, 0, n, 0, 1) == 1.0);
        CHECK(pn_cm(d2, full, 0, n, 1, 1) == 0.0);
    }
    auto phi = MapSequence::autonomous(relation({{0}, {0, 1}}));
    CHECK(p_rho_at(d2, phi, 0, 0, 0, 1) == 1.0);
    CHECK(p_rho_at(d2, phi, 0, 1, 0, 1) == 0.0);
    CHECK(p_haus_at(d2, phi, 0, 1, 0, 1) == 1.0);
    CHECK(p_haus_at(d2, phi, 0, 0, 0, 1) == 1.0);
    CHECK(pn_branch(d2, phi, 0, 2, 0, 1) == 1.0);
    CHECK(pn_branch(d2, phi, 0, 2, 1, 1) == 0.0);
    auto line = unit_line(4);
    auto f = MapSequence::autonomous(relation({{1}, {3}, {0}, {2}}));
    CHECK(p_haus_at(line, f, 0, 2, 0, 1) == 1.0);  // f^2(0)=3, f^2(1)=2
    std::vector<Index> o0{0, 1, 3}, o1{1, 3, 2};
    CHECK(pn_branch(line, f, 0, 3, 0, 1) == pn(line, 0, o0, o1));
    CHECK(pn_cm(line, f, 0, 3, 0, 1) == pn(line, 0, o0, o1));
}

TEST_CASE("bottleneck recursion equals brute-force orbit pairs") {
    std::mt19937_64 rng(23);
    for (int seed = 0; seed < 60; ++seed) {
        std::size_t n = 1 + rng() % 5;
        auto space = random_space(rng, n);
        auto seq = random_sequence(rng, n, 0.4);
        for (std::size_t h = 1; h <= 4; ++h) {
            Matrix table = cm_matrix(space, seq, 0, h);
            for (Index x = 0; x < n; ++x)
                for (Index y = 0; y < n; ++y) {
                    double dp = pn_cm(space, seq, 0, h, x, y);
                    CHECK(dp == brute_cm(space, seq, h, x, y));
                    CHECK(table(x, y) == dp);
                }
        }
    }
}

TEST_CASE("incremental tables match direct evaluation") {
    std::mt19937_64 rng(29);
    for (int seed = 0; seed < 60; ++seed) {
        std::size_t n = 1 + rng() % 6;
        auto space = random_space(rng, n);
        auto seq = seed % 2 ? MapSequence::autonomous(random_map(rng, n, 0.4)) : random_sequence(rng, n, 0.4);
        CmTables cm(space, seq, 0);
        LayerTables rho(space, seq, 0, LayerTables::Kind::kRho);
        LayerTables haus(space, seq, 0, LayerTables::Kind::kHausdorff);
        for (std::size_t h = 1; h <= 5; ++h) {
            CHECK(cm.horizon() == h);
            CHECK(cm.table() == cm_matrix(space, seq, 0, h));
            for (Index x = 0; x < n; ++x)
                for (Index y = 0; y < n; ++y) {
                    double r = 0, hd = 0;
                    for (std::size_t k = 0; k < h; ++k) {
                        r = std::max(r, p_rho_at(space, seq, 0, k, x, y));
                        hd = std::max(hd, p_haus_at(space, seq, 0, k, x, y));
                    }
                    CHECK(rho.table()(x, y) == r);
                    CHECK(haus.table()(x, y) == hd);
                }
            cm.extend();
            rho.extend();
            haus.extend();
        }
    }
}

TEST_CASE("line spaces take the same values through the layer tables") {
    std::mt19937_64 rng(31);
    for (int seed = 0; seed < 30; ++seed) {
        std::size_t n = 2 + rng() % 12;
        std::vector<double> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<double>(i);
        auto line = FiniteMetricSpace::line(labels(n), c, static_cast<double>(n - 1));
        auto seq = random_sequence(rng, n, 0.25);
        LayerTables haus(line, seq, 0, LayerTables::Kind::kHausdorff);
        LayerTables rho(line, seq, 0, LayerTables::Kind::kRho);
        for (std::size_t h = 1; h <= 4; ++h) {
            for (Index x = 0; x < n; ++x)
                for (Index y = 0; y < n; ++y) {
                    double r = 0, hd = 0;
                    for (std::size_t k = 0; k < h; ++k) {
                        auto a = composed_image(seq, k, x), b = composed_image(seq, k, y);
                        r = std::max(r, set_rho_direct(line, 0, a, b));
                        hd = std::max(hd, set_hausdorff_direct(line, 0, a, b));
                    }
                    CHECK(rho.table()(x, y) == r);
                    CHECK(haus.table()(x, y) == hd);
                }
            haus.extend();
            rho.extend();
        }
    }
}

TEST_CASE("pointwise inequalities and symmetry") {
    std::mt19937_64 rng(37);
    for (int seed = 0; seed < 60; ++seed) {
        std::size_t n = 1 + rng() % 5;
        auto space = random_space(rng, n);
        auto seq = random_sequence(rng, n, 0.4);
        for (std::size_t h = 1; h <= 4; ++h)
            for (Index x = 0; x < n; ++x)
                for (Index y = 0; y < n; ++y) {
                    double r = 0, hd = 0;
                    for (std::size_t k = 0; k < h; ++k) {
                        r = std::max(r, p_rho_at(space, seq, 0, k, x, y));
                        hd = std::max(hd, p_haus_at(space, seq, 0, k, x, y));
                    }
                    double cm = pn_cm(space, seq, 0, h, x, y), br = pn_branch(space, seq, 0, h, x, y);
                    CHECK(r <= cm);
                    CHECK(hd <= br);
                    CHECK(cm == pn_cm(space, seq, 0, h, y, x));
                    CHECK(br == pn_branch(space, seq, 0, h, y, x));
                    if (x == y) {
                        CHECK(cm == 0.0);
                        CHECK(br == 0.0);
                        CHECK(r == 0.0);
                        CHECK(hd == 0.0);
                    }
                }
    }
}

TEST_CASE("branch threshold search agrees with enumeration") {
    std::mt19937_64 rng(41);
    for (int seed = 0; seed < 80; ++seed) {
        std::size_t n = 1 + rng() % 6;
        auto space = random_space(rng, n);
        auto seq = random_sequence(rng, n, 0.4);
        std::vector<double> eps{0.05, 0.2, 0.4};
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < n; ++b) eps.push_back(space.distance(0, a, b));
        for (double e : eps) {
            if (e <= 0) continue;
            BranchThreshold bt(space, seq, 0, e);
            for (std::size_t h = 1; h <= 4; ++h)
                for (Index x = 0; x < n; ++x)
                    for (Index y = 0; y < n; ++y)
                        CHECK(bt.exceeds(h, x, y) == (pn_branch(space, seq, 0, h, x, y) > e));
        }
    }
}
