#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mvent/entropy.hpp"
#include "mvent/error.hpp"
#include "mvent/orbitmetrics.hpp"

using namespace mvent;
using namespace testing_util;

namespace {

CountOptions exact() {
    CountOptions o;
    o.mode = SolveMode::kExact;
    return o;
}

}  // namespace

TEST_CASE("KT counts on small relations") {
    auto d2 = discrete(2);
    auto full = MapSequence::autonomous(MultiMap::full(2));
    for (std::size_t n = 1; n <= 10; ++n) {
        auto r = count_kt(d2, full, 0, 0.5, n, true, exact());
        CHECK(r.cardinality == (std::size_t{1} << n));
        CHECK(r.bound == Bound::kExact);
        CHECK(count_kt(d2, full, 0, 0.5, n, false, exact()).cardinality == (std::size_t{1} << n));
    }
    auto constant = MapSequence::autonomous(relation({{0}, {0}}));
    for (std::size_t n = 1; n <= 6; ++n) CHECK(count_kt(d2, constant, 0, 0.5, n, true, exact()).cardinality == 2);
    auto line = unit_line(4);
    auto id = MapSequence::autonomous(MultiMap::identity(4));
    CHECK(count_kt(line, id, 0, 1.0, 1, true, exact()).cardinality ==
          max_separated(DistanceTable(line.metric(0)), 1.0, SolveMode::kExact).cardinality);
}

TEST_CASE("CM, rho, Hausdorff and branch examples") {
    auto d2 = discrete(2);
    auto full = MapSequence::autonomous(MultiMap::full(2));
    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(count_cm(d2, full, 0, 0.5, n, true, exact()).cardinality == 2);
        CHECK(count_rho(d2, full, 0, 0.5, n, true, exact()).cardinality == 2);
    }
    auto phi = MapSequence::autonomous(relation({{0}, {0, 1}}));
    CHECK(count_haus(d2, phi, 0, 0.5, 2, true, exact()).cardinality == 2);
    CHECK(count_branch(d2, phi, 0, 0.5, 2, true, exact()).cardinality == 2);
    CHECK(count_haus(d2, phi, 0, 0.5, 1, true, exact()).cardinality == 2);
    CHECK(count_cm(d2, phi, 0, 0.5, 1, true, exact()).cardinality ==
          count_kt(d2, phi, 0, 0.5, 1, true, exact()).cardinality);
}

TEST_CASE("cover counts") {
    auto d2 = discrete(2);
    auto id = MapSequence::autonomous(MultiMap::identity(2));
    CHECK(count_ucover(id, Cover::singletons(2), 2, exact()).cardinality == 2);
    CHECK(count_lcover(id, Cover::singletons(2), 2, exact()).cardinality == 2);
    auto full = MapSequence::autonomous(MultiMap::full(3));
    for (std::size_t n = 1; n <= 4; ++n) {
        CHECK(count_ucover(full, Cover::whole(3), n, exact()).cardinality == 1);
        CHECK(count_lcover(full, Cover::whole(3), n, exact()).cardinality == 1);
    }
    CHECK(count_lcover(full, Cover::singletons(3), 1, exact()).cardinality == 3);
    Cover c(3, {ps({0, 1}), ps({1, 2})});
    CHECK(count_ucover(full, c, 1, exact()).cardinality == 2);
}

TEST_CASE("fitted slope") {
    std::vector<std::uint64_t> geo{2, 4, 8, 16, 32, 64};
    CHECK(fitted_slope(geo, 3) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    std::vector<std::uint64_t> flat{3, 3, 3, 3};
    CHECK(fitted_slope(flat, 4) == 0.0);
    CHECK(default_window(10) == 5);
    CHECK(default_window(15) == 8);
}

TEST_CASE("estimates on shifts") {
    auto d2 = discrete(2);
    auto full = MapSequence::autonomous(MultiMap::full(2));
    auto est = estimate(d2, full, Kind::kKtSep, 0, 0.5, 12, 6, SolveMode::kExact);
    CHECK(est.bound == Bound::kExact);
    for (std::size_t n = 1; n <= 12; ++n) CHECK(std::abs(est.rates[n - 1] - std::log(2.0)) < 1e-9);
    CHECK(std::abs(est.fitted_rate - std::log(2.0)) < 1e-9);
    auto constant = MapSequence::autonomous(relation({{0}, {0}}));
    for (Kind k : all_kinds())
        CHECK(estimate(d2, constant, k, 0, 0.5, 6, 3, SolveMode::kExact).fitted_rate == doctest::Approx(0.0));
    auto golden = MapSequence::autonomous(relation({{0, 1}, {0}}));
    auto g = estimate(d2, golden, Kind::kKtSep, 0, 0.5, 15, 8, SolveMode::kExact);
    CHECK(std::abs(g.fitted_rate / std::log((1 + std::sqrt(5.0)) / 2) - 1) < 0.02);
    CHECK_THROWS_AS(estimate(d2, golden, Kind::kKtSep, 0, 0.5, 3, 5, SolveMode::kExact), Error);
}

TEST_CASE("profile headline and delegation") {
    auto d2 = discrete(2);
    auto phi = MapSequence::autonomous(relation({{0}, {0, 1}}));
    ProfileOptions opt;
    opt.n_max = 5;
    opt.count.mode = SolveMode::kExact;
    auto prof = profile(d2, phi, opt);
    CHECK(prof.eps_grid[0].size() == 8);
    CHECK(prof.eps_grid[0][0] == 0.5);
    for (Kind k : all_kinds()) CHECK(prof.headline.count(k) == 1);
    std::map<std::pair<std::size_t, double>, std::vector<std::uint64_t>> h, b;
    for (const auto& e : prof.estimates) {
        CHECK(e.counts.size() == 5);
        if (e.kind == Kind::kHSep) h[{e.p, e.eps}] = e.counts;
        if (e.kind == Kind::kBHaus) b[{e.p, e.eps}] = e.counts;
    }
    CHECK(h == b);
    CHECK(prof.headline[Kind::kBHaus] == prof.headline[Kind::kHSep]);
}

TEST_CASE("profile series match single-cell counts") {
    std::mt19937_64 rng(53);
    for (int seed = 0; seed < 15; ++seed) {
        std::size_t n = 2 + rng() % 4;
        auto space = random_space(rng, n);
        auto seq = random_sequence(rng, n, 0.4);
        ProfileOptions opt;
        opt.n_max = 4;
        opt.count.mode = SolveMode::kExact;
        opt.eps_grid = {0.1, 0.3};
        auto prof = profile(space, seq, opt);
        for (const auto& est : prof.estimates)
            for (std::size_t h = 1; h <= est.counts.size(); ++h)
                CHECK(est.counts[h - 1] == count_kind(space, seq, est.kind, est.p, est.eps, h, opt.count).cardinality);
    }
}

TEST_CASE("finite-n laws on random systems") {
    std::mt19937_64 rng(59);
    for (int seed = 0; seed < 40; ++seed) {
        std::size_t n = 1 + rng() % 5;
        auto space = random_space(rng, n);
        auto seq = random_sequence(rng, n, 0.4);
        for (double eps : {0.1, 0.25, 0.5})
            for (std::size_t h = 1; h <= 4; ++h) {
                auto o = exact();
                auto s_kt = count_kt(space, seq, 0, eps, h, true, o).cardinality;
                auto s_cm = count_cm(space, seq, 0, eps, h, true, o).cardinality;
                auto r_cm = count_cm(space, seq, 0, eps, h, false, o).cardinality;
                auto s_rho = count_rho(space, seq, 0, eps, h, true, o).cardinality;
                auto r_rho = count_rho(space, seq, 0, eps, h, false, o).cardinality;
                auto s_h = count_haus(space, seq, 0, eps, h, true, o).cardinality;
                auto s_b = count_branch(space, seq, 0, eps, h, true, o).cardinality;
                CHECK(s_cm <= s_kt);
                CHECK(r_cm <= s_cm);
                CHECK(s_rho <= s_cm);
                CHECK(r_rho <= r_cm);
                CHECK(r_rho <= s_rho);
                CHECK(s_h <= s_b);
                auto u = count_ucover(seq, ball_cover(space, 0, eps / 2), h, o).cardinality;
                auto l = count_lcover(seq, ball_cover(space, 0, eps / 2), h, o).cardinality;
                CHECK(s_cm <= u);
                CHECK(r_cm <= l);
            }
    }
}

TEST_CASE("branch threshold route agrees with enumeration on moderate systems") {
    std::mt19937_64 rng(61);
    for (int seed = 0; seed < 10; ++seed) {
        std::size_t n = 3 + rng() % 4;
        auto space = random_space(rng, n);
        auto seq = random_sequence(rng, n, 0.5);
        CountOptions small = exact();
        small.orbit_cap = 1;  // forces the threshold route
        for (double eps : {0.1, 0.3})
            for (std::size_t h = 1; h <= 5; ++h)
                CHECK(count_branch(space, seq, 0, eps, h, true, small).cardinality ==
                      count_branch(space, seq, 0, eps, h, true, exact()).cardinality);
    }
}

TEST_CASE("orbit cap handling in profiles") {
    auto d3 = discrete(3);
    auto full = MapSequence::autonomous(MultiMap::full(3));
    ProfileOptions opt;
    opt.kinds = {Kind::kKtSep, Kind::kKtSpan};
    opt.n_max = 6;
    opt.count.orbit_cap = 100;
    opt.count.mode = SolveMode::kExact;
    CHECK_THROWS_AS(profile(d3, full, opt), OrbitCapError);
    opt.count.mode = SolveMode::kAuto;
    auto prof = profile(d3, full, opt);
    for (const auto& e : prof.estimates) {
        if (e.kind == Kind::kKtSep) {
            CHECK(e.counts.size() == 6);
            CHECK(e.bound == Bound::kLowerBound);
        } else {
            CHECK(e.counts.size() == 4);  // 81 orbits at n = 4, 243 at n = 5
            CHECK(e.truncated);
        }
    }
    CHECK(!prof.skipped.empty());
}

TEST_CASE("single-valued sequences collapse all kinds") {
    std::mt19937_64 rng(67);
    for (int seed = 0; seed < 30; ++seed) {
        std::size_t n = 1 + rng() % 6;
        auto space = random_space(rng, n);
        auto seq = random_sequence(rng, n, 0.0);
        REQUIRE(seq.is_single_valued());
        for (double eps : {0.1, 0.3})
            for (std::size_t h = 1; h <= 4; ++h) {
                auto o = exact();
                auto kt = count_kt(space, seq, 0, eps, h, true, o).cardinality;
                CHECK(count_cm(space, seq, 0, eps, h, true, o).cardinality == kt);
                CHECK(count_rho(space, seq, 0, eps, h, true, o).cardinality == kt);
                CHECK(count_haus(space, seq, 0, eps, h, true, o).cardinality == kt);
                CHECK(count_branch(space, seq, 0, eps, h, true, o).cardinality == kt);
            }
    }
}

TEST_CASE("exceptional-set checker on small systems") {
    auto d2 = discrete(2);
    auto f = MapSequence::autonomous(relation({{1}, {0}}));
    CHECK(check_prop61(d2, f, f, 0, 3).exceptional.empty());
    auto phi = MapSequence::autonomous(relation({{0, 1}, {0, 1}}));
    auto sel = MapSequence::autonomous(relation({{0}, {1}}));
    auto res = check_prop61(d2, phi, sel, 0, 1);
    CHECK(res.exceptional.size() == 1);
    CHECK(res.minimum);
    auto bad = MapSequence::autonomous(relation({{1}, {0}}));
    CHECK_THROWS_AS(check_prop61(d2, sel, bad, 0, 1), Error);
}
