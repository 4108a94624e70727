#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "mvent/error.hpp"

using namespace mvent;
using namespace testing_util;

TEST_CASE("map_at follows the prefix and cycle") {
    auto f = MultiMap::identity(2), g = MultiMap::full(2);
    auto h = relation({{1}, {0}}), k = relation({{0}, {0}});
    MapSequence s1({f}, {g});
    CHECK(map_at(s1, 0) == f);
    CHECK(map_at(s1, 7) == g);
    MapSequence s2({}, {g});
    CHECK(map_at(s2, 0) == g);
    CHECK(map_at(s2, 12) == g);
    MapSequence s3({f, g}, {h, k});
    CHECK(map_at(s3, 5) == k);
    CHECK(map_at(s3, 4) == h);
}

TEST_CASE("map validation") {
    CHECK_THROWS_AS(MultiMap(2, {ps({0}), PointSet()}), Error);
    CHECK_THROWS_AS(relation({{0}, {2}}), Error);
    CHECK_THROWS_AS(MapSequence({}, {}), Error);
    CHECK_THROWS_AS(MapSequence({MultiMap::full(3)}, {MultiMap::full(2)}), Error);
}

TEST_CASE("composed images") {
    auto full = MapSequence::autonomous(MultiMap::full(2));
    CHECK(composed_image(full, 0, 1) == ps({1}));
    CHECK(composed_image(full, 1, 0) == ps({0, 1}));
    CHECK(composed_image(full, 4, 0) == ps({0, 1}));
    auto swap = MapSequence::autonomous(relation({{1}, {0}}));
    CHECK(composed_image(swap, 2, 0) == ps({0}));
    CHECK(composed_image(swap, 3, 0) == ps({1}));
}

TEST_CASE("preimages") {
    auto f = relation({{1}, {1}});
    CHECK(large_preimage(f, ps({0, 1})) == ps({0, 1}));
    CHECK(large_preimage(f, ps({0})).empty());
    auto id = MultiMap::identity(2);
    CHECK(large_preimage(id, ps({0})) == ps({0}));
    auto phi = relation({{0, 1}, {1}});
    CHECK(small_preimage(phi, ps({1})) == ps({1}));
    CHECK(small_preimage(phi, ps({0, 1})) == ps({0, 1}));
    CHECK(large_preimage(phi, ps({1})) == ps({0, 1}));
}

TEST_CASE("preimage properties") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 1 + rng() % 6;
        bool single = t % 3 == 0;
        auto m = random_map(rng, n, single ? 0.0 : 0.4);
        auto b = random_subset(rng, n);
        auto small = small_preimage(m, b), large = large_preimage(m, b);
        CHECK(is_subset(small, large));
        if (m.is_single_valued()) CHECK(small == large);
    }
}

TEST_CASE("orbit enumeration") {
    auto full = MapSequence::autonomous(MultiMap::full(2));
    CHECK(enumerate_orbits(full, 1).count() == 2);
    CHECK(enumerate_orbits(full, 3).count() == 8);
    auto o = enumerate_orbits(full, 3, Index{1});
    CHECK(o.count() == 4);
    for (std::size_t i = 0; i < o.count(); ++i) CHECK(o.orbit(i)[0] == 1);
    auto f = MapSequence::autonomous(relation({{1}, {2}, {0}}));
    for (std::size_t n = 1; n <= 6; ++n) CHECK(enumerate_orbits(f, n).count() == 3);
    try {
        enumerate_orbits(full, 10, std::nullopt, 100);
        FAIL("cap not enforced");
    } catch (const OrbitCapError& e) {
        CHECK(e.code() == ErrorCode::kOrbitCapExceeded);
        CHECK(e.partial_count() == 100);
    }
}

TEST_CASE("orbits are lexicographic and valid") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 5;
        auto seq = random_sequence(rng, n, 0.4);
        std::size_t h = 1 + rng() % 4;
        auto o = enumerate_orbits(seq, h);
        CHECK(o.count() == count_orbits(seq, h));
        std::vector<std::vector<Index>> tuples;
        for (std::size_t i = 0; i < o.count(); ++i) {
            auto orb = o.orbit(i);
            for (std::size_t k = 0; k + 1 < h; ++k) CHECK(seq.at(k).image(orb[k]).contains(orb[k + 1]));
            tuples.emplace_back(orb.begin(), orb.end());
        }
        CHECK(std::is_sorted(tuples.begin(), tuples.end()));
        CHECK(std::adjacent_find(tuples.begin(), tuples.end()) == tuples.end());
    }
}

// Orbit count of an autonomous relation equals the entry sum of M^(n-1).
TEST_CASE("orbit counts match the matrix-power oracle") {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + rng() % 6;
        auto m = random_map(rng, n, 0.5);
        std::vector<std::vector<std::uint64_t>> power(n, std::vector<std::uint64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) power[i][i] = 1;
        auto seq = MapSequence::autonomous(m);
        for (std::size_t h = 1; h <= 8; ++h) {
            std::uint64_t sum = 0;
            for (auto& row : power)
                for (auto v : row) sum += v;
            CHECK(count_orbits(seq, h) == sum);
            std::vector<std::vector<std::uint64_t>> next(n, std::vector<std::uint64_t>(n, 0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    if (power[i][k])
                        for (auto j : m.image(static_cast<Index>(k))) next[i][j] += power[i][k];
            power = next;
        }
    }
}

TEST_CASE("composed image equals last coordinates of orbits") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 5;
        auto seq = random_sequence(rng, n, 0.35);
        for (std::size_t k = 0; k <= 4; ++k)
            for (Index x = 0; x < n; ++x) {
                auto o = enumerate_orbits(seq, k + 1, x);
                std::vector<Index> last;
                for (std::size_t i = 0; i < o.count(); ++i) last.push_back(o.orbit(i)[k]);
                CHECK(composed_image(seq, k, x) == ps(last));
            }
    }
}

TEST_CASE("cover F-sets") {
    auto full = MapSequence::autonomous(MultiMap::full(2));
    CHECK(cover_f_set(full, {ps({1})}) == ps({1}));
    CHECK(cover_f_set(full, {ps({0, 1}), ps({0, 1}), ps({0, 1})}) == ps({0, 1}));
    auto swap = MapSequence::autonomous(relation({{1}, {0}}));
    CHECK(cover_f_set(swap, {ps({0}), ps({0})}).empty());
}

TEST_CASE("F-set recursion equals brute-force orbit filtering") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        std::size_t n = 1 + rng() % 5;
        auto seq = random_sequence(rng, n, 0.4);
        std::size_t h = 1 + rng() % 4;
        std::vector<PointSet> blocks;
        for (std::size_t i = 0; i < h; ++i) blocks.push_back(random_subset(rng, n));
        auto o = enumerate_orbits(seq, h);
        std::vector<Index> firsts;
        for (std::size_t i = 0; i < o.count(); ++i) {
            auto orb = o.orbit(i);
            bool inside = true;
            for (std::size_t k = 0; k < h; ++k) inside = inside && blocks[k].contains(orb[k]);
            if (inside) firsts.push_back(orb[0]);
        }
        CHECK(cover_f_set(seq, blocks) == ps(firsts));
    }
}

TEST_CASE("cover classes") {
    auto id = MapSequence::autonomous(MultiMap::identity(2));
    auto singles = Cover::singletons(2);
    CHECK(cover_An_class(id, singles, 2, 0) == ps({0}));
    auto whole = Cover::whole(3);
    auto seq = MapSequence::autonomous(relation({{1}, {2}, {0, 1}}));
    for (std::size_t n = 1; n <= 4; ++n)
        for (Index x = 0; x < 3; ++x) CHECK(cover_An_class(seq, whole, n, x) == ps({0, 1, 2}));
    Cover c(3, {ps({0, 1}), ps({1, 2})});
    CHECK(cover_An_class(seq, c, 1, 0) == ps({0, 1}));
    CHECK(cover_An_class(seq, c, 1, 1) == ps({0, 1, 2}));
    CHECK_THROWS_AS(Cover(3, {ps({0, 1})}), Error);
    CHECK_THROWS_AS(cover_An_class(MapSequence::autonomous(MultiMap::full(3)), Cover::singletons(3), 8, 0, 100),
                    Error);
}

// Pair-state reachability oracle: y is in the class of x when some orbit pair
// from (x, y) shares a block at every step.
TEST_CASE("cover classes match the product-graph oracle and cover X") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 5;
        auto seq = random_sequence(rng, n, 0.4);
        std::vector<PointSet> blocks;
        std::vector<Index> all;
        for (Index i = 0; i < n; ++i) all.push_back(i);
        for (std::size_t b = 0; b < 1 + rng() % 4; ++b) blocks.push_back(random_subset(rng, n));
        blocks.push_back(random_subset(rng, n));
        // Make sure every point is covered.
        for (Index i = 0; i < n; ++i) blocks[rng() % blocks.size()] = set_union(blocks[rng() % blocks.size()], ps({i}));
        std::vector<PointSet> fixed;
        for (auto& b : blocks) fixed.push_back(b);
        Bitset seen(n);
        for (auto& b : fixed)
            for (auto i : b) seen.set(i);
        if (seen.count() != n) fixed.push_back(ps(all));
        Cover cover(n, fixed);
        auto same = [&](Index a, Index b) {
            for (const auto& blk : cover.blocks())
                if (blk.contains(a) && blk.contains(b)) return true;
            return false;
        };
        std::size_t h = 1 + rng() % 4;
        Bitset covered(n);
        for (Index x = 0; x < n; ++x) {
            std::vector<Index> expect;
            for (Index y = 0; y < n; ++y) {
                std::set<std::pair<Index, Index>> layer;
                if (same(x, y)) layer.insert({x, y});
                for (std::size_t k = 0; k + 1 < h && !layer.empty(); ++k) {
                    std::set<std::pair<Index, Index>> next;
                    for (auto [u, v] : layer)
                        for (auto u2 : seq.at(k).image(u))
                            for (auto v2 : seq.at(k).image(v))
                                if (same(u2, v2)) next.insert({u2, v2});
                    layer = next;
                }
                if (!layer.empty()) expect.push_back(y);
            }
            auto cls = cover_An_class(seq, cover, h, x);
            CHECK(cls == ps(expect));
            CHECK(cls.contains(x));
            for (auto i : cls) covered.set(i);
        }
        CHECK(covered.count() == n);
    }
}

TEST_CASE("ball cover") {
    auto line = unit_line(5);
    auto c = ball_cover(line, 0, 1.0);
    CHECK(c.size() == 2);
    CHECK(c.block(0) == ps({0, 1, 2}));
    CHECK(ball_cover(line, 0, 10.0).size() == 1);
    CHECK(ball_cover(discrete(4), 0, 0.5).size() == 4);
}
