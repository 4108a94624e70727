#include "doctest.h"
#include "helpers.hpp"
#include "mvent/error.hpp"

using namespace mvent;
using namespace testing_util;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("new_space validation") {
    CHECK_NOTHROW(new_space({"a", "b"}, {Matrix::from_rows({{0, 1}, {1, 0}})}));
    CHECK(code_of([] { new_space({"a", "b"}, {Matrix::from_rows({{0, 1}, {2, 0}})}); }) ==
          ErrorCode::kSymmetryViolation);
    CHECK(code_of([] {
              new_space({"0", "1", "2"}, {Matrix::from_rows({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}})});
          }) == ErrorCode::kTriangleViolation);
    CHECK(code_of([] { new_space({}, {Matrix(0)}); }) == ErrorCode::kEmptySpace);
    CHECK(code_of([] { new_space({"a", "b"}, {}); }) == ErrorCode::kEmptySpace);
    CHECK(code_of([] { new_space({"a", "b"}, {Matrix::from_rows({{0, 0}, {0, 0}})}); }) ==
          ErrorCode::kNotSeparating);
    CHECK(code_of([] { new_space({"a", "b"}, {Matrix::from_rows({{1, 1}, {1, 0}})}); }) ==
          ErrorCode::kNonzeroDiagonal);
    CHECK(code_of([] { new_space({"a", "b", "c"}, {Matrix::from_rows({{0, 1}, {1, 0}})}); }) ==
          ErrorCode::kShapeMismatch);
    // Two pseudometrics that only separate jointly.
    Matrix p0 = Matrix::from_rows({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
    Matrix p1 = Matrix::from_rows({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
    CHECK_NOTHROW(new_space({"a", "b", "c"}, {p0, p1}));
    CHECK(code_of([&] { new_space({"a", "b", "c"}, {p0}); }) == ErrorCode::kNotSeparating);
}

TEST_CASE("error message names the failing entry") {
    try {
        new_space({"a", "b"}, {Matrix::from_rows({{0, 1}, {2, 0}})});
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
    }
}

TEST_CASE("set distances on small examples") {
    auto d2 = discrete(2);
    auto line = unit_line(3);
    CHECK(set_rho(d2, 0, ps({0}), ps({1})) == 1.0);
    CHECK(set_rho(line, 0, ps({0}), ps({2})) == 2.0);
    CHECK(set_rho(line, 0, ps({0, 1}), ps({1, 2})) == 0.0);
    CHECK(set_hausdorff(line, 0, ps({0}), ps({0, 2})) == 2.0);
    CHECK(set_hausdorff(line, 0, ps({0, 2}), ps({0, 2})) == 0.0);
    CHECK(set_hausdorff(line, 0, ps({0}), ps({2})) == 2.0);
    CHECK(code_of([&] { set_rho(line, 0, PointSet(), ps({1})); }) == ErrorCode::kEmptySet);
    CHECK(code_of([&] { set_hausdorff(line, 0, ps({1}), PointSet()); }) == ErrorCode::kEmptySet);
}

TEST_CASE("line fast path matches the direct formulas") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t n = 1 + rng() % 40;
        std::vector<double> coord(n);
        double c = 0;
        for (auto& v : coord) {
            c += static_cast<double>(rng() % 4);  // repeated coordinates allowed
            v = c;
        }
        // Separation needs distinct coordinates.
        for (std::size_t i = 0; i < n; ++i) coord[i] += static_cast<double>(i);
        auto space = FiniteMetricSpace::line(labels(n), coord, 3.0);
        REQUIRE(space.line_embedding(0) != nullptr);
        auto a = random_subset(rng, n), b = random_subset(rng, n);
        CHECK(set_hausdorff(space, 0, a, b) == set_hausdorff_direct(space, 0, a, b));
        CHECK(set_rho(space, 0, a, b) == set_rho_direct(space, 0, a, b));
    }
}

TEST_CASE("set distance properties on random spaces") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng() % 5;
        auto space = random_space(rng, n);
        std::vector<PointSet> sets;
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            std::vector<Index> v;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) v.push_back(static_cast<Index>(i));
            sets.push_back(ps(v));
        }
        for (const auto& a : sets)
            for (const auto& b : sets) {
                double h = set_hausdorff(space, 0, a, b);
                CHECK(set_rho(space, 0, a, b) <= h);
                CHECK(h == set_hausdorff(space, 0, b, a));
                CHECK(set_rho(space, 0, a, b) == set_rho(space, 0, b, a));
                if (h == 0.0) CHECK(a == b);
                for (const auto& c : sets) CHECK(set_hausdorff(space, 0, a, c) <= h + set_hausdorff(space, 0, b, c) + 1e-12);
            }
    }
}
