#include "mvent/examples.hpp"

#include <cmath>

#include "mvent/error.hpp"
#include "mvent/interval_map.hpp"

namespace mvent {

namespace {

const double kLog2 = std::log(2.0);

Target near(Kind k, double value, double tol, std::string text) {
    return {k, Target::Relation::kNear, value, tol, std::move(text)};
}
Target at_most(Kind k, double value, std::string text) {
    return {k, Target::Relation::kAtMost, value, 0, std::move(text)};
}
Target at_least(Kind k, double value, double factor, std::string text) {
    return {k, Target::Relation::kAtLeast, value, factor, std::move(text)};
}
Target report(Kind k, double value, std::string text) {
    return {k, Target::Relation::kReport, value, 0, std::move(text)};
}

FiniteMetricSpace discrete2() {
    return FiniteMetricSpace({"a", "b"}, {Matrix::from_rows({{0, 1}, {1, 0}})});
}

MultiMap relation2(std::vector<std::vector<Index>> images) {
    std::vector<PointSet> sets;
    for (auto& img : images) sets.push_back(PointSet::from_indices(std::move(img)));
    return MultiMap(2, std::move(sets));
}

MapSequence grid_seq(const IntervalMultiMap& m, std::size_t n) { return MapSequence::autonomous(discretize(m, n)); }

ExamplePart part(std::string label, FiniteMetricSpace space, MapSequence seq, std::optional<MapSequence> selection,
                 std::vector<Kind> kinds, std::vector<Target> targets) {
    return {std::move(label), std::move(space),  std::move(seq), std::move(selection),
            std::move(kinds), std::move(targets), 0,             std::nullopt, {}};
}

MapSequence phi0_selection(std::size_t n) {
    return MapSequence::autonomous(discretize_pointwise(builtin("phi0"), n));
}

}  // namespace

bool Target::holds(double estimate) const {
    switch (relation) {
        case Relation::kNear:
            return value == 0 ? std::abs(estimate) <= tolerance : std::abs(estimate - value) <= tolerance * value;
        case Relation::kAtMost: return estimate <= value;
        case Relation::kAtLeast: return estimate >= tolerance * value;
        case Relation::kReport: return true;
    }
    return true;
}

const std::vector<std::string>& example_names() {
    static const std::vector<std::string> names{"ex61", "ex62", "ex62_nonauto", "ex64", "shift2", "golden"};
    return names;
}

Example build_example(const std::string& name, std::size_t grid, std::size_t jbar) {
    if (name == "shift2") {
        Example ex{name, "full shift on two symbols", {}};
        ex.parts.push_back(part("full relation on {a,b}", discrete2(), MapSequence::autonomous(MultiMap::full(2)),
                            std::nullopt, {Kind::kKtSep, Kind::kKtSpan},
                            {near(Kind::kKtSep, kLog2, 1e-9 / kLog2, "h_KT = log 2")}));
        return ex;
    }
    if (name == "golden") {
        Example ex{name, "golden mean shift", {}};
        double target = std::log((1 + std::sqrt(5.0)) / 2);
        ex.parts.push_back(part("a -> {a,b}, b -> {a}", discrete2(), MapSequence::autonomous(relation2({{0, 1}, {0}})),
                            std::nullopt, {Kind::kKtSep, Kind::kKtSpan},
                            {near(Kind::kKtSep, target, 0.02, "h_KT = log((1+sqrt 5)/2)")}));
        return ex;
    }
    if (name == "ex61") {
        Example ex{name, "tent map united with f01 on a grid of " + std::to_string(grid) + " cells", {}};
        auto space = grid_space(grid);
        auto seq = grid_seq(map_union(builtin("tent_f"), builtin("f01")), grid);
        auto sel = MapSequence::autonomous(discretize_pointwise(builtin("tent_f"), grid));
        ex.parts.push_back(part("tent_f | f01", std::move(space), std::move(seq), std::move(sel),
                            {Kind::kCmSep, Kind::kCmSpan, Kind::kRhoSep, Kind::kRhoSpan, Kind::kHSep, Kind::kBranch},
                            {near(Kind::kHSep, kLog2, 0.10, "h_H = log 2"),
                             near(Kind::kBranch, kLog2, 0.10, "h_i = log 2"),
                             at_most(Kind::kCmSep, 0.05, "h_CM^sep = 0"),
                             report(Kind::kCmSpan, 0, "h_CM^spa = 0"), report(Kind::kRhoSep, 0, "h_rho^sep = 0"),
                             report(Kind::kRhoSpan, 0, "h_rho^spa = 0")}));
        ex.parts.back().prop61_horizon = 1;
        ex.parts.back().prop61_expected = {"0", "1"};
        ex.parts.back().restriction =
            MapSequence::autonomous(discretize_pointwise(map_union(builtin("tent_f"), builtin("f01")), grid));
        return ex;
    }
    if (name == "ex62") {
        Example ex{name, "doubling map and its multivalued extensions on a grid of " + std::to_string(grid) + " cells",
                   {}};
        ex.parts.push_back(part("phi0", grid_space(grid), grid_seq(builtin("phi0"), grid), phi0_selection(grid),
                            {Kind::kKtSep}, {near(Kind::kKtSep, kLog2, 0.10, "h(phi0) = log 2")}));
        ex.parts.push_back(part("phi_half | {0}", grid_space(grid), grid_seq(with_zero(builtin("phi_half")), grid),
                            phi0_selection(grid), {Kind::kCmSep, Kind::kCmSpan, Kind::kHSep},
                            {at_most(Kind::kCmSep, 0.05, "h_CM^sep(phi_half | {0}) = 0"),
                             at_least(Kind::kHSep, kLog2, 0.9, "h_H(phi_half | {0}) = log 2"),
                             report(Kind::kCmSpan, 0, "h_CM^spa(phi_half | {0}) = 0")}));
        return ex;
    }
    if (name == "ex62_nonauto" || name == "ex64") {
        Example ex{name, "", {}};
        std::vector<MultiMap> prefix(jbar + 1, discretize(builtin("phi1"), grid));
        MapSequence psi(prefix, {discretize(with_zero(builtin("phi_half")), grid)});
        if (name == "ex62_nonauto") {
            ex.title = "phi1 for j <= " + std::to_string(jbar) + ", then phi_half | {0}, on a grid of " +
                       std::to_string(grid) + " cells";
            ex.parts.push_back(part("psi", grid_space(grid), std::move(psi), phi0_selection(grid),
                                {Kind::kCmSep, Kind::kCmSpan, Kind::kHSep, Kind::kKtSep},
                                {near(Kind::kHSep, kLog2, 0.10, "h_H(psi) = log 2"),
                                 at_most(Kind::kCmSep, 0.05, "h_CM^sep(psi) = 0"),
                                 report(Kind::kCmSpan, 0, "h_CM^spa(psi) = 0"),
                                 report(Kind::kKtSep, kLog2, "h_KT(psi) >= log 2")}));
            return ex;
        }
        ex.title = "Borsuk and Hausdorff entropies agree on finite spaces, grid of " + std::to_string(grid) + " cells";
        ex.parts.push_back(part("psi", grid_space(grid), std::move(psi), phi0_selection(grid),
                            {Kind::kCmSep, Kind::kHSep, Kind::kBHaus},
                            {near(Kind::kBHaus, kLog2, 0.10, "h_B(psi) = h_H(psi) = log 2"),
                             at_most(Kind::kCmSep, 0.05, "h_CM^sep(psi) = 0")}));
        ex.parts.push_back(part("phi_half | {0}", grid_space(grid), grid_seq(with_zero(builtin("phi_half")), grid),
                            phi0_selection(grid), {Kind::kCmSep, Kind::kHSep, Kind::kBHaus},
                            {near(Kind::kBHaus, kLog2, 0.10, "h_B(phi_half | {0}) = log 2"),
                             at_most(Kind::kCmSep, 0.05, "h_CM^sep(phi_half | {0}) = 0")}));
        ex.parts.push_back(part("phi1", grid_space(grid), grid_seq(builtin("phi1"), grid), phi0_selection(grid),
                            {Kind::kKtSep}, {report(Kind::kKtSep, std::log(3.0), "h_KT(phi1) >= log 3")}));
        return ex;
    }
    throw Error(ErrorCode::kUnknownName, "unknown example '" + name + "'");
}

}  // namespace mvent
