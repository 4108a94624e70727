#ifndef MVENT_EXAMPLES_HPP
#define MVENT_EXAMPLES_HPP

#include <optional>
#include <string>
#include <vector>

#include "mvent/dynamics.hpp"
#include "mvent/entropy.hpp"
#include "mvent/space.hpp"

namespace mvent {

struct Target {
    enum class Relation { kNear, kAtMost, kAtLeast, kReport };
    Kind kind{};
    Relation relation = Relation::kReport;
    double value = 0;
    // kNear: relative tolerance (absolute when value is 0); kAtLeast: factor.
    double tolerance = 0;
    std::string text;

    bool holds(double estimate) const;
};

struct ExamplePart {
    std::string label;
    FiniteMetricSpace space;
    MapSequence seq;
    std::optional<MapSequence> selection;
    std::vector<Kind> kinds;
    std::vector<Target> targets;
    // Horizon for the exceptional-set check; 0 skips it. The check
    // runs on `restriction`, the symbolic map evaluated exactly on the grid.
    std::size_t prop61_horizon = 0;
    std::optional<MapSequence> restriction;
    std::vector<std::string> prop61_expected;  // labels of the expected exceptional set
};

struct Example {
    std::string name;
    std::string title;
    std::vector<ExamplePart> parts;
};

const std::vector<std::string>& example_names();
// Throws kUnknownName.
Example build_example(const std::string& name, std::size_t grid = 1024, std::size_t jbar = 2);

}  // namespace mvent

#endif
