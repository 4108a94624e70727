#ifndef MVENT_INTERVAL_MAP_HPP
#define MVENT_INTERVAL_MAP_HPP

#include <string>
#include <vector>

#include "mvent/dynamics.hpp"
#include "mvent/rational.hpp"
#include "mvent/space.hpp"

namespace mvent {

// Subset of [0,1]: an interval with open or closed ends, or a finite set.
struct Domain {
    bool is_points = false;
    Rational lo, hi;
    bool lo_open = false, hi_open = false;
    std::vector<Rational> points;

    static Domain closed(Rational lo, Rational hi) { return {false, lo, hi, false, false, {}}; }
    static Domain interval(Rational lo, Rational hi, bool lo_open, bool hi_open) {
        return {false, lo, hi, lo_open, hi_open, {}};
    }
    static Domain at(std::vector<Rational> pts) { return {true, {}, {}, false, false, std::move(pts)}; }

    bool contains(const Rational& x) const;
    friend bool operator==(const Domain&, const Domain&) = default;
};

// Value of a branch: affine a*x + b, a finite set, or a closed interval.
struct Value {
    enum class Type { kAffine, kPoints, kInterval };
    Type type = Type::kAffine;
    Rational a, b;  // affine coefficients, or interval ends
    std::vector<Rational> points;

    static Value affine(Rational a, Rational b) { return {Type::kAffine, a, b, {}}; }
    static Value at(std::vector<Rational> pts) { return {Type::kPoints, {}, {}, std::move(pts)}; }
    static Value interval(Rational lo, Rational hi) { return {Type::kInterval, lo, hi, {}}; }
    friend bool operator==(const Value&, const Value&) = default;
};

struct Branch {
    Domain domain;
    Value value;
    friend bool operator==(const Branch&, const Branch&) = default;
};

// Multivalued self-map of [0,1]: x maps to the union of the values of all
// branches whose domain contains x.
class IntervalMultiMap {
public:
    IntervalMultiMap() = default;
    // Throws kEmptyImage when some x in [0,1] matches no branch, and
    // kInvalidArgument when a value leaves [0,1].
    IntervalMultiMap(std::string name, std::vector<Branch> branches);

    const std::string& name() const { return name_; }
    const std::vector<Branch>& branches() const { return branches_; }

    friend bool operator==(const IntervalMultiMap&, const IntervalMultiMap&) = default;

private:
    std::string name_;
    std::vector<Branch> branches_;
};

// tent_f, f01, phi0, phi_half, phi1, and zero (the constant {0}). Throws
// kUnknownName.
IntervalMultiMap builtin(const std::string& name);
const std::vector<std::string>& builtin_names();
IntervalMultiMap map_union(const IntervalMultiMap& a, const IntervalMultiMap& b);
IntervalMultiMap with_zero(const IntervalMultiMap& a);

// Exact value set at x, as closed intervals (points are degenerate ones).
std::vector<std::pair<Rational, Rational>> evaluate(const IntervalMultiMap& map, const Rational& x);

// Grid {0, 1/N, ..., 1} with the Euclidean metric, labels "0", "1/N", ..., "1".
FiniteMetricSpace grid_space(std::size_t n);

// Outer discretization: grid point g maps to the grid points within 1/N of
// the exact value set over the cell [g - 1/(2N), g + 1/(2N)] ∩ [0,1].
MultiMap discretize(const IntervalMultiMap& map, std::size_t n);

// Point evaluation: grid points within 1/(2N) of the values at g.
MultiMap discretize_pointwise(const IntervalMultiMap& map, std::size_t n);

}  // namespace mvent

#endif
