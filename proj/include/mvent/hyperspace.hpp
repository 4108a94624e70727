#ifndef MVENT_HYPERSPACE_HPP
#define MVENT_HYPERSPACE_HPP

#include <cstdint>
#include <vector>

#include "mvent/dynamics.hpp"
#include "mvent/entropy.hpp"
#include "mvent/space.hpp"

namespace mvent {

constexpr std::size_t kDefaultHyperLimit = 12;

// All nonempty subsets of a finite space with the Hausdorff family. The
// subset with bitmask m is hyperspace point m - 1.
class Hyperspace {
public:
    const FiniteMetricSpace& base() const { return *base_; }
    const FiniteMetricSpace& space() const { return space_; }
    std::size_t size() const { return space_.size(); }
    std::uint32_t mask(Index k) const { return k + 1; }
    Index index_of(std::uint32_t mask) const { return mask - 1; }
    PointSet subset(Index k) const;
    Index embed(Index x) const { return index_of(std::uint32_t{1} << x); }

private:
    friend Hyperspace build_hyperspace(const FiniteMetricSpace&, std::size_t);
    Hyperspace(const FiniteMetricSpace& base, FiniteMetricSpace space)
        : base_(&base), space_(std::move(space)) {}

    const FiniteMetricSpace* base_;
    FiniteMetricSpace space_;
};

// Throws kSpaceTooLarge when |X| > size_limit. The base space must outlive
// the result.
Hyperspace build_hyperspace(const FiniteMetricSpace& space, std::size_t size_limit = kDefaultHyperLimit);

// phi*(K) = union of phi(x) over K, as a single-valued map on the hyperspace.
MultiMap lift_map(const MultiMap& map, const Hyperspace& hyper);
MapSequence lift_sequence(const MapSequence& seq, const Hyperspace& hyper);

struct HyperRow {
    std::size_t n = 0;
    std::size_t s_haus = 0;   // s_H(phi, p, eps, n)
    std::size_t s_hyper = 0;  // s(phi*, p^H, eps, n)
    std::size_t s_kt = 0;     // s_KT(phi, p, eps, n), observational
    Bound bound_haus = Bound::kExact;
    Bound bound_hyper = Bound::kExact;
    Bound bound_kt = Bound::kExact;
};

struct HyperComparison {
    std::vector<HyperRow> rows;
    // s_haus <= s_hyper on every row where both counts are exact.
    bool holds = true;
};

// Throws kSpaceTooLarge, and kExactSizeLimit in exact mode.
HyperComparison compare_hyper(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                              std::size_t n_max, const CountOptions& opt = {},
                              std::size_t size_limit = kDefaultHyperLimit);

}  // namespace mvent

#endif
