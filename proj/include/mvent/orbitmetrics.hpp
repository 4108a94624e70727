#ifndef MVENT_ORBITMETRICS_HPP
#define MVENT_ORBITMETRICS_HPP

#include <span>
#include <vector>

#include "mvent/dynamics.hpp"
#include "mvent/space.hpp"

namespace mvent {

// Coordinatewise max distance of two n-tuples. Throws kLengthMismatch.
double pn(const FiniteMetricSpace& space, std::size_t p, std::span<const Index> a, std::span<const Index> b);

// inf over orbit pairs from (x, y) of the coordinatewise max, by a forward
// bottleneck recursion over the product relation.
double pn_cm(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t n, Index x,
             Index y);

double p_rho_at(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t k, Index x,
                Index y);
double p_haus_at(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t k, Index x,
                 Index y);

// Hausdorff distance under pn between the orbit sets of x and y, by explicit
// enumeration. Throws OrbitCapError.
double pn_branch(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t n, Index x,
                 Index y, std::size_t cap = kDefaultOrbitCap);

// All-pairs pn_cm for horizon n by a backward recursion:
// V_{n-1} = p, V_i(u,v) = max(p(u,v), min over u' in phi_i(u), v' in phi_i(v) of V_{i+1}(u',v')).
Matrix cm_matrix(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, std::size_t n);

// Yields cm_matrix for n = 1, 2, ... in turn. Autonomous sequences reuse the
// previous table (V for n+1 is one backward step applied to V for n); other
// schedules recompute from scratch.
class CmTables {
public:
    CmTables(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p);
    std::size_t horizon() const { return n_; }
    const Matrix& table() const { return table_; }
    void extend();

private:
    const FiniteMetricSpace& space_;
    const MapSequence& seq_;
    std::size_t p_;
    std::size_t n_ = 1;
    Matrix table_;
};

// Running max over k < n of p^rho or p^H of the composed images, for all
// pairs. Starts at n = 1 (the table of p) and grows one layer per extend().
class LayerTables {
public:
    enum class Kind { kRho, kHausdorff };

    LayerTables(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, Kind kind);
    std::size_t horizon() const { return n_; }
    const Matrix& table() const { return table_; }
    // Composed images for the most recent layer k = n - 1.
    const std::vector<Bitset>& layer() const { return layer_; }
    void extend();

private:
    void absorb();

    const FiniteMetricSpace& space_;
    const MapSequence& seq_;
    std::size_t p_;
    Kind kind_;
    std::size_t n_ = 1;
    std::vector<Bitset> layer_;
    Matrix table_;
};

constexpr std::size_t kDefaultStateBudget = 20000;

// Threshold decisions pn_branch(x, y) > eps without enumerating orbits. For
// each direction it searches for an orbit of x whose eps-shadowing set of
// orbits from y dies out; states (x_i, alive set) are merged per level.
class BranchThreshold {
public:
    // Searches holding more than state_budget states at one level throw
    // kExactSizeLimit.
    BranchThreshold(const FiniteMetricSpace& space, const MapSequence& seq, std::size_t p, double eps,
                    std::size_t state_budget = kDefaultStateBudget);
    bool exceeds(std::size_t n, Index x, Index y) const;
    // Directed part: some orbit of x stays farther than eps from all orbits of y.
    bool directed_exceeds(std::size_t n, Index x, Index y) const;
    // Smallest n <= n_max with exceeds(n, x, y), or n_max + 1 when there is none.
    std::size_t first_horizon(std::size_t n_max, Index x, Index y) const;

private:
    // Unions of images over aligned dyadic blocks of indices, so that the
    // image of a run of consecutive points costs O(log |X|) unions.
    struct BlockImages {
        std::vector<std::vector<Bitset>> levels;  // levels[k][i]: block [i*2^k, (i+1)*2^k)
        Bitset image_of(const Bitset& set) const;
    };

    std::size_t directed_first(std::size_t n_max, Index x, Index y) const;
    const BlockImages& blocks_at(std::size_t j) const;

    const FiniteMetricSpace& space_;
    const MapSequence& seq_;
    std::size_t p_;
    double eps_;
    std::vector<Bitset> balls_;
    std::size_t state_budget_;
    std::vector<BlockImages> blocks_;  // prefix maps, then cycle maps
};

}  // namespace mvent

#endif
