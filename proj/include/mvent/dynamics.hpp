#ifndef MVENT_DYNAMICS_HPP
#define MVENT_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mvent/bitset.hpp"
#include "mvent/space.hpp"

namespace mvent {

// A multivalued self-map of a finite point set {0..n-1}, stored as a relation.
class MultiMap {
public:
    MultiMap() = default;
    // Throws kEmptyImage or kIndexOutOfRange.
    MultiMap(std::size_t n, std::vector<PointSet> images);
    static MultiMap from_function(const std::vector<Index>& f);
    static MultiMap identity(std::size_t n);
    static MultiMap full(std::size_t n);

    std::size_t size() const { return images_.size(); }
    const PointSet& image(Index x) const { return images_[x]; }
    const Bitset& image_bits(Index x) const { return bits_[x]; }
    const std::vector<PointSet>& images() const { return images_; }

    bool is_single_valued() const;
    // True when every image of `sub` is contained in the matching image here.
    bool contains(const MultiMap& sub) const;

    // Union of images over a set of points.
    Bitset image_of(const Bitset& set) const;

    friend bool operator==(const MultiMap& a, const MultiMap& b) { return a.images_ == b.images_; }

private:
    std::vector<PointSet> images_;
    std::vector<Bitset> bits_;
};

PointSet large_preimage(const MultiMap& map, const PointSet& b);
PointSet small_preimage(const MultiMap& map, const PointSet& b);
Bitset large_preimage(const MultiMap& map, const Bitset& b);

// phi_j = prefix[j] for j < |prefix|, else cycle[(j - |prefix|) mod |cycle|].
class MapSequence {
public:
    MapSequence() = default;
    // Throws kInvalidArgument on an empty cycle and kShapeMismatch when the
    // maps live on different point sets.
    MapSequence(std::vector<MultiMap> prefix, std::vector<MultiMap> cycle);
    static MapSequence autonomous(MultiMap map);

    std::size_t size() const { return cycle_.front().size(); }
    const MultiMap& at(std::size_t j) const;
    const std::vector<MultiMap>& prefix() const { return prefix_; }
    const std::vector<MultiMap>& cycle() const { return cycle_; }

    bool is_autonomous() const { return prefix_.empty() && cycle_.size() == 1; }
    bool is_single_valued() const;
    // Pointwise containment sub_j(x) ⊂ phi_j(x) over one full period of both.
    bool contains(const MapSequence& sub) const;

    friend bool operator==(const MapSequence&, const MapSequence&) = default;

private:
    std::vector<MultiMap> prefix_;
    std::vector<MultiMap> cycle_;
};

const MultiMap& map_at(const MapSequence& seq, std::size_t j);

// phi^[k](x); k = 0 gives {x}.
PointSet composed_image(const MapSequence& seq, std::size_t k, Index x);
// Layers phi^[0](x), ..., phi^[k_max](x) as bitsets.
std::vector<Bitset> composed_layers(const MapSequence& seq, std::size_t k_max, Index x);

// n-orbits stored flat, one tuple after another, in lexicographic order.
struct OrbitSet {
    std::size_t n = 0;
    std::optional<Index> start;
    std::vector<Index> data;

    std::size_t count() const { return n == 0 ? 0 : data.size() / n; }
    std::span<const Index> orbit(std::size_t i) const { return {data.data() + i * n, n}; }
};

constexpr std::size_t kDefaultOrbitCap = 2'000'000;

// Throws OrbitCapError when more than `cap` orbits would be produced.
OrbitSet enumerate_orbits(const MapSequence& seq, std::size_t n, std::optional<Index> start = std::nullopt,
                          std::size_t cap = kDefaultOrbitCap);

// Number of n-orbits without enumerating them; saturates at UINT64_MAX.
std::uint64_t count_orbits(const MapSequence& seq, std::size_t n, std::optional<Index> start = std::nullopt);

// A family of nonempty point sets whose union is the whole space.
class Cover {
public:
    Cover() = default;
    // Throws kEmptySet for an empty member and kNotACover when points are missed.
    Cover(std::size_t n, std::vector<PointSet> blocks);
    static Cover whole(std::size_t n) { return Cover(n, {PointSet::all(n)}); }
    static Cover singletons(std::size_t n);

    std::size_t universe() const { return n_; }
    std::size_t size() const { return blocks_.size(); }
    const PointSet& block(std::size_t i) const { return blocks_[i]; }
    const std::vector<PointSet>& blocks() const { return blocks_; }

private:
    std::size_t n_ = 0;
    std::vector<PointSet> blocks_;
};

// Closed balls of radius r around a greedy minimal set of centres: repeatedly
// take the centre whose ball covers the most uncovered points, lowest index on
// ties.
Cover ball_cover(const FiniteMetricSpace& space, std::size_t p, double r);

// F(phi; A_0, ..., A_{n-1}) by the backward large-preimage recursion.
PointSet cover_f_set(const MapSequence& seq, const std::vector<PointSet>& blocks);

constexpr std::size_t kDefaultTupleBudget = 4'000'000;

// Distinct nonempty F-sets over all block tuples of length n.
std::vector<PointSet> f_set_family(const MapSequence& seq, const Cover& cover, std::size_t n,
                                   std::size_t budget = kDefaultTupleBudget);

// A^n(phi, x): union of F-sets over block tuples that carry an orbit from x.
PointSet cover_An_class(const MapSequence& seq, const Cover& cover, std::size_t n, Index x,
                        std::size_t budget = kDefaultTupleBudget);

}  // namespace mvent

#endif
