#include "mvent/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "mvent/error.hpp"

namespace mvent {

MultiMap::MultiMap(std::size_t n, std::vector<PointSet> images) : images_(std::move(images)) {
    if (images_.size() != n)
        throw Error(ErrorCode::kShapeMismatch, "map has " + std::to_string(images_.size()) +
                                                   " images for " + std::to_string(n) + " points");
    bits_.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (images_[x].empty()) throw Error(ErrorCode::kEmptyImage, "image of point " + std::to_string(x) + " is empty");
        for (auto y : images_[x])
            if (y >= n)
                throw Error(ErrorCode::kIndexOutOfRange, "image of point " + std::to_string(x) +
                                                             " contains index " + std::to_string(y));
        bits_.push_back(images_[x].to_bits(n));
    }
}

MultiMap MultiMap::from_function(const std::vector<Index>& f) {
    std::vector<PointSet> images;
    images.reserve(f.size());
    for (auto y : f) images.push_back(PointSet::singleton(y));
    return MultiMap(f.size(), std::move(images));
}

MultiMap MultiMap::identity(std::size_t n) {
    std::vector<Index> f(n);
    std::iota(f.begin(), f.end(), Index{0});
    return from_function(f);
}

MultiMap MultiMap::full(std::size_t n) {
    return MultiMap(n, std::vector<PointSet>(n, PointSet::all(n)));
}

bool MultiMap::is_single_valued() const {
    return std::all_of(images_.begin(), images_.end(), [](const PointSet& s) { return s.size() == 1; });
}

bool MultiMap::contains(const MultiMap& sub) const {
    if (sub.size() != size()) return false;
    for (std::size_t x = 0; x < size(); ++x)
        if (!is_subset(sub.images_[x], images_[x])) return false;
    return true;
}

Bitset MultiMap::image_of(const Bitset& set) const {
    Bitset out(size());
    set.for_each([&](std::size_t x) { out |= bits_[x]; });
    return out;
}

PointSet large_preimage(const MultiMap& map, const PointSet& b) {
    return PointSet::from_bits(large_preimage(map, b.to_bits(map.size())));
}

Bitset large_preimage(const MultiMap& map, const Bitset& b) {
    Bitset out(map.size());
    for (std::size_t x = 0; x < map.size(); ++x)
        if (map.image_bits(static_cast<Index>(x)).intersects(b)) out.set(x);
    return out;
}

PointSet small_preimage(const MultiMap& map, const PointSet& b) {
    const Bitset bits = b.to_bits(map.size());
    std::vector<Index> out;
    for (std::size_t x = 0; x < map.size(); ++x)
        if (map.image_bits(static_cast<Index>(x)).is_subset_of(bits)) out.push_back(static_cast<Index>(x));
    return PointSet::from_indices(std::move(out));
}

MapSequence::MapSequence(std::vector<MultiMap> prefix, std::vector<MultiMap> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw Error(ErrorCode::kInvalidArgument, "schedule cycle is empty");
    const std::size_t n = cycle_.front().size();
    for (const auto* list : {&prefix_, &cycle_})
        for (const auto& m : *list)
            if (m.size() != n) throw Error(ErrorCode::kShapeMismatch, "maps in a schedule act on different point sets");
}

MapSequence MapSequence::autonomous(MultiMap map) { return MapSequence({}, {std::move(map)}); }

const MultiMap& MapSequence::at(std::size_t j) const {
    if (j < prefix_.size()) return prefix_[j];
    return cycle_[(j - prefix_.size()) % cycle_.size()];
}

const MultiMap& map_at(const MapSequence& seq, std::size_t j) { return seq.at(j); }

bool MapSequence::is_single_valued() const {
    for (const auto* list : {&prefix_, &cycle_})
        for (const auto& m : *list)
            if (!m.is_single_valued()) return false;
    return true;
}

bool MapSequence::contains(const MapSequence& sub) const {
    if (sub.size() != size()) return false;
    const std::size_t head = std::max(prefix_.size(), sub.prefix_.size());
    const std::size_t period = std::lcm(cycle_.size(), sub.cycle_.size());
    for (std::size_t j = 0; j < head + period; ++j)
        if (!at(j).contains(sub.at(j))) return false;
    return true;
}

std::vector<Bitset> composed_layers(const MapSequence& seq, std::size_t k_max, Index x) {
    std::vector<Bitset> layers;
    layers.reserve(k_max + 1);
    Bitset cur(seq.size());
    cur.set(x);
    layers.push_back(cur);
    for (std::size_t k = 0; k < k_max; ++k) {
        cur = seq.at(k).image_of(cur);
        layers.push_back(cur);
    }
    return layers;
}

PointSet composed_image(const MapSequence& seq, std::size_t k, Index x) {
    return PointSet::from_bits(composed_layers(seq, k, x).back());
}

OrbitSet enumerate_orbits(const MapSequence& seq, std::size_t n, std::optional<Index> start, std::size_t cap) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "orbit horizon must be at least 1");
    OrbitSet out;
    out.n = n;
    out.start = start;
    std::vector<Index> tuple(n);
    std::vector<std::size_t> pos(n, 0);
    std::size_t produced = 0;

    const std::size_t first = start ? *start : 0;
    const std::size_t last = start ? *start + 1 : seq.size();
    for (std::size_t x0 = first; x0 < last; ++x0) {
        tuple[0] = static_cast<Index>(x0);
        if (n == 1) {
            if (++produced > cap) throw OrbitCapError(produced - 1, cap);
            out.data.push_back(tuple[0]);
            continue;
        }
        // Iterative depth-first extension; pos[d] is the next image slot to try
        // at depth d.
        std::size_t d = 1;
        pos[1] = 0;
        while (d > 0) {
            const PointSet& img = seq.at(d - 1).image(tuple[d - 1]);
            if (pos[d] == img.size()) {
                --d;
                continue;
            }
            tuple[d] = img[pos[d]++];
            if (d + 1 == n) {
                if (++produced > cap) throw OrbitCapError(produced - 1, cap);
                out.data.insert(out.data.end(), tuple.begin(), tuple.end());
            } else {
                ++d;
                pos[d] = 0;
            }
        }
    }
    return out;
}

std::uint64_t count_orbits(const MapSequence& seq, std::size_t n, std::optional<Index> start) {
    if (n == 0) return 0;
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    const std::size_t size = seq.size();
    std::vector<std::uint64_t> cur(size, start ? 0 : 1), next(size);
    if (start) cur[*start] = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::fill(next.begin(), next.end(), 0);
        const MultiMap& m = seq.at(i);
        for (std::size_t x = 0; x < size; ++x) {
            if (!cur[x]) continue;
            for (auto y : m.image(static_cast<Index>(x))) next[y] = next[y] > kMax - cur[x] ? kMax : next[y] + cur[x];
        }
        std::swap(cur, next);
    }
    std::uint64_t total = 0;
    for (auto c : cur) total = total > kMax - c ? kMax : total + c;
    return total;
}

Cover::Cover(std::size_t n, std::vector<PointSet> blocks) : n_(n), blocks_(std::move(blocks)) {
    Bitset seen(n);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        if (blocks_[b].empty()) throw Error(ErrorCode::kEmptySet, "cover block " + std::to_string(b) + " is empty");
        for (auto i : blocks_[b]) {
            if (i >= n) throw Error(ErrorCode::kIndexOutOfRange, "cover block " + std::to_string(b) + " has index " + std::to_string(i));
            seen.set(i);
        }
    }
    if (seen.count() != n) {
        Bitset missing(n);
        missing.set_all();
        missing.subtract(seen);
        throw Error(ErrorCode::kNotACover, "point " + std::to_string(missing.first()) + " is not covered");
    }
}

Cover Cover::singletons(std::size_t n) {
    std::vector<PointSet> blocks;
    for (std::size_t i = 0; i < n; ++i) blocks.push_back(PointSet::singleton(static_cast<Index>(i)));
    return Cover(n, std::move(blocks));
}

Cover ball_cover(const FiniteMetricSpace& space, std::size_t p, double r) {
    const std::size_t n = space.size();
    const Matrix& m = space.metric(p);
    std::vector<Bitset> balls(n, Bitset(n));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t y = 0; y < n; ++y)
            if (m(c, y) <= r) balls[c].set(y);
    Bitset uncovered(n);
    uncovered.set_all();
    std::vector<PointSet> blocks;
    while (uncovered.any()) {
        std::size_t best = 0, gain = 0;
        for (std::size_t c = 0; c < n; ++c) {
            Bitset t = balls[c];
            t &= uncovered;
            std::size_t g = t.count();
            if (g > gain) {
                gain = g;
                best = c;
            }
        }
        blocks.push_back(PointSet::from_bits(balls[best]));
        uncovered.subtract(balls[best]);
    }
    return Cover(n, std::move(blocks));
}

namespace {

Bitset f_set_bits(const MapSequence& seq, const std::vector<const Bitset*>& blocks) {
    const std::size_t n = blocks.size();
    Bitset cur = *blocks[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        cur = large_preimage(seq.at(i), cur);
        cur &= *blocks[i];
        if (cur.none()) break;
    }
    return cur;
}

// Depth-first walk over block tuples whose forward-reachable sets stay
// nonempty. `seed` restricts the starting points of the tracked orbits.
template <class Leaf>
void walk_tuples(const MapSequence& seq, const Cover& cover, std::size_t n, const Bitset& seed,
                 std::size_t budget, Leaf&& leaf) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "cover horizon must be at least 1");
    const std::size_t size = cover.universe();
    std::vector<Bitset> block_bits;
    for (const auto& b : cover.blocks()) block_bits.push_back(b.to_bits(size));

    std::vector<const Bitset*> chosen(n);
    std::vector<Bitset> reach(n);
    std::size_t visited = 0;

    auto rec = [&](auto&& self, std::size_t depth) -> void {
        for (std::size_t b = 0; b < block_bits.size(); ++b) {
            if (++visited > budget)
                throw Error(ErrorCode::kTupleBudgetExceeded,
                            "block tuple enumeration exceeded budget " + std::to_string(budget));
            Bitset r = depth == 0 ? seed : seq.at(depth - 1).image_of(reach[depth - 1]);
            r &= block_bits[b];
            if (r.none()) continue;
            reach[depth] = std::move(r);
            chosen[depth] = &block_bits[b];
            if (depth + 1 == n)
                leaf(f_set_bits(seq, chosen));
            else
                self(self, depth + 1);
        }
    };
    rec(rec, 0);
}

}  // namespace

PointSet cover_f_set(const MapSequence& seq, const std::vector<PointSet>& blocks) {
    if (blocks.empty()) throw Error(ErrorCode::kInvalidArgument, "F-set needs at least one block");
    std::vector<Bitset> bits;
    for (const auto& b : blocks) bits.push_back(b.to_bits(seq.size()));
    std::vector<const Bitset*> ptrs;
    for (const auto& b : bits) ptrs.push_back(&b);
    return PointSet::from_bits(f_set_bits(seq, ptrs));
}

std::vector<PointSet> f_set_family(const MapSequence& seq, const Cover& cover, std::size_t n, std::size_t budget) {
    Bitset all(cover.universe());
    all.set_all();
    std::set<PointSet> family;
    walk_tuples(seq, cover, n, all, budget, [&](const Bitset& f) {
        if (f.any()) family.insert(PointSet::from_bits(f));
    });
    return {family.begin(), family.end()};
}

PointSet cover_An_class(const MapSequence& seq, const Cover& cover, std::size_t n, Index x, std::size_t budget) {
    Bitset seed(cover.universe());
    seed.set(x);
    Bitset acc(cover.universe());
    walk_tuples(seq, cover, n, seed, budget, [&](const Bitset& f) { acc |= f; });
    return PointSet::from_bits(acc);
}

}  // namespace mvent
