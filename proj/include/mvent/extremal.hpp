#ifndef MVENT_EXTREMAL_HPP
#define MVENT_EXTREMAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mvent/space.hpp"

namespace mvent {

enum class Bound { kExact, kLowerBound, kUpperBound };
enum class SolveMode { kExact, kGreedy, kAuto };

const char* bound_name(Bound b);
const char* mode_name(SolveMode m);
// Throws kUnknownName.
SolveMode parse_mode(const std::string& name);

struct SolveResult {
    std::size_t cardinality = 0;
    std::vector<std::size_t> witness;
    Bound bound = Bound::kExact;
};

constexpr std::size_t kDefaultExactBudget = 64;

// Symmetric table of pairwise values over a finite item set.
class DistanceTable {
public:
    DistanceTable() = default;
    // Throws kSymmetryViolation or kNonzeroDiagonal.
    explicit DistanceTable(Matrix values, std::vector<std::string> labels = {});

    std::size_t size() const { return values_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
    const Matrix& values() const { return values_; }
    const std::vector<std::string>& labels() const { return labels_; }

private:
    Matrix values_;
    std::vector<std::string> labels_;
};

// Sparse undirected graph on items 0..n-1; adjacency lists sorted, no loops.
struct Graph {
    std::vector<std::vector<std::uint32_t>> adj;
    std::size_t size() const { return adj.size(); }
};

// Items whose value is <= eps are adjacent.
Graph threshold_graph(const DistanceTable& table, double eps);

// Maximum independent set. Exact mode runs branch and bound on every
// connected component and throws kExactSizeLimit when a component is larger
// than `budget`; auto mode falls back to greedy on such components. Greedy
// takes items in index order.
SolveResult max_independent_set(const Graph& g, SolveMode mode, std::size_t budget = kDefaultExactBudget);

// Minimum number of sets covering items 0..universe-1. Each set lists items.
// Components are formed by items linked through shared sets; the budget
// applies to the item count of a component. Greedy picks the set covering the
// most uncovered items, lowest index on ties. Throws kInfeasible when an item
// lies in no set.
SolveResult min_set_cover(std::size_t universe, const std::vector<std::vector<std::uint32_t>>& sets,
                          SolveMode mode, std::size_t budget = kDefaultExactBudget);

// Pairwise values > eps for all witness pairs.
SolveResult max_separated(const DistanceTable& table, double eps, SolveMode mode,
                          std::size_t budget = kDefaultExactBudget);

// Fewest candidates whose closed eps-balls cover the universe. Empty lists
// mean all items. Throws kInfeasible.
SolveResult min_spanning(const DistanceTable& table, double eps, SolveMode mode,
                         std::size_t budget = kDefaultExactBudget, std::vector<std::size_t> universe = {},
                         std::vector<std::size_t> candidates = {});

// Same solvers on a prebuilt closeness graph (edges join items at value <= eps).
SolveResult max_separated(const Graph& close, SolveMode mode, std::size_t budget = kDefaultExactBudget);
SolveResult min_spanning(const Graph& close, SolveMode mode, std::size_t budget = kDefaultExactBudget);

// Smallest vertex set touching every edge. Exact when the result is provably
// minimum (kernelisation plus exact search); otherwise inclusion-minimal.
struct VertexCover {
    std::vector<std::size_t> vertices;
    bool exact = false;
};
VertexCover min_vertex_cover(const Graph& g, std::size_t budget = kDefaultExactBudget);

// Fewest blocks covering the universe. Throws kNotACover.
SolveResult min_subcover(const std::vector<PointSet>& blocks, const PointSet& universe, SolveMode mode,
                         std::size_t budget = kDefaultExactBudget);

// Test-build switch that makes the exact separated-set solver overcount; used
// to confirm the law harness notices a broken solver.
namespace fault {
void set_enabled(bool on);
bool enabled();
}  // namespace fault

}  // namespace mvent

#endif
