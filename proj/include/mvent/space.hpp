#ifndef MVENT_SPACE_HPP
#define MVENT_SPACE_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvent/bitset.hpp"

namespace mvent {

using Index = std::uint32_t;

// Sorted, duplicate-free set of point indices. Most operations require the
// set to be nonempty; preimages are the exception and may return empty sets.
class PointSet {
public:
    PointSet() = default;

    static PointSet from_indices(std::vector<Index> indices);
    static PointSet from_bits(const Bitset& bits);
    static PointSet singleton(Index i) { return PointSet(std::vector<Index>{i}); }
    static PointSet all(std::size_t n);

    bool empty() const { return idx_.empty(); }
    std::size_t size() const { return idx_.size(); }
    bool contains(Index i) const;
    Index operator[](std::size_t k) const { return idx_[k]; }

    const std::vector<Index>& indices() const { return idx_; }
    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }

    Bitset to_bits(std::size_t universe) const;

    friend bool operator==(const PointSet&, const PointSet&) = default;
    friend auto operator<=>(const PointSet& a, const PointSet& b) { return a.idx_ <=> b.idx_; }

private:
    explicit PointSet(std::vector<Index> sorted) : idx_(std::move(sorted)) {}
    std::vector<Index> idx_;
};

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);
bool is_subset(const PointSet& a, const PointSet& b);

// Dense square matrix of pseudometric values, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), v_(n * n, fill) {}
    Matrix(std::size_t n, std::vector<double> values);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {v_.data() + i * n_, n_}; }
    const std::vector<double>& values() const { return v_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<double> v_;
};

// Points placed on a line: p(i,j) = |coord[i] - coord[j]| / divisor.
// Grid spaces use integer coordinates with divisor N so that every distance
// is a function of |i - j| alone.
struct LineEmbedding {
    std::vector<double> coord;
    double divisor = 1.0;
    bool monotone = false;  // coord nondecreasing in index

    double distance(Index i, Index j) const {
        double d = coord[i] - coord[j];
        return (d < 0 ? -d : d) / divisor;
    }
};

// Finite point set with a finite family of pseudometrics standing in for the
// uniformity. Immutable after construction.
class FiniteMetricSpace {
public:
    // Validating constructor. Throws Error with codes kEmptySpace,
    // kShapeMismatch, kSymmetryViolation, kNonzeroDiagonal,
    // kNegativeDistance, kTriangleViolation, kNotSeparating.
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<Matrix> metrics);

    // Single pseudometric given by a line embedding. Valid by construction
    // apart from separation, which is still checked.
    static FiniteMetricSpace line(std::vector<std::string> labels, std::vector<double> coord,
                                  double divisor = 1.0);

    // Skips the O(n^3) triangle check; used for constructions that are
    // pseudometric by theorem (the hyperspace Hausdorff family).
    static FiniteMetricSpace trusted(std::vector<std::string> labels, std::vector<Matrix> metrics);

    // All checks except the triangle inequality, for values whose triangle
    // inequality was verified in exact arithmetic before rounding to double.
    static FiniteMetricSpace exact_triangle(std::vector<std::string> labels, std::vector<Matrix> metrics);

    std::size_t size() const { return labels_.size(); }
    std::size_t metric_count() const { return metrics_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Index i) const { return labels_[i]; }
    std::optional<Index> find(const std::string& label) const;

    const Matrix& metric(std::size_t p) const { return metrics_.at(p); }
    double distance(std::size_t p, Index x, Index y) const { return metrics_[p](x, y); }
    const LineEmbedding* line_embedding(std::size_t p) const {
        return p < lines_.size() && lines_[p] ? &*lines_[p] : nullptr;
    }

    // Largest value of pseudometric p.
    double diameter(std::size_t p) const;
    // True when pseudometric p alone separates points.
    bool is_metric(std::size_t p) const;

private:
    FiniteMetricSpace() = default;
    void validate(bool triangle);
    void check_shape() const;
    void check_separating() const;

    std::vector<std::string> labels_;
    std::vector<Matrix> metrics_;
    std::vector<std::optional<LineEmbedding>> lines_;
};

FiniteMetricSpace new_space(std::vector<std::string> labels, std::vector<Matrix> metrics);

// inf over pairs. Throws kEmptySet when either set is empty.
double set_rho(const FiniteMetricSpace& space, std::size_t p, const PointSet& a, const PointSet& b);

// Hausdorff distance. Throws kEmptySet when either set is empty.
double set_hausdorff(const FiniteMetricSpace& space, std::size_t p, const PointSet& a,
                     const PointSet& b);

// Plain max-min evaluation without the line fast path; kept for cross-checks.
double set_hausdorff_direct(const FiniteMetricSpace& space, std::size_t p, const PointSet& a,
                            const PointSet& b);
double set_rho_direct(const FiniteMetricSpace& space, std::size_t p, const PointSet& a,
                      const PointSet& b);

namespace detail {

// Maximal runs [lo, hi] of consecutive indices.
struct Run {
    Index lo;
    Index hi;
};
std::vector<Run> runs_of(const Bitset& bits);
std::vector<Run> runs_of(const PointSet& set);

// Hausdorff and rho distance on a monotone line embedding, working on runs
// of consecutive indices. Exact: returns the same doubles as the direct
// formulas.
double line_hausdorff(const LineEmbedding& line, const std::vector<Run>& a,
                      const std::vector<Run>& b);
double line_rho(const LineEmbedding& line, const std::vector<Run>& a, const std::vector<Run>& b);

}  // namespace detail

}  // namespace mvent

#endif
