#include "mvent/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mvent/error.hpp"

namespace mvent {

PointSet PointSet::from_indices(std::vector<Index> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    return PointSet(std::move(indices));
}

PointSet PointSet::from_bits(const Bitset& bits) {
    std::vector<Index> v;
    v.reserve(bits.count());
    bits.for_each([&](std::size_t i) { v.push_back(static_cast<Index>(i)); });
    return PointSet(std::move(v));
}

PointSet PointSet::all(std::size_t n) {
    std::vector<Index> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Index>(i);
    return PointSet(std::move(v));
}

bool PointSet::contains(Index i) const { return std::binary_search(idx_.begin(), idx_.end(), i); }

Bitset PointSet::to_bits(std::size_t universe) const {
    Bitset b(universe);
    for (auto i : idx_) b.set(i);
    return b;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
    std::vector<Index> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PointSet::from_indices(std::move(out));
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
    std::vector<Index> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return PointSet::from_indices(std::move(out));
}

bool is_subset(const PointSet& a, const PointSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Matrix::Matrix(std::size_t n, std::vector<double> values) : n_(n), v_(std::move(values)) {
    if (v_.size() != n * n)
        throw Error(ErrorCode::kShapeMismatch, "matrix has " + std::to_string(v_.size()) +
                                                   " entries, expected " + std::to_string(n * n));
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw Error(ErrorCode::kShapeMismatch, "row " + std::to_string(i) + " has " +
                                                       std::to_string(rows[i].size()) +
                                                       " entries, expected " +
                                                       std::to_string(rows.size()));
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

namespace {

std::string entry(std::size_t p, std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << "metric " << p << " entry (" << i << "," << j << ")";
    return os.str();
}

void check_labels(const std::vector<std::string>& labels) {
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw Error(ErrorCode::kInvalidArgument, "empty point label");
        if (!seen.insert(l).second) throw Error(ErrorCode::kInvalidArgument, "duplicate point label '" + l + "'");
    }
}

}  // namespace

void FiniteMetricSpace::check_shape() const {
    if (labels_.empty()) throw Error(ErrorCode::kEmptySpace, "space has no points");
    if (metrics_.empty()) throw Error(ErrorCode::kEmptySpace, "space has no pseudometrics");
    for (std::size_t p = 0; p < metrics_.size(); ++p)
        if (metrics_[p].size() != labels_.size())
            throw Error(ErrorCode::kShapeMismatch,
                        "metric " + std::to_string(p) + " is " + std::to_string(metrics_[p].size()) +
                            "x" + std::to_string(metrics_[p].size()) + " but the space has " +
                            std::to_string(labels_.size()) + " points");
}

void FiniteMetricSpace::check_separating() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool sep = false;
            for (const auto& m : metrics_)
                if (m(i, j) > 0) {
                    sep = true;
                    break;
                }
            if (!sep)
                throw Error(ErrorCode::kNotSeparating, "no pseudometric separates points " + labels_[i] +
                                                           " and " + labels_[j]);
        }
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<Matrix> metrics)
    : labels_(std::move(labels)), metrics_(std::move(metrics)) {
    validate(true);
}

FiniteMetricSpace FiniteMetricSpace::exact_triangle(std::vector<std::string> labels, std::vector<Matrix> metrics) {
    FiniteMetricSpace s;
    s.labels_ = std::move(labels);
    s.metrics_ = std::move(metrics);
    s.validate(false);
    return s;
}

void FiniteMetricSpace::validate(bool triangle) {
    check_shape();
    check_labels(labels_);
    const std::size_t n = size();
    for (std::size_t p = 0; p < metrics_.size(); ++p) {
        const Matrix& m = metrics_[p];
        for (std::size_t i = 0; i < n; ++i) {
            if (m(i, i) != 0.0) throw Error(ErrorCode::kNonzeroDiagonal, entry(p, i, i) + " is nonzero");
            for (std::size_t j = 0; j < n; ++j) {
                if (!(m(i, j) >= 0.0) || !std::isfinite(m(i, j)))
                    throw Error(ErrorCode::kNegativeDistance, entry(p, i, j) + " is negative or not finite");
                if (m(i, j) != m(j, i))
                    throw Error(ErrorCode::kSymmetryViolation,
                                entry(p, i, j) + " differs from " + entry(p, j, i));
            }
        }
        if (!triangle) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (m(i, k) > m(i, j) + m(j, k))
                        throw Error(ErrorCode::kTriangleViolation,
                                    entry(p, i, k) + " exceeds the path through " + std::to_string(j));
    }
    check_separating();
    lines_.resize(metrics_.size());
}

FiniteMetricSpace FiniteMetricSpace::line(std::vector<std::string> labels, std::vector<double> coord,
                                          double divisor) {
    if (coord.size() != labels.size())
        throw Error(ErrorCode::kShapeMismatch, "coordinate count differs from label count");
    if (!(divisor > 0)) throw Error(ErrorCode::kInvalidArgument, "line divisor must be positive");
    FiniteMetricSpace s;
    s.labels_ = std::move(labels);
    LineEmbedding line{std::move(coord), divisor, true};
    for (std::size_t i = 1; i < line.coord.size(); ++i)
        if (line.coord[i] < line.coord[i - 1]) line.monotone = false;
    const std::size_t n = s.labels_.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = line.distance(static_cast<Index>(i), static_cast<Index>(j));
    s.metrics_.push_back(std::move(m));
    s.check_shape();
    check_labels(s.labels_);
    s.check_separating();
    s.lines_.push_back(std::move(line));
    return s;
}

FiniteMetricSpace FiniteMetricSpace::trusted(std::vector<std::string> labels, std::vector<Matrix> metrics) {
    FiniteMetricSpace s;
    s.labels_ = std::move(labels);
    s.metrics_ = std::move(metrics);
    s.check_shape();
    s.lines_.resize(s.metrics_.size());
    return s;
}

std::optional<Index> FiniteMetricSpace::find(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<Index>(i);
    return std::nullopt;
}

double FiniteMetricSpace::diameter(std::size_t p) const {
    const auto& v = metric(p).values();
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

bool FiniteMetricSpace::is_metric(std::size_t p) const {
    const Matrix& m = metric(p);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (m(i, j) == 0.0) return false;
    return true;
}

FiniteMetricSpace new_space(std::vector<std::string> labels, std::vector<Matrix> metrics) {
    return FiniteMetricSpace(std::move(labels), std::move(metrics));
}

namespace {

void require_nonempty(const PointSet& a, const PointSet& b) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptySet, "set distance of an empty set");
}

double directed_direct(const Matrix& m, const PointSet& a, const PointSet& b) {
    double best = 0.0;
    for (auto x : a) {
        double nearest = m(x, b[0]);
        for (auto y : b) nearest = std::min(nearest, m(x, y));
        best = std::max(best, nearest);
    }
    return best;
}

}  // namespace

double set_rho_direct(const FiniteMetricSpace& space, std::size_t p, const PointSet& a, const PointSet& b) {
    require_nonempty(a, b);
    const Matrix& m = space.metric(p);
    double best = m(a[0], b[0]);
    for (auto x : a)
        for (auto y : b) best = std::min(best, m(x, y));
    return best;
}

double set_hausdorff_direct(const FiniteMetricSpace& space, std::size_t p, const PointSet& a,
                            const PointSet& b) {
    require_nonempty(a, b);
    const Matrix& m = space.metric(p);
    return std::max(directed_direct(m, a, b), directed_direct(m, b, a));
}

double set_rho(const FiniteMetricSpace& space, std::size_t p, const PointSet& a, const PointSet& b) {
    require_nonempty(a, b);
    if (const auto* line = space.line_embedding(p); line && line->monotone)
        return detail::line_rho(*line, detail::runs_of(a), detail::runs_of(b));
    return set_rho_direct(space, p, a, b);
}

double set_hausdorff(const FiniteMetricSpace& space, std::size_t p, const PointSet& a, const PointSet& b) {
    require_nonempty(a, b);
    if (const auto* line = space.line_embedding(p); line && line->monotone)
        return detail::line_hausdorff(*line, detail::runs_of(a), detail::runs_of(b));
    return set_hausdorff_direct(space, p, a, b);
}

namespace detail {

std::vector<Run> runs_of(const Bitset& bits) {
    std::vector<Run> runs;
    const std::size_t n = bits.size();
    std::size_t i = bits.first();
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && bits.test(j + 1)) ++j;
        runs.push_back({static_cast<Index>(i), static_cast<Index>(j)});
        i = bits.next(j + 1);
    }
    return runs;
}

std::vector<Run> runs_of(const PointSet& set) {
    std::vector<Run> runs;
    for (auto i : set) {
        if (!runs.empty() && runs.back().hi + 1 == i)
            runs.back().hi = i;
        else
            runs.push_back({i, i});
    }
    return runs;
}

namespace {

// max over r in [s, e] of min(d(r, left), d(r, right)); d(r, left) is
// nondecreasing and d(r, right) nonincreasing in r.
double gap_max(const LineEmbedding& line, std::int64_t s, std::int64_t e, Index left, Index right) {
    auto f = [&](std::int64_t r) {
        return std::min(line.distance(static_cast<Index>(r), left), line.distance(static_cast<Index>(r), right));
    };
    std::int64_t lo = s, hi = e + 1;
    while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        if (line.distance(static_cast<Index>(mid), left) >= line.distance(static_cast<Index>(mid), right))
            hi = mid;
        else
            lo = mid + 1;
    }
    double best = 0.0;
    if (lo <= e) best = std::max(best, f(lo));
    if (lo - 1 >= s) best = std::max(best, f(lo - 1));
    return best;
}

double line_directed(const LineEmbedding& line, const std::vector<Run>& a, const std::vector<Run>& b) {
    double best = 0.0;
    std::size_t j = 0;
    const std::size_t m = b.size();
    for (const Run& run : a) {
        std::int64_t s = run.lo;
        const std::int64_t hi = run.hi;
        while (s <= hi) {
            while (j < m && static_cast<std::int64_t>(b[j].hi) < s) ++j;
            if (j == m) {
                best = std::max(best, line.distance(run.hi, b[m - 1].hi));
                break;
            }
            if (s >= static_cast<std::int64_t>(b[j].lo)) {
                s = static_cast<std::int64_t>(b[j].hi) + 1;
                continue;
            }
            std::int64_t e = std::min<std::int64_t>(hi, static_cast<std::int64_t>(b[j].lo) - 1);
            if (j == 0)
                best = std::max(best, line.distance(static_cast<Index>(s), b[0].lo));
            else
                best = std::max(best, gap_max(line, s, e, b[j - 1].hi, b[j].lo));
            s = e + 1;
        }
    }
    return best;
}

}  // namespace

double line_hausdorff(const LineEmbedding& line, const std::vector<Run>& a, const std::vector<Run>& b) {
    return std::max(line_directed(line, a, b), line_directed(line, b, a));
}

double line_rho(const LineEmbedding& line, const std::vector<Run>& a, const std::vector<Run>& b) {
    double best = -1.0;
    auto consider = [&](double d) {
        if (best < 0 || d < best) best = d;
    };
    std::size_t i = 0, j = 0;
    // Walk both run lists in index order; the nearest pair is always between
    // runs that are adjacent in the merged order.
    while (i < a.size() && j < b.size()) {
        const Run& ra = a[i];
        const Run& rb = b[j];
        if (ra.hi < rb.lo) {
            consider(line.distance(ra.hi, rb.lo));
            ++i;
        } else if (rb.hi < ra.lo) {
            consider(line.distance(rb.hi, ra.lo));
            ++j;
        } else {
            return 0.0;
        }
    }
    return best;
}

}  // namespace detail

}  // namespace mvent
