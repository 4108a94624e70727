#include "mvent/interval_map.hpp"

#include <algorithm>

#include "mvent/error.hpp"

namespace mvent {

namespace {

const Rational kZero(0), kOne(1), kHalf(1, 2);

// Closed hull of domain ∩ [c0, c1]; false when the intersection is empty.
bool clip(const Domain& d, const Rational& c0, const Rational& c1, std::vector<std::pair<Rational, Rational>>& out) {
    if (d.is_points) {
        bool any = false;
        for (const auto& p : d.points)
            if (c0 <= p && p <= c1) {
                out.emplace_back(p, p);
                any = true;
            }
        return any;
    }
    Rational lo = max(d.lo, c0), hi = min(d.hi, c1);
    if (hi < lo) return false;
    if (lo == hi && !d.contains(lo)) return false;
    out.emplace_back(lo, hi);
    return true;
}

void image_of(const Value& v, const std::vector<std::pair<Rational, Rational>>& parts,
              std::vector<std::pair<Rational, Rational>>& out) {
    switch (v.type) {
        case Value::Type::kAffine:
            for (const auto& [lo, hi] : parts) {
                Rational y0 = v.a * lo + v.b, y1 = v.a * hi + v.b;
                out.emplace_back(min(y0, y1), max(y0, y1));
            }
            break;
        case Value::Type::kPoints:
            for (const auto& p : v.points) out.emplace_back(p, p);
            break;
        case Value::Type::kInterval:
            out.emplace_back(v.a, v.b);
            break;
    }
}

std::vector<std::pair<Rational, Rational>> cell_image(const IntervalMultiMap& map, const Rational& c0,
                                                      const Rational& c1) {
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& br : map.branches()) {
        std::vector<std::pair<Rational, Rational>> parts;
        if (clip(br.domain, c0, c1, parts)) image_of(br.value, parts, out);
    }
    return out;
}

// Grid indices k in [0, n] with |k/n - y| <= r/n for some y in [lo, hi]; r is
// given as a rational number of grid steps.
void mark(std::vector<Index>& pts, std::size_t n, const std::pair<Rational, Rational>& iv, const Rational& r) {
    Rational scale(static_cast<std::int64_t>(n));
    std::int64_t k0 = std::max<std::int64_t>(0, (iv.first * scale - r).ceil());
    std::int64_t k1 = std::min<std::int64_t>(static_cast<std::int64_t>(n), (iv.second * scale + r).floor());
    for (std::int64_t k = k0; k <= k1; ++k) pts.push_back(static_cast<Index>(k));
}

MultiMap build(std::size_t n, const std::vector<std::vector<std::pair<Rational, Rational>>>& values,
               const Rational& r) {
    std::vector<PointSet> images;
    images.reserve(n + 1);
    for (const auto& vs : values) {
        std::vector<Index> pts;
        for (const auto& iv : vs) mark(pts, n, iv, r);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        images.push_back(PointSet::from_indices(std::move(pts)));
    }
    return MultiMap(n + 1, std::move(images));
}

void check_grid(std::size_t n) {
    if (n < 2 || n > 100000000) throw Error(ErrorCode::kInvalidArgument, "grid size must be in [2, 1e8]");
}

}  // namespace

bool Domain::contains(const Rational& x) const {
    if (is_points) return std::find(points.begin(), points.end(), x) != points.end();
    if (x < lo || x > hi) return false;
    if (x == lo && lo_open) return false;
    if (x == hi && hi_open) return false;
    return true;
}

IntervalMultiMap::IntervalMultiMap(std::string name, std::vector<Branch> branches)
    : name_(std::move(name)), branches_(std::move(branches)) {
    auto in_unit = [](const Rational& v) { return kZero <= v && v <= kOne; };
    // Coverage: every point of [0,1] lies in some domain. Checked on the
    // endpoints of all domains and the midpoints between consecutive ones.
    std::vector<Rational> marks{kZero, kOne};
    for (const auto& br : branches_) {
        const auto& d = br.domain;
        if (d.is_points) {
            for (const auto& p : d.points) {
                if (!in_unit(p)) throw Error(ErrorCode::kInvalidArgument, name_ + ": domain point outside [0,1]");
                marks.push_back(p);
            }
        } else {
            if (!in_unit(d.lo) || !in_unit(d.hi) || d.hi < d.lo)
                throw Error(ErrorCode::kInvalidArgument, name_ + ": domain outside [0,1]");
            marks.push_back(d.lo);
            marks.push_back(d.hi);
        }
        const auto& v = br.value;
        switch (v.type) {
            case Value::Type::kAffine: {
                if (d.is_points) {
                    for (const auto& p : d.points)
                        if (!in_unit(v.a * p + v.b))
                            throw Error(ErrorCode::kInvalidArgument, name_ + ": value outside [0,1]");
                } else if (!in_unit(v.a * d.lo + v.b) || !in_unit(v.a * d.hi + v.b)) {
                    throw Error(ErrorCode::kInvalidArgument, name_ + ": value outside [0,1]");
                }
                break;
            }
            case Value::Type::kPoints:
                if (v.points.empty()) throw Error(ErrorCode::kEmptyImage, name_ + ": empty value set");
                for (const auto& p : v.points)
                    if (!in_unit(p)) throw Error(ErrorCode::kInvalidArgument, name_ + ": value outside [0,1]");
                break;
            case Value::Type::kInterval:
                if (!in_unit(v.a) || !in_unit(v.b) || v.b < v.a)
                    throw Error(ErrorCode::kInvalidArgument, name_ + ": value outside [0,1]");
                break;
        }
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    auto covered = [&](const Rational& x) {
        return std::any_of(branches_.begin(), branches_.end(), [&](const Branch& b) { return b.domain.contains(x); });
    };
    for (std::size_t i = 0; i < marks.size(); ++i) {
        if (!covered(marks[i]))
            throw Error(ErrorCode::kEmptyImage, name_ + ": no branch at x = " + marks[i].to_string());
        if (i + 1 < marks.size() && !covered((marks[i] + marks[i + 1]) * kHalf))
            throw Error(ErrorCode::kEmptyImage,
                        name_ + ": no branch between " + marks[i].to_string() + " and " + marks[i + 1].to_string());
    }
}

IntervalMultiMap builtin(const std::string& name) {
    auto br = [](Domain d, Value v) { return Branch{std::move(d), std::move(v)}; };
    const Rational two(2);
    if (name == "tent_f")
        return IntervalMultiMap(name, {br(Domain::interval(kZero, kHalf, false, true), Value::affine(two, kZero)),
                                       br(Domain::closed(kHalf, kOne), Value::affine(-two, two))});
    if (name == "f01")
        return IntervalMultiMap(name, {br(Domain::interval(kZero, kOne, true, true), Value::at({kZero})),
                                       br(Domain::at({kZero, kOne}), Value::at({kZero, kOne}))});
    if (name == "phi0")
        return IntervalMultiMap(name, {br(Domain::closed(kZero, kHalf), Value::affine(two, kZero)),
                                       br(Domain::interval(kHalf, kOne, true, false), Value::affine(two, -kOne))});
    if (name == "phi_half" || name == "phi1")
        return IntervalMultiMap(
            name, {br(Domain::interval(kZero, kHalf, false, true), Value::affine(two, kZero)),
                   br(Domain::at({kHalf}), name == "phi1" ? Value::interval(kZero, kOne) : Value::at({kZero, kOne})),
                   br(Domain::interval(kHalf, kOne, true, false), Value::affine(two, -kOne))});
    if (name == "zero") return IntervalMultiMap(name, {br(Domain::closed(kZero, kOne), Value::at({kZero}))});
    throw Error(ErrorCode::kUnknownName, "unknown builtin map '" + name + "'");
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"tent_f", "f01", "phi0", "phi_half", "phi1", "zero"};
    return names;
}

IntervalMultiMap map_union(const IntervalMultiMap& a, const IntervalMultiMap& b) {
    auto branches = a.branches();
    branches.insert(branches.end(), b.branches().begin(), b.branches().end());
    return IntervalMultiMap(a.name() + "|" + b.name(), std::move(branches));
}

IntervalMultiMap with_zero(const IntervalMultiMap& a) { return map_union(a, builtin("zero")); }

std::vector<std::pair<Rational, Rational>> evaluate(const IntervalMultiMap& map, const Rational& x) {
    return cell_image(map, x, x);
}

FiniteMetricSpace grid_space(std::size_t n) {
    check_grid(n);
    std::vector<std::string> labels;
    std::vector<double> coord;
    labels.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        labels.push_back(Rational(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n)).to_string());
        coord.push_back(static_cast<double>(i));
    }
    return FiniteMetricSpace::line(std::move(labels), std::move(coord), static_cast<double>(n));
}

MultiMap discretize(const IntervalMultiMap& map, std::size_t n) {
    check_grid(n);
    auto sn = static_cast<std::int64_t>(n);
    std::vector<std::vector<std::pair<Rational, Rational>>> values;
    values.reserve(n + 1);
    for (std::int64_t i = 0; i <= sn; ++i) {
        Rational c0 = max(kZero, Rational(2 * i - 1, 2 * sn)), c1 = min(kOne, Rational(2 * i + 1, 2 * sn));
        values.push_back(cell_image(map, c0, c1));
    }
    return build(n, values, kOne);
}

MultiMap discretize_pointwise(const IntervalMultiMap& map, std::size_t n) {
    check_grid(n);
    auto sn = static_cast<std::int64_t>(n);
    std::vector<std::vector<std::pair<Rational, Rational>>> values;
    values.reserve(n + 1);
    for (std::int64_t i = 0; i <= sn; ++i) values.push_back(evaluate(map, Rational(i, sn)));
    return build(n, values, kHalf);
}

}  // namespace mvent
