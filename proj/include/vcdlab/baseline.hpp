#pragma once

#include "errors.hpp"
#include "point_set.hpp"
#include "trace.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

namespace vcdlab {

/// Affine half-spaces {x : w.x + b > 0} in R^dim.
struct LinearThresholdClass {
    std::size_t dim;
};

struct LinearParams {
    std::vector<double> w;
    double b = 0.0;
};

/// All subsets of size <= capacity of a declared finite domain.
class UnionOfPointsClass {
public:
    UnionOfPointsClass(std::size_t capacity, PointSet domain)
        : capacity_(capacity), domain_(std::move(domain)) {}

    std::size_t capacity() const noexcept { return capacity_; }
    const PointSet& domain() const noexcept { return domain_; }

private:
    std::size_t capacity_;
    PointSet domain_;
};

/// An explicitly listed family of subsets of a declared finite domain, each
/// given as its trace over the domain. Duplicates are dropped on construction.
class ExplicitFiniteClass {
public:
    ExplicitFiniteClass(PointSet domain, std::vector<Trace> traces) : domain_(std::move(domain)) {
        std::set<Trace> seen;
        for (auto& t : traces) {
            if (t.size() != domain_.size()) throw DimensionMismatch(domain_.size(), t.size());
            if (seen.insert(t).second) traces_.push_back(std::move(t));
        }
    }

    const PointSet& domain() const noexcept { return domain_; }
    const std::vector<Trace>& traces() const noexcept { return traces_; }

private:
    PointSet domain_;
    std::vector<Trace> traces_;
};

using BaselineClass = std::variant<LinearThresholdClass, UnionOfPointsClass, ExplicitFiniteClass>;

/// Parameter for a union-of-points hypothesis: the chosen domain points.
struct ChosenPoints {
    std::vector<Point> points;
};

/// Parameter for an explicit-finite hypothesis: index into the trace list.
struct TraceIndex {
    std::size_t index;
};

using BaselineParameter = std::variant<LinearParams, ChosenPoints, TraceIndex>;

/// Index of `x` in `domain`, if present (exact coordinate match).
inline std::optional<std::size_t> domain_index(const PointSet& domain, std::span<const double> x) {
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (std::ranges::equal(domain[i], x)) return i;
    return std::nullopt;
}

inline bool membership(const LinearThresholdClass& c, const LinearParams& p, std::span<const double> x) {
    if (p.w.size() != c.dim) throw SchemaError("linear threshold weights must have length dim");
    if (x.size() != c.dim) throw DimensionMismatch(c.dim, x.size());
    double v = p.b;
    for (std::size_t i = 0; i < c.dim; ++i) v += p.w[i] * x[i];
    return v > 0.0;
}

inline bool membership(const UnionOfPointsClass& c, const ChosenPoints& p, std::span<const double> x) {
    if (p.points.size() > c.capacity())
        throw SchemaError("union-of-points parameter has more than capacity points");
    for (const auto& q : p.points)
        if (!domain_index(c.domain(), q)) throw SchemaError("chosen point is not in the declared domain");
    if (x.size() != c.domain().dim()) throw DimensionMismatch(c.domain().dim(), x.size());
    return std::ranges::any_of(p.points, [&](const Point& q) { return std::ranges::equal(q, x); });
}

inline bool membership(const ExplicitFiniteClass& c, const TraceIndex& p, std::span<const double> x) {
    if (p.index >= c.traces().size()) throw SchemaError("trace index out of range");
    if (x.size() != c.domain().dim()) throw DimensionMismatch(c.domain().dim(), x.size());
    const auto i = domain_index(c.domain(), x);
    return i && c.traces()[p.index][*i];
}

/// Indicator of x in the set selected by `parameter` within class `c`.
inline bool baseline_membership(const BaselineClass& c, const BaselineParameter& parameter,
                                std::span<const double> x) {
    return std::visit(
        [&](const auto& cls, const auto& param) -> bool {
            if constexpr (requires { membership(cls, param, x); })
                return membership(cls, param, x);
            else
                throw SchemaError("parameter kind does not match baseline class");
        },
        c, parameter);
}

} // namespace vcdlab
