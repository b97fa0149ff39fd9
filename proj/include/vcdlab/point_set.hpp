#pragma once

#include "errors.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace vcdlab {

using Point = std::vector<double>;

namespace detail {

inline double det2(double a, double b, double c, double d) noexcept { return a * d - b * c; }

/// True when the d+1 points (d = 1..3) are affinely dependent up to `tol`.
inline bool affinely_dependent(std::span<const Point* const> pts, double tol) {
    const std::size_t d = pts.size() - 1;
    const Point& o = *pts[0];
    if (d == 1) return std::fabs((*pts[1])[0] - o[0]) <= tol;
    if (d == 2) {
        const double v = det2((*pts[1])[0] - o[0], (*pts[1])[1] - o[1], (*pts[2])[0] - o[0],
                              (*pts[2])[1] - o[1]);
        return std::fabs(v) <= tol;
    }
    double m[3][3];
    for (std::size_t r = 0; r < 3 && r < d; ++r)
        for (std::size_t c = 0; c < 3; ++c) m[r][c] = (*pts[r + 1])[c] - o[c];
    const double v = m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) -
                     m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
                     m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
    return std::fabs(v) <= tol;
}

} // namespace detail

/// Determinant tolerance used for general-position checks and generation.
inline constexpr double kGeneralPositionTol = 1e-6;

/// Checks that no d+1 of `points` (all in R^d) are affinely dependent.
/// Only implemented for d <= 3; larger d is rejected.
inline bool in_general_position(std::span<const Point> points, std::size_t d,
                                double tol = kGeneralPositionTol) {
    if (d == 0 || d > 3) throw SchemaError("general-position check supports 1 <= d <= 3");
    const std::size_t n = points.size();
    if (n < d + 1) {
        // Only three points in R^3 can be degenerate short of a full (d+1)-subset.
        if (d == 3 && n == 3) {
            const Point& o = points[0];
            const double ax = points[1][0] - o[0], ay = points[1][1] - o[1], az = points[1][2] - o[2];
            const double bx = points[2][0] - o[0], by = points[2][1] - o[1], bz = points[2][2] - o[2];
            const double cx = ay * bz - az * by, cy = az * bx - ax * bz, cz = ax * by - ay * bx;
            return std::sqrt(cx * cx + cy * cy + cz * cz) > tol;
        }
        return true;
    }
    std::vector<std::size_t> idx(d + 1);
    std::vector<const Point*> sel(d + 1);
    // Enumerate (d+1)-subsets in lexicographic order.
    for (std::size_t i = 0; i <= d; ++i) idx[i] = i;
    while (true) {
        for (std::size_t i = 0; i <= d; ++i) sel[i] = &points[idx[i]];
        if (detail::affinely_dependent(sel, tol)) return false;
        std::size_t pos = d + 1;
        while (pos > 0 && idx[pos - 1] == n - (d + 1 - (pos - 1))) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t i = pos; i <= d; ++i) idx[i] = idx[i - 1] + 1;
    }
    return true;
}

/// A finite set B of pairwise distinct points in R^dim.
class PointSet {
public:
    PointSet() = default;

    PointSet(std::size_t dim, std::vector<Point> points, bool general_position = false)
        : dim_(dim), points_(std::move(points)), general_position_(general_position) {
        if (dim_ == 0) throw SchemaError("point dimension must be positive");
        for (const auto& p : points_) {
            if (p.size() != dim_) throw DimensionMismatch(dim_, p.size());
            for (double v : p)
                if (!std::isfinite(v)) throw SchemaError("point coordinates must be finite");
        }
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                if (points_[i] == points_[j]) throw SchemaError("points must be pairwise distinct");
        if (general_position_ && dim_ <= 3 && !in_general_position(points_, dim_))
            throw SchemaError("point set flagged general_position is degenerate");
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    bool general_position() const noexcept { return general_position_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<Point>& points() const noexcept { return points_; }

    /// The first `n` points, keeping the general-position flag.
    PointSet prefix(std::size_t n) const {
        return PointSet(dim_, {points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(
                                                                   std::min(n, points_.size()))},
                        general_position_);
    }

private:
    std::size_t dim_ = 1;
    std::vector<Point> points_;
    bool general_position_ = false;
};

/// Draws `n` points uniformly from [-1,1]^dim, redrawing any point that would
/// break general position (checked for dim <= 3).
inline PointSet random_general_position(std::size_t n, std::size_t dim, Rng& rng) {
    std::vector<Point> pts;
    pts.reserve(n);
    std::size_t attempts = 0;
    while (pts.size() < n) {
        if (++attempts > 1000 * (n + 1)) throw SchemaError("could not draw general-position points");
        Point p(dim);
        for (auto& v : p) v = rng.uniform(-1.0, 1.0);
        pts.push_back(std::move(p));
        if (dim <= 3 && !in_general_position(pts, dim)) pts.pop_back();
    }
    return PointSet(dim, std::move(pts), dim <= 3);
}

/// `n` points on the moment curve t -> (t, t^2, ..., t^dim); always in general position.
inline PointSet moment_curve_points(std::size_t n, std::size_t dim) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        Point p(dim);
        double power = 1.0;
        for (std::size_t c = 0; c < dim; ++c) {
            power *= t;
            p[c] = power;
        }
        pts.push_back(std::move(p));
    }
    return PointSet(dim, std::move(pts), false);
}

/// Origin plus unit vectors; `n` must not exceed dim + 1.
inline PointSet simplex_vertices(std::size_t n, std::size_t dim) {
    if (n > dim + 1) throw SchemaError("simplex has at most dim+1 vertices");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        Point p(dim, 0.0);
        if (i > 0) p[i - 1] = 1.0;
        pts.push_back(std::move(p));
    }
    return PointSet(dim, std::move(pts), false);
}

/// The first `n` points of a row-major integer grid with side ceil(n^(1/dim)).
inline PointSet grid_points(std::size_t n, std::size_t dim) {
    std::size_t side = 1;
    while (true) {
        std::size_t total = 1;
        for (std::size_t c = 0; c < dim; ++c) total *= side;
        if (total >= n) break;
        ++side;
    }
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) {
        Point p(dim);
        std::size_t rest = i;
        for (std::size_t c = 0; c < dim; ++c) {
            p[c] = static_cast<double>(rest % side);
            rest /= side;
        }
        pts.push_back(std::move(p));
    }
    return PointSet(dim, std::move(pts), false);
}

} // namespace vcdlab
