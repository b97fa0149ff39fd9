#pragma once

#include "errors.hpp"
#include "point_set.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace vcdlab {

struct LpSolution {
    enum class Status { optimal, unbounded, iteration_limit };
    Status status = Status::optimal;
    double value = 0.0;
    std::vector<double> x;
};

/// Dense tableau simplex for  max c.x  s.t.  A x <= b, x >= 0  with b >= 0.
///
/// The origin is feasible by assumption, so there is no phase 1. Bland's
/// rule is used for both entering and leaving choices; margin problems are
/// heavily degenerate (every right-hand side of a point constraint is 0) and
/// Bland's rule guarantees termination there.
class DenseSimplex {
public:
    DenseSimplex(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), width_(cols + rows + 1),
          tab_((rows + 1) * (cols + rows + 1), 0.0), basis_(rows) {
        for (std::size_t r = 0; r < rows_; ++r) {
            at(r, cols_ + r) = 1.0;
            basis_[r] = cols_ + r;
        }
    }

    void set_coefficient(std::size_t row, std::size_t col, double v) { at(row, col) = v; }

    void set_rhs(std::size_t row, double v) {
        if (v < 0.0) throw SchemaError("DenseSimplex requires nonnegative right-hand sides");
        at(row, width_ - 1) = v;
    }

    void set_objective(std::size_t col, double v) { at(rows_, col) = -v; }

    LpSolution solve(std::size_t max_iterations = 10000) {
        constexpr double eps = 1e-12;
        LpSolution sol;
        std::size_t it = 0;
        while (true) {
            if (++it > max_iterations) {
                sol.status = LpSolution::Status::iteration_limit;
                break;
            }
            std::size_t enter = width_;
            for (std::size_t c = 0; c + 1 < width_; ++c) {
                if (at(rows_, c) < -eps) {
                    enter = c;
                    break;
                }
            }
            if (enter == width_) break;
            std::size_t leave = rows_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows_; ++r) {
                const double a = at(r, enter);
                if (a > eps) {
                    const double ratio = at(r, width_ - 1) / a;
                    if (ratio < best - eps || (ratio <= best + eps && leave < rows_ && basis_[r] < basis_[leave])) {
                        best = ratio;
                        leave = r;
                    }
                }
            }
            if (leave == rows_) {
                sol.status = LpSolution::Status::unbounded;
                return sol;
            }
            pivot(leave, enter);
        }
        sol.value = at(rows_, width_ - 1);
        sol.x.assign(cols_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            if (basis_[r] < cols_) sol.x[basis_[r]] = at(r, width_ - 1);
        return sol;
    }

private:
    double& at(std::size_t r, std::size_t c) { return tab_[r * width_ + c]; }

    void pivot(std::size_t pr, std::size_t pc) {
        const double inv = 1.0 / at(pr, pc);
        for (std::size_t c = 0; c < width_; ++c) at(pr, c) *= inv;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < width_; ++c) at(r, c) -= f * at(pr, c);
        }
        basis_[pr] = pc;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::size_t width_;
    std::vector<double> tab_;
    std::vector<std::size_t> basis_;
};

/// Separation margin below which a labeling is not certified realizable.
inline constexpr double kMarginTolerance = 1e-7;
/// Optimal margins at or below this are treated as exactly zero (infeasible).
inline constexpr double kZeroMargin = 1e-11;

enum class Realizability { realizable, infeasible, indeterminate };

struct MarginResult {
    double margin = 0.0;
    std::vector<double> w;
    double b = 0.0;
    Realizability verdict = Realizability::infeasible;
};

/// Maximum of min_i s_i (w.x_i + b) over ||(w, b)||_inf <= 1, where s_i = +1
/// for label 1 and -1 for label 0. The labeling is realizable by a strict
/// affine threshold iff this margin is positive.
///
/// `labels[i]` is the label of `points[indices[i]]`.
inline MarginResult max_margin(const PointSet& points, std::span<const std::size_t> indices,
                               std::span<const bool> labels) {
    const std::size_t d = points.dim();
    const std::size_t k = indices.size();
    const std::size_t params = d + 1;
    const std::size_t cols = 2 * params + 1; // p (pos part), q (neg part), t
    const std::size_t t_col = 2 * params;
    DenseSimplex lp(k + 2 * params + 1, cols);
    for (std::size_t i = 0; i < k; ++i) {
        const Point& x = points[indices[i]];
        const double s = labels[i] ? 1.0 : -1.0;
        for (std::size_t j = 0; j < params; ++j) {
            const double xj = j < d ? x[j] : 1.0;
            lp.set_coefficient(i, j, -s * xj);
            lp.set_coefficient(i, params + j, s * xj);
        }
        lp.set_coefficient(i, t_col, 1.0);
        lp.set_rhs(i, 0.0);
    }
    for (std::size_t j = 0; j < 2 * params; ++j) {
        lp.set_coefficient(k + j, j, 1.0);
        lp.set_rhs(k + j, 1.0);
    }
    lp.set_coefficient(k + 2 * params, t_col, 1.0);
    lp.set_rhs(k + 2 * params, 1.0);
    lp.set_objective(t_col, 1.0);

    const auto sol = lp.solve();
    MarginResult out;
    if (sol.status != LpSolution::Status::optimal) {
        out.verdict = Realizability::indeterminate;
        return out;
    }
    out.w.resize(d);
    for (std::size_t j = 0; j < d; ++j) out.w[j] = sol.x[j] - sol.x[params + j];
    out.b = sol.x[d] - sol.x[params + d];
    out.margin = sol.value;
    if (out.margin > kMarginTolerance)
        out.verdict = Realizability::realizable;
    else if (out.margin <= kZeroMargin)
        out.verdict = Realizability::infeasible;
    else
        out.verdict = Realizability::indeterminate;
    return out;
}

/// Max-margin test for a full labeling of `points`.
inline MarginResult max_margin(const PointSet& points, std::span<const bool> labels) {
    if (labels.size() != points.size()) throw DimensionMismatch(points.size(), labels.size());
    std::vector<std::size_t> idx(points.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return max_margin(points, idx, labels);
}

} // namespace vcdlab
