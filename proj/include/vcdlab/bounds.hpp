#pragma once

#include "combinatorics.hpp"
#include "errors.hpp"

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vcdlab {

// All logarithms are natural.

struct BoundConstants {
    double C = 1.0;       // |behaviour vectors| <= C k^m
    double C_prime = 2.0; // C k^m <= (C' k)^m folding constant
    double C_hat = 64.0;  // multiplier of the Rademacher-route closed form

    void validate() const {
        if (!(C > 0.0) || !(C_prime > 0.0) || !(C_hat > 0.0) || !std::isfinite(C) ||
            !std::isfinite(C_prime) || !std::isfinite(C_hat))
            throw SchemaError("bound constants must be positive and finite");
    }
};

struct BoundQuery {
    std::uint64_t m = 1;
    double eps = 0.1;
    double delta = 0.1;
    BoundConstants constants{};

    void validate() const {
        if (m == 0) throw SchemaError("m must be a positive integer");
        if (!(eps > 0.0 && eps < 1.0)) throw SchemaError("eps must lie in (0,1)");
        if (!(delta > 0.0 && delta < 1.0)) throw SchemaError("delta must lie in (0,1)");
        constants.validate();
    }
};

namespace detail {

inline constexpr double kMaxSampleSize = 9.0e18;

inline std::uint64_t ceil_sample_size(double v) {
    if (!std::isfinite(v) || v >= kMaxSampleSize) throw CapExceeded("sample size exceeds 64-bit range");
    const double c = std::ceil(v);
    return c < 1.0 ? 1 : static_cast<std::uint64_t>(c);
}

inline void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must lie in (0,1)");
}

} // namespace detail

/// (4 + sqrt(ln tau(2k))) / (delta sqrt(2k)) given ln tau(2k) directly.
inline double deviation_bound_growth_log(double log_tau_2k, std::uint64_t k, double delta) {
    if (k == 0) throw std::domain_error("k must be at least 1");
    detail::check_delta(delta);
    if (!(log_tau_2k >= 0.0)) throw std::domain_error("tau(2k) must be at least 1");
    return (4.0 + std::sqrt(log_tau_2k)) / (delta * std::sqrt(2.0 * static_cast<double>(k)));
}

/// Deviation bound from the growth function value tau(2k).
inline double deviation_bound_growth(Count tau_2k, std::uint64_t k, double delta) {
    if (tau_2k.value < 1) throw std::domain_error("tau(2k) must be at least 1");
    if (tau_2k.saturated) throw CapExceeded("tau(2k) saturated; pass its logarithm instead");
    return deviation_bound_growth_log(std::log(static_cast<double>(tau_2k.value)), k, delta);
}

inline double deviation_bound_growth(std::uint64_t tau_2k, std::uint64_t k, double delta) {
    return deviation_bound_growth(Count{tau_2k, false}, k, delta);
}

/// Deviation bound with tau supplied as a callback evaluated at 2k.
template <typename Tau>
    requires std::invocable<Tau, std::uint64_t>
inline double deviation_bound_growth(Tau&& tau, std::uint64_t k, double delta) {
    const auto v = tau(2 * k);
    if constexpr (std::same_as<std::decay_t<decltype(v)>, Count>)
        return deviation_bound_growth(v, k, delta);
    else
        return deviation_bound_growth(static_cast<std::uint64_t>(v), k, delta);
}

/// ln tau(2k) under tau(2k) <= (2k)^m.
inline double log_polynomial_growth(std::uint64_t k, std::uint64_t m) {
    return static_cast<double>(m) * std::log(2.0 * static_cast<double>(k));
}

/// ceil(a ln a) with a = 4m / (eps^2 delta^2); 1 when a <= 1.
inline std::uint64_t k_elementary(const BoundQuery& q) {
    q.validate();
    const double a = 4.0 * static_cast<double>(q.m) / (q.eps * q.eps * q.delta * q.delta);
    if (a <= 1.0) return 1;
    return detail::ceil_sample_size(a * std::log(a));
}

struct LogInequalitySolution {
    std::uint64_t k = 1;       // least k with j >= a ln j + b for every integer j >= k
    std::uint64_t closed_form = 1; // sufficient k from the closed-form bound
};

/// Solves k >= a ln k + b over the integers.
///
/// f(k) = k - a ln k - b is convex, so the integers where it is negative form
/// one contiguous run; the result is the integer right after that run (1 if
/// there is none). The closed form is ceil(2a ln a) for b = 0 and
/// ceil(4a ln(2a) + 2b) otherwise, with a raised to 1 when smaller.
inline LogInequalitySolution solve_k_log_inequality(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("solve_k_log_inequality needs finite a >= 0, b >= 0");
    auto ok = [&](std::uint64_t k) {
        const double kd = static_cast<double>(k);
        return kd >= a * std::log(kd) + b;
    };
    LogInequalitySolution out;
    const std::uint64_t start = std::max<std::uint64_t>(1, detail::ceil_sample_size(a));
    if (ok(start)) {
        out.k = (start > 1 && !ok(start - 1)) ? start : 1;
    } else {
        std::uint64_t bad = start;
        std::uint64_t step = 1;
        std::uint64_t good = start + step;
        while (!ok(good)) {
            bad = good;
            step *= 2;
            if (good > static_cast<std::uint64_t>(detail::kMaxSampleSize) / 2)
                throw CapExceeded("log inequality solution exceeds 64-bit range");
            good = start + step;
        }
        while (good - bad > 1) {
            const std::uint64_t mid = bad + (good - bad) / 2;
            (ok(mid) ? good : bad) = mid;
        }
        out.k = good;
    }
    if (a == 0.0) {
        out.closed_form = detail::ceil_sample_size(b);
    } else {
        const double a1 = std::max(a, 1.0);
        out.closed_form = b == 0.0 ? detail::ceil_sample_size(2.0 * a1 * std::log(a1))
                                   : detail::ceil_sample_size(4.0 * a1 * std::log(2.0 * a1) + 2.0 * b);
    }
    return out;
}

/// Smallest k for which the growth-route reduction 2k >= a ln(2k),
/// a = 4m / (eps^2 delta^2), holds from k on.
inline std::uint64_t k_solver_elementary(const BoundQuery& q) {
    q.validate();
    const double a = 4.0 * static_cast<double>(q.m) / (q.eps * q.eps * q.delta * q.delta);
    const auto s = solve_k_log_inequality(a, 0.0);
    return (s.k + 1) / 2;
}

/// Massart cap sqrt(2 ln(C k^m) / k) on the Rademacher complexity of at most
/// C k^m binary vectors in R^k.
inline double rademacher_cap(double k, std::uint64_t m, double C) {
    if (!(k >= 2.0) || !std::isfinite(k)) throw std::domain_error("rademacher_cap needs k >= 2");
    if (!(C > 0.0)) throw std::domain_error("rademacher_cap needs C > 0");
    const double log_size = std::log(C) + static_cast<double>(m) * std::log(k);
    if (log_size < 0.0) throw std::domain_error("rademacher_cap needs C k^m >= 1");
    return std::sqrt(2.0 * log_size / k);
}

/// count m (the alternative reading).
/// count m as typeset in the original derivation.
enum class ConfidenceDenominator { sample_size, weight_count };

/// sqrt(8 m ln(C' k) / k) + sqrt(2 ln(4/delta) / k).
inline double deviation_bound_rademacher(double k, std::uint64_t m, double delta,
                                         const BoundConstants& c = {},
                                         ConfidenceDenominator denom = ConfidenceDenominator::sample_size) {
    if (!(k >= 2.0) || !std::isfinite(k)) throw std::domain_error("deviation_bound_rademacher needs k >= 2");
    detail::check_delta(delta);
    c.validate();
    const double log_ck = std::log(c.C_prime * k);
    if (log_ck < 0.0) throw std::domain_error("deviation_bound_rademacher needs C' k >= 1");
    const double md = static_cast<double>(m);
    const double conf_den = denom == ConfidenceDenominator::sample_size ? k : md;
    if (conf_den <= 0.0) throw std::domain_error("confidence denominator must be positive");
    return std::sqrt(8.0 * md * log_ck / k) + std::sqrt(2.0 * std::log(4.0 / delta) / conf_den);
}

/// ceil(C_hat ((m/eps^2) ln(2m/eps^2) + ln(4/delta)/eps^2)).
inline std::uint64_t k_rademacher(const BoundQuery& q) {
    q.validate();
    const double md = static_cast<double>(q.m);
    const double e2 = q.eps * q.eps;
    const double inner = (md / e2) * std::log(2.0 * md / e2) + std::log(4.0 / q.delta) / e2;
    return detail::ceil_sample_size(q.constants.C_hat * inner);
}

/// Least k (in the range where the bound decreases, k >= max(2, e/C')) with
/// deviation_bound_rademacher(k, m, delta) <= eps.
inline std::uint64_t k_solver_rademacher(const BoundQuery& q) {
    q.validate();
    const std::uint64_t k0 = std::max<std::uint64_t>(2, detail::ceil_sample_size(std::exp(1.0) / q.constants.C_prime));
    auto ok = [&](std::uint64_t k) {
        return deviation_bound_rademacher(static_cast<double>(k), q.m, q.delta, q.constants) <= q.eps;
    };
    if (ok(k0)) return k0;
    std::uint64_t bad = k0;
    std::uint64_t good = 2 * k0;
    while (!ok(good)) {
        bad = good;
        if (good > static_cast<std::uint64_t>(detail::kMaxSampleSize) / 2)
            throw CapExceeded("solver sample size exceeds 64-bit range");
        good *= 2;
    }
    while (good - bad > 1) {
        const std::uint64_t mid = bad + (good - bad) / 2;
        (ok(mid) ? good : bad) = mid;
    }
    return good;
}

/// (vcdim + ln(1/delta)) / eps^2 with unit constant; comparison column only.
inline double classical_reference_bounds(const BoundQuery& q, double vcdim) {
    if (!(vcdim >= 1.0)) throw std::domain_error("classical reference needs vcdim >= 1");
    if (!(q.eps > 0.0) || !(q.delta > 0.0 && q.delta <= 1.0))
        throw std::domain_error("classical reference needs eps > 0, delta in (0,1]");
    return (vcdim + std::log(1.0 / q.delta)) / (q.eps * q.eps);
}

struct BoundReport {
    BoundQuery query;
    std::uint64_t k_elementary = 0;
    std::uint64_t k_rademacher = 0;
    std::uint64_t k_solver_elementary = 0;
    std::uint64_t k_solver_rademacher = 0;

    double deviation_elementary = 0.0; // growth-route deviation at k_elementary, tau = (2k)^m
    double deviation_rademacher = 0.0; // Rademacher-route deviation at k_rademacher
    bool elementary_regime = false;    // m ln(2k) >= 16: the additive 4 is dominated
    bool verified_elementary = false;
    bool verified_rademacher = false;
    bool verified_solver_elementary = false;
    bool verified_solver_rademacher = false;

    double classical_m2 = 0.0;
    double classical_m4 = 0.0;
    double classical_mlogm = 0.0;
};

/// Evaluates both closed forms and both solvers, then re-checks each
/// resulting k against the inequality it is supposed to satisfy.
inline BoundReport compute_bounds(const BoundQuery& q) {
    q.validate();
    BoundReport r;
    r.query = q;
    r.k_elementary = k_elementary(q);
    r.k_rademacher = k_rademacher(q);
    r.k_solver_elementary = k_solver_elementary(q);
    r.k_solver_rademacher = k_solver_rademacher(q);

    const double log_tau = log_polynomial_growth(r.k_elementary, q.m);
    r.deviation_elementary = deviation_bound_growth_log(log_tau, r.k_elementary, q.delta);
    r.elementary_regime = log_tau >= 16.0;
    r.verified_elementary = r.deviation_elementary <= q.eps;

    r.deviation_rademacher = deviation_bound_rademacher(static_cast<double>(std::max<std::uint64_t>(2, r.k_rademacher)),
                                                        q.m, q.delta, q.constants);
    r.verified_rademacher = r.deviation_rademacher <= q.eps;

    const double a = 4.0 * static_cast<double>(q.m) / (q.eps * q.eps * q.delta * q.delta);
    const double two_k = 2.0 * static_cast<double>(r.k_solver_elementary);
    r.verified_solver_elementary = two_k >= a * std::log(two_k) && r.k_solver_elementary <= r.k_elementary;
    r.verified_solver_rademacher =
        deviation_bound_rademacher(static_cast<double>(r.k_solver_rademacher), q.m, q.delta, q.constants) <= q.eps &&
        r.k_solver_rademacher <= r.k_rademacher;

    const double md = static_cast<double>(q.m);
    r.classical_m2 = classical_reference_bounds(q, std::max(1.0, md * md));
    r.classical_m4 = classical_reference_bounds(q, std::max(1.0, md * md * md * md));
    r.classical_mlogm = classical_reference_bounds(q, std::max(1.0, md * std::log(md)));
    return r;
}

/// Largest delta in [lo, hi] such that k_rademacher < k_elementary for every
/// delta' in [lo, delta], located by bisection on the sign change. Returns
/// `lo` when the Rademacher route does not win even at lo.
inline double rademacher_crossover_delta(std::uint64_t m, double eps, double lo, double hi,
                                         const BoundConstants& c = {}) {
    auto wins = [&](double d) {
        const BoundQuery q{m, eps, d, c};
        const auto rad = k_rademacher(q);
        try {
            return rad < k_elementary(q);
        } catch (const CapExceeded&) {
            return true; // elementary k past 2^63
        }
    };
    if (!wins(lo)) return lo;
    if (wins(hi)) return hi;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = std::sqrt(lo * hi);
        (wins(mid) ? lo : hi) = mid;
    }
    return lo;
}

} // namespace vcdlab
