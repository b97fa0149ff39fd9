#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>

namespace vcdlab {

/// Nonnegative count with saturating arithmetic. `saturated` is sticky and
/// means the true value is at least `value` (== UINT64_MAX).
struct Count {
    std::uint64_t value = 0;
    bool saturated = false;

    static constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

    friend constexpr Count operator+(Count a, Count b) noexcept {
        Count r{a.value + b.value, a.saturated || b.saturated};
        if (r.value < a.value) r = {kMax, true};
        return r;
    }

    friend constexpr Count operator*(Count a, std::uint64_t k) noexcept {
        const unsigned __int128 p = static_cast<unsigned __int128>(a.value) * k;
        if (p > kMax) return {kMax, true};
        return {static_cast<std::uint64_t>(p), a.saturated};
    }

    friend constexpr bool operator==(const Count&, const Count&) = default;
};

/// C(n, k), saturating.
constexpr Count binomial(std::uint64_t n, std::uint64_t k) noexcept {
    if (k > n) return {0, false};
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        acc = acc * (n - i) / (i + 1);
        if (acc > Count::kMax) return {Count::kMax, true};
    }
    return {static_cast<std::uint64_t>(acc), false};
}

constexpr Count pow2(std::uint64_t n) noexcept {
    if (n >= 64) return {Count::kMax, true};
    return {std::uint64_t{1} << n, false};
}

/// Sum_{i=0}^{min(d,n)} C(n, i): the Sauer-Shelah ceiling on traces of a
/// class of VC-dimension d on n points.
constexpr Count sauer_shelah_cap(std::uint64_t d, std::uint64_t n) noexcept {
    Count total{0, false};
    for (std::uint64_t i = 0; i <= std::min(d, n); ++i) total = total + binomial(n, i);
    return total;
}

/// 2 * Sum_{i=0}^{d} C(n-1, i): dichotomies of n general-position points in
/// R^d by affine half-spaces (equals 2^n for n <= d + 1).
constexpr Count cover_count(std::uint64_t n, std::uint64_t d) noexcept {
    if (n == 0) return {1, false};
    Count half{0, false};
    for (std::uint64_t i = 0; i <= d; ++i) half = half + binomial(n - 1, i);
    return half * 2;
}

} // namespace vcdlab
