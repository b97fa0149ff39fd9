#pragma once

#include "dichotomy.hpp"
#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

namespace vcdlab {

struct DensityEstimate {
    double slope = 0.0;
    std::size_t n_min = 0;
    std::size_t n_max = 0;
    double residual = 0.0; // RMS residual of the log-log fit
    std::size_t points = 0;
};

/// Which samples enter the log-log fit. Without an explicit range the upper
/// half of the available n values is used, but never fewer than 3 of them.
struct FitPolicy {
    std::optional<std::size_t> n_min;
    std::optional<std::size_t> n_max;
};

/// Least-squares slope of ln(count) against ln(n).
inline DensityEstimate estimate_vc_density(const GrowthEstimate& g, const FitPolicy& policy = {}) {
    std::map<std::size_t, std::uint64_t> usable;
    for (const auto& s : g.samples) {
        if (s.n == 0 || s.count == 0) continue;
        auto& slot = usable[s.n];
        slot = std::max(slot, s.count);
    }
    std::vector<std::pair<std::size_t, std::uint64_t>> pts(usable.begin(), usable.end());
    if (policy.n_min || policy.n_max) {
        std::erase_if(pts, [&](const auto& p) {
            return (policy.n_min && p.first < *policy.n_min) || (policy.n_max && p.first > *policy.n_max);
        });
    } else {
        const std::size_t keep = std::max<std::size_t>(3, (pts.size() + 1) / 2);
        if (pts.size() > keep) pts.erase(pts.begin(), pts.end() - static_cast<std::ptrdiff_t>(keep));
    }
    if (pts.size() < 3) throw SchemaError("density fit needs at least 3 usable samples");
    if (pts.back().first < 4 * pts.front().first)
        throw SchemaError("density fit needs n values spanning at least a factor of 4");

    const double k = static_cast<double>(pts.size());
    double sx = 0, sy = 0;
    for (const auto& [n, c] : pts) {
        sx += std::log(static_cast<double>(n));
        sy += std::log(static_cast<double>(c));
    }
    const double mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (const auto& [n, c] : pts) {
        const double dx = std::log(static_cast<double>(n)) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(static_cast<double>(c)) - my);
    }
    const double slope = sxy / sxx;
    double rss = 0;
    for (const auto& [n, c] : pts) {
        const double r = std::log(static_cast<double>(c)) - (my + slope * (std::log(static_cast<double>(n)) - mx));
        rss += r * r;
    }
    // Growth functions are nondecreasing; a negative slope can only be noise.
    return {std::max(0.0, slope), pts.front().first, pts.back().first, std::sqrt(rss / k), pts.size()};
}

} // namespace vcdlab
