#pragma once

#include "baseline.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "hypothesis_class.hpp"
#include "lp.hpp"
#include "network.hpp"
#include "point_set.hpp"
#include "rng.hpp"
#include "trace.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace vcdlab {

enum class Exactness { exact, lower_bound };

inline std::string_view to_string(Exactness e) { return e == Exactness::exact ? "exact" : "lower_bound"; }

inline Exactness parse_exactness(std::string_view s) {
    if (s == "exact") return Exactness::exact;
    if (s == "lower_bound") return Exactness::lower_bound;
    throw SchemaError("unknown exactness '" + std::string(s) + "'");
}

/// Enumeration limits. Exact LTF counting solves one small LP per realizable
/// prefix labeling, so both point count and dimension are capped.
struct ExactCaps {
    std::size_t max_points = 20;
    std::size_t max_dim = 4;
    std::size_t max_shatter_points = 16;
    std::size_t max_traces = std::size_t{1} << 22;
};

/// The distinct traces a class realizes on a point set.
struct TraceSet {
    std::vector<Trace> traces; // sorted
    Exactness exactness = Exactness::exact;
    std::size_t indeterminate = 0; // LP verdicts inside the margin tolerance band
};

struct DichotomyCount {
    std::uint64_t count = 0;
    Exactness exactness = Exactness::exact;
    std::size_t indeterminate = 0;

    bool determinate() const noexcept { return indeterminate == 0; }
};

// ---------------------------------------------------------------------------
// Traces of single hypotheses

inline Trace trace(const Hypothesis& h, const PointSet& B) {
    if (B.dim() != h.network().input_dim() && !B.empty())
        throw DimensionMismatch(h.network().input_dim(), B.dim());
    Trace t(B.size());
    std::vector<double> scratch(2 * h.network().max_width());
    for (std::size_t i = 0; i < B.size(); ++i)
        t.set(i, forward_value(h.network(), h.weights().values, B[i], scratch) > 0.0);
    return t;
}

inline Trace trace(const BaselineClass& c, const BaselineParameter& p, const PointSet& B) {
    Trace t(B.size());
    for (std::size_t i = 0; i < B.size(); ++i) t.set(i, baseline_membership(c, p, B[i]));
    return t;
}

// ---------------------------------------------------------------------------
// Exact enumeration

namespace detail {

inline void check_ltf_caps(const PointSet& B, const ExactCaps& caps) {
    if (B.size() > caps.max_points)
        throw CapExceeded("exact LTF counting: " + std::to_string(B.size()) + " points exceeds cap " +
                          std::to_string(caps.max_points));
    if (B.dim() > caps.max_dim)
        throw CapExceeded("exact LTF counting: dimension " + std::to_string(B.dim()) + " exceeds cap " +
                          std::to_string(caps.max_dim));
}

inline TraceSet finish(std::vector<Trace> traces, std::size_t indeterminate, Exactness base) {
    std::sort(traces.begin(), traces.end());
    traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
    return {std::move(traces), indeterminate > 0 ? Exactness::lower_bound : base, indeterminate};
}

} // namespace detail

/// All affine-threshold traces on B.
///
/// Labelings are grown point by point; a prefix is extended only if the
/// margin LP certifies it realizable (realizability is hereditary), so the
/// number of LPs is at most 2 * n * (number of traces). Point 0 is pinned to
/// label 0 and complements are added, since negating (w, b) maps a margin-t
/// separator of a labeling to one of its complement.
inline TraceSet enumerate_ltf_traces(const PointSet& B, const ExactCaps& caps = {}) {
    detail::check_ltf_caps(B, caps);
    const std::size_t n = B.size();
    if (n == 0) return {{Trace(0)}, Exactness::exact, 0};
    std::vector<Trace> out;
    std::size_t indeterminate = 0;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    // std::vector<bool> is not contiguous, so the labels live in a plain array.
    std::unique_ptr<bool[]> labels(new bool[n]());

    std::function<void(std::size_t)> grow = [&](std::size_t depth) {
        if (depth == n) {
            Trace t(n);
            for (std::size_t i = 0; i < n; ++i) t.set(i, labels[i]);
            if (out.size() + 2 > caps.max_traces) throw CapExceeded("trace enumeration cap exceeded");
            out.push_back(t.complement());
            out.push_back(std::move(t));
            return;
        }
        for (bool label : {false, true}) {
            labels[depth] = label;
            const auto r = max_margin(B, std::span<const std::size_t>(idx.data(), depth + 1),
                                      std::span<const bool>(labels.get(), depth + 1));
            if (r.verdict == Realizability::realizable)
                grow(depth + 1);
            else if (r.verdict == Realizability::indeterminate)
                ++indeterminate;
        }
    };
    labels[0] = false;
    grow(1);
    return detail::finish(std::move(out), indeterminate, Exactness::exact);
}

/// Exact number of affine-threshold dichotomies of B.
inline DichotomyCount count_dichotomies_exact_ltf(const PointSet& B, const ExactCaps& caps = {}) {
    const auto set = enumerate_ltf_traces(B, caps);
    return {set.traces.size(), set.exactness, set.indeterminate};
}

inline TraceSet enumerate_union_traces(const UnionOfPointsClass& c, const PointSet& B,
                                       const ExactCaps& caps = {}) {
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < B.size(); ++i)
        if (domain_index(c.domain(), B[i])) inside.push_back(i);
    const Count total = sauer_shelah_cap(c.capacity(), inside.size());
    if (total.saturated || total.value > caps.max_traces)
        throw CapExceeded("union-of-points trace enumeration exceeds cap");
    std::vector<Trace> out;
    Trace cur(B.size());
    std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t from, std::size_t chosen) {
        out.push_back(cur);
        if (chosen == c.capacity()) return;
        for (std::size_t j = from; j < inside.size(); ++j) {
            cur.set(inside[j], true);
            pick(j + 1, chosen + 1);
            cur.set(inside[j], false);
        }
    };
    pick(0, 0);
    return detail::finish(std::move(out), 0, Exactness::exact);
}

inline TraceSet enumerate_explicit_traces(const ExplicitFiniteClass& c, const PointSet& B) {
    std::vector<std::optional<std::size_t>> where(B.size());
    for (std::size_t i = 0; i < B.size(); ++i) where[i] = domain_index(c.domain(), B[i]);
    std::vector<Trace> out;
    for (const auto& full : c.traces()) {
        Trace t(B.size());
        for (std::size_t i = 0; i < B.size(); ++i) t.set(i, where[i] && full[*where[i]]);
        out.push_back(std::move(t));
    }
    return detail::finish(std::move(out), 0, Exactness::exact);
}

// ---------------------------------------------------------------------------
// Sampled enumeration

/// Distinct traces found by evaluating `budget` weight vectors.
///
/// The sequence of weight vectors depends only on the seed and on what has
/// been seen so far, never on `budget`, so the result for budget b is the
/// prefix of the result for any larger budget.
inline TraceSet sample_network_traces(const NetworkClass& cls, const PointSet& B, std::size_t budget,
                                      std::uint64_t seed) {
    const NetworkSpec& net = *cls.network;
    if (!B.empty() && B.dim() != net.input_dim()) throw DimensionMismatch(net.input_dim(), B.dim());
    if (budget == 0) throw SchemaError("sampling budget must be at least 1");
    const auto& s = cls.sampler;
    Rng rng(seed);
    std::unordered_set<Trace, TraceHash> seen;
    struct Pending {
        std::vector<double> center;
        std::size_t remaining;
    };
    std::deque<Pending> queue;
    std::vector<double> w(net.weight_count());
    std::vector<double> scratch(2 * net.max_width());
    const double sigma = s.refine_scale * (s.hi - s.lo);
    for (std::size_t draw = 0; draw < budget; ++draw) {
        if (!queue.empty()) {
            auto& front = queue.front();
            for (std::size_t j = 0; j < w.size(); ++j) w[j] = front.center[j] + sigma * rng.normal();
            if (--front.remaining == 0) queue.pop_front();
        } else {
            for (auto& v : w) v = rng.uniform(s.lo, s.hi);
        }
        Trace t(B.size());
        for (std::size_t i = 0; i < B.size(); ++i) t.set(i, forward_value(net, w, B[i], scratch) > 0.0);
        if (seen.insert(std::move(t)).second && s.refine_steps > 0) queue.push_back({w, s.refine_steps});
    }
    std::vector<Trace> out(seen.begin(), seen.end());
    return detail::finish(std::move(out), 0, Exactness::lower_bound);
}

inline NetworkClass as_network_class(const HypothesisClass& c) {
    if (const auto* n = std::get_if<NetworkClass>(&c)) return *n;
    if (const auto* l = std::get_if<LinearThresholdClass>(&c)) return NetworkClass(NetworkSpec::perceptron(l->dim));
    throw SchemaError("sampled counting applies to parametric classes (network or linear threshold)");
}

/// Lower bound on the number of dichotomies of B: distinct traces among
/// `budget` sampled hypotheses. Linear-threshold classes are sampled as a
/// single threshold unit with the default weight box.
inline DichotomyCount count_dichotomies_sampled(const HypothesisClass& c, const PointSet& B,
                                                std::size_t budget, std::uint64_t seed) {
    const auto set = sample_network_traces(as_network_class(c), B, budget, seed);
    return {set.traces.size(), Exactness::lower_bound, 0};
}

struct EnumerationOptions {
    std::size_t budget = 20000; // sampled classes only
    std::uint64_t seed = kDefaultSeed;
    ExactCaps caps{};
};

/// Traces of any class on B: exact for half-spaces and finite classes,
/// sampled (lower bound) for networks.
inline TraceSet enumerate_traces(const HypothesisClass& c, const PointSet& B,
                                 const EnumerationOptions& opt = {}) {
    if (!B.empty() && B.dim() != input_dim(c)) throw DimensionMismatch(input_dim(c), B.dim());
    struct {
        const PointSet& B;
        const EnumerationOptions& opt;
        TraceSet operator()(const LinearThresholdClass&) const { return enumerate_ltf_traces(B, opt.caps); }
        TraceSet operator()(const UnionOfPointsClass& u) const { return enumerate_union_traces(u, B, opt.caps); }
        TraceSet operator()(const ExplicitFiniteClass& e) const { return enumerate_explicit_traces(e, B); }
        TraceSet operator()(const NetworkClass& n) const {
            return sample_network_traces(n, B, opt.budget, opt.seed);
        }
    } visitor{B, opt};
    return std::visit(visitor, c);
}

// ---------------------------------------------------------------------------
// Growth-function oracles

/// Closed-form or exhaustive growth function tau(n) of a baseline class.
///
/// Union of m points: Sum_{i<=m} C(n, i). Half-spaces in R^d: the Cover
/// count for general-position points. Explicit classes: the maximum number of
/// distinct restrictions over all min(n, |domain|)-subsets of the domain.
inline Count growth_function_oracle(const BaselineClass& c, std::size_t n) {
    struct {
        std::size_t n;
        Count operator()(const UnionOfPointsClass& u) const { return sauer_shelah_cap(u.capacity(), n); }
        Count operator()(const LinearThresholdClass& l) const { return cover_count(n, l.dim); }
        Count operator()(const ExplicitFiniteClass& e) const {
            const std::size_t D = e.domain().size();
            if (D > 20) throw CapExceeded("explicit-class growth oracle supports domains of at most 20 points");
            const std::size_t k = std::min(n, D);
            std::uint64_t best = e.traces().empty() ? 0 : 1;
            // Gosper's hack over k-subsets of the domain.
            if (k == 0) return {best, false};
            std::uint64_t mask = (std::uint64_t{1} << k) - 1;
            const std::uint64_t limit = std::uint64_t{1} << D;
            while (mask < limit) {
                std::set<std::uint64_t> seen;
                for (const auto& t : e.traces()) {
                    std::uint64_t r = 0;
                    for (std::size_t i = 0; i < D; ++i)
                        if ((mask >> i) & 1U && t[i]) r |= std::uint64_t{1} << i;
                    seen.insert(r);
                }
                best = std::max<std::uint64_t>(best, seen.size());
                const std::uint64_t low = mask & (~mask + 1);
                const std::uint64_t ripple = mask + low;
                mask = (((ripple ^ mask) >> 2) / low) | ripple;
            }
            return {best, false};
        }
    } visitor{n};
    return std::visit(visitor, c);
}

// ---------------------------------------------------------------------------
// Shattering and VC-dimension

struct ShatterResult {
    bool shattered = false;
    /// exact: the answer is certified; lower_bound: a false answer only means
    /// some labeling was not found (sampled class or indeterminate LPs).
    Exactness exactness = Exactness::exact;
    std::size_t realized = 0;
};

inline ShatterResult is_shattered(const HypothesisClass& c, const PointSet& B,
                                  const EnumerationOptions& opt = {}) {
    if (B.size() > opt.caps.max_shatter_points)
        throw CapExceeded("shattering check: " + std::to_string(B.size()) + " points exceeds cap " +
                          std::to_string(opt.caps.max_shatter_points));
    if (B.empty()) return {true, Exactness::exact, 1};
    const auto set = enumerate_traces(c, B, opt);
    const bool all = set.traces.size() == (std::uint64_t{1} << B.size());
    return {all, all ? Exactness::exact : set.exactness, set.traces.size()};
}

struct VcSearchOptions {
    std::size_t max_d = 6;
    std::uint64_t seed = kDefaultSeed;
    std::size_t random_candidates = 16; // random point sets tried per size
    std::size_t exhaustive_limit = 512; // finite domains: all subsets if at most this many
    EnumerationOptions enumeration{};
};

struct VcDimResult {
    std::size_t dimension = 0;
    bool reached_max = false; // true: the answer is ">= max_d"
    Exactness exactness = Exactness::exact;
    PointSet witness;         // a shattered set of size `dimension`
    std::size_t candidates_tried = 0;
};

namespace detail {

inline std::vector<PointSet> subsets_of_domain(const PointSet& domain, std::size_t d,
                                               const VcSearchOptions& opt, Rng& rng) {
    std::vector<PointSet> out;
    const std::size_t D = domain.size();
    if (d > D) return out;
    const Count all = binomial(D, d);
    auto make = [&](const std::vector<std::size_t>& idx) {
        std::vector<Point> pts;
        for (auto i : idx) pts.push_back(domain[i]);
        out.emplace_back(domain.dim(), std::move(pts));
    };
    std::vector<std::size_t> idx(d);
    if (!all.saturated && all.value <= opt.exhaustive_limit) {
        for (std::size_t i = 0; i < d; ++i) idx[i] = i;
        while (true) {
            make(idx);
            std::size_t pos = d;
            while (pos > 0 && idx[pos - 1] == D - (d - pos + 1)) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < d; ++i) idx[i] = idx[i - 1] + 1;
        }
        return out;
    }
    for (std::size_t i = 0; i < d; ++i) idx[i] = i;
    make(idx);
    std::vector<std::size_t> perm(D);
    for (std::size_t r = 0; r < opt.random_candidates; ++r) {
        for (std::size_t i = 0; i < D; ++i) perm[i] = i;
        for (std::size_t i = 0; i < d; ++i) std::swap(perm[i], perm[i + rng.below(D - i)]);
        idx.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(d));
        std::sort(idx.begin(), idx.end());
        make(idx);
    }
    return out;
}

inline PointSet scaled_grid(std::size_t n, std::size_t dim) {
    const PointSet g = grid_points(n, dim);
    double side = 0.0;
    for (const auto& p : g.points())
        for (double v : p) side = std::max(side, v);
    if (side == 0.0) return g;
    std::vector<Point> pts = g.points();
    for (auto& p : pts)
        for (auto& v : p) v = -1.0 + 2.0 * v / side;
    return PointSet(dim, std::move(pts));
}

inline std::vector<PointSet> continuous_candidates(std::size_t d, std::size_t dim,
                                                   const VcSearchOptions& opt) {
    std::vector<PointSet> out;
    if (d <= dim + 1) out.push_back(simplex_vertices(d, dim));
    out.push_back(moment_curve_points(d, dim));
    out.push_back(scaled_grid(d, dim));
    for (std::size_t r = 0; r < opt.random_candidates; ++r) {
        Rng rng(mix_seed(mix_seed(opt.seed, d), r));
        out.push_back(random_general_position(d, dim, rng));
    }
    return out;
}

} // namespace detail

/// Largest d <= max_d for which some candidate d-point set is shattered.
///
/// Candidates per size: for finite-domain classes, every d-subset of the
/// domain (or the first d points plus `random_candidates` random subsets when
/// there are too many); otherwise simplex vertices (when d <= dim + 1), the
/// moment curve, a grid, and `random_candidates` random general-position
/// draws. Failing to find a shattered set is evidence, not proof.
inline VcDimResult vc_dim_bruteforce(const HypothesisClass& c, const VcSearchOptions& opt = {}) {
    if (opt.max_d > opt.enumeration.caps.max_shatter_points)
        throw CapExceeded("max_d exceeds the shattering cap");
    VcDimResult result;
    result.witness = PointSet(input_dim(c), {});
    const PointSet* domain = nullptr;
    if (const auto* u = std::get_if<UnionOfPointsClass>(&c)) domain = &u->domain();
    if (const auto* e = std::get_if<ExplicitFiniteClass>(&c)) domain = &e->domain();
    Rng rng(opt.seed);
    bool any_uncertain = false;
    for (std::size_t d = 1; d <= opt.max_d; ++d) {
        const auto candidates = domain ? detail::subsets_of_domain(*domain, d, opt, rng)
                                       : detail::continuous_candidates(d, input_dim(c), opt);
        for (const auto& B : candidates) {
            ++result.candidates_tried;
            const auto s = is_shattered(c, B, opt.enumeration);
            if (s.exactness == Exactness::lower_bound) any_uncertain = true;
            if (s.shattered) {
                result.dimension = d;
                result.witness = B;
                break;
            }
        }
    }
    result.reached_max = result.dimension == opt.max_d;
    result.exactness = any_uncertain || result.reached_max ? Exactness::lower_bound : Exactness::exact;
    return result;
}

// ---------------------------------------------------------------------------
// Growth estimates

enum class GrowthMethod { exact, sampled, oracle };

inline GrowthMethod parse_growth_method(std::string_view s) {
    if (s == "exact") return GrowthMethod::exact;
    if (s == "sampled") return GrowthMethod::sampled;
    if (s == "oracle") return GrowthMethod::oracle;
    throw SchemaError("unknown growth method '" + std::string(s) + "'");
}

struct GrowthSample {
    std::size_t n;
    std::uint64_t count;
    Exactness exactness;
};

/// tau(n) samples for one class, with the policy seed that produced them.
struct GrowthEstimate {
    std::string class_id;
    std::uint64_t seed = kDefaultSeed;
    std::vector<GrowthSample> samples;
};

/// Point-set policy: per n, the maximum count over the moment-curve set plus
/// `draws` random general-position sets (finite-domain classes: the first n
/// domain points plus `draws` random n-subsets).
struct GrowthPolicy {
    GrowthMethod method = GrowthMethod::exact;
    std::size_t draws = 4;
    std::size_t budget = 20000;
    std::uint64_t seed = kDefaultSeed;
    ExactCaps caps{};
};

inline std::vector<PointSet> growth_point_sets(const HypothesisClass& c, std::size_t n,
                                               const GrowthPolicy& policy) {
    std::vector<PointSet> sets;
    const PointSet* domain = nullptr;
    if (const auto* u = std::get_if<UnionOfPointsClass>(&c)) domain = &u->domain();
    if (const auto* e = std::get_if<ExplicitFiniteClass>(&c)) domain = &e->domain();
    const std::uint64_t base = mix_seed(policy.seed, n);
    if (domain) {
        if (n >= domain->size()) {
            sets.push_back(*domain);
            return sets;
        }
        sets.push_back(domain->prefix(n));
        VcSearchOptions opt;
        opt.random_candidates = policy.draws;
        opt.exhaustive_limit = 0;
        Rng rng(base);
        auto subsets = detail::subsets_of_domain(*domain, n, opt, rng);
        for (std::size_t i = 1; i < subsets.size(); ++i) sets.push_back(std::move(subsets[i]));
        return sets;
    }
    const std::size_t dim = input_dim(c);
    sets.push_back(moment_curve_points(n, dim));
    for (std::size_t r = 0; r < policy.draws; ++r) {
        Rng rng(mix_seed(base, r));
        sets.push_back(random_general_position(n, dim, rng));
    }
    return sets;
}

inline GrowthEstimate estimate_growth(const HypothesisClass& c, std::span<const std::size_t> ns,
                                      const GrowthPolicy& policy, std::string class_id) {
    GrowthEstimate g{std::move(class_id), policy.seed, {}};
    for (std::size_t n : ns) {
        if (policy.method == GrowthMethod::oracle) {
            const auto baseline = std::visit(
                [](const auto& cls) -> BaselineClass {
                    if constexpr (std::is_same_v<std::decay_t<decltype(cls)>, NetworkClass>)
                        throw SchemaError("growth oracle is only defined for baseline classes");
                    else
                        return cls;
                },
                c);
            const Count v = growth_function_oracle(baseline, n);
            g.samples.push_back({n, v.value, v.saturated ? Exactness::lower_bound : Exactness::exact});
            continue;
        }
        std::uint64_t best = 0;
        Exactness ex = Exactness::exact;
        const auto sets = growth_point_sets(c, n, policy);
        for (std::size_t i = 0; i < sets.size(); ++i) {
            DichotomyCount dc;
            if (policy.method == GrowthMethod::sampled) {
                dc = count_dichotomies_sampled(c, sets[i], policy.budget, mix_seed(mix_seed(policy.seed, n), 1000 + i));
            } else {
                if (std::holds_alternative<NetworkClass>(c))
                    throw SchemaError("exact growth is not available for network classes; use sampled");
                EnumerationOptions eo;
                eo.caps = policy.caps;
                const auto set = enumerate_traces(c, sets[i], eo);
                dc = {set.traces.size(), set.exactness, set.indeterminate};
            }
            if (dc.exactness == Exactness::lower_bound) ex = Exactness::lower_bound;
            best = std::max(best, dc.count);
        }
        g.samples.push_back({n, best, ex});
    }
    return g;
}

} // namespace vcdlab
