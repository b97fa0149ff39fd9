#pragma once

#include "dichotomy.hpp"
#include "errors.hpp"
#include "hypothesis_class.hpp"
#include "point_set.hpp"
#include "rng.hpp"
#include "trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

namespace vcdlab {

/// Finite-support distribution D on labelled points.
class DiscreteDistribution {
public:
    static constexpr double kSumTolerance = 1e-12;

    DiscreteDistribution(PointSet support, std::vector<double> probabilities, Trace true_labels)
        : support_(std::move(support)), probabilities_(std::move(probabilities)),
          labels_(std::move(true_labels)) {
        if (support_.empty()) throw SchemaError("distribution support must be nonempty");
        if (probabilities_.size() != support_.size())
            throw SchemaError("probabilities must have one entry per support point");
        if (labels_.size() != support_.size()) throw SchemaError("labels must have one entry per support point");
        double sum = 0.0;
        cumulative_.reserve(probabilities_.size());
        for (double p : probabilities_) {
            if (!(p >= 0.0) || !std::isfinite(p)) throw SchemaError("probabilities must be nonnegative");
            sum += p;
            cumulative_.push_back(sum);
        }
        if (std::fabs(sum - 1.0) > kSumTolerance) throw SchemaError("probabilities must sum to 1");
    }

    static DiscreteDistribution uniform(PointSet support, Trace true_labels) {
        const std::size_t n = support.size();
        return DiscreteDistribution(std::move(support), std::vector<double>(n, 1.0 / static_cast<double>(n)),
                                    std::move(true_labels));
    }

    const PointSet& support() const noexcept { return support_; }
    const std::vector<double>& probabilities() const noexcept { return probabilities_; }
    const Trace& true_labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return support_.size(); }

    /// k i.i.d. support indices (with replacement).
    std::vector<std::size_t> sample(std::size_t k, Rng& rng) const {
        std::vector<std::size_t> s(k);
        for (auto& i : s) i = draw_categorical(rng, cumulative_);
        return s;
    }

private:
    PointSet support_;
    std::vector<double> probabilities_;
    Trace labels_;
    std::vector<double> cumulative_;
};

/// L_D(h) for a hypothesis with trace `t` on the support.
inline double true_loss(const Trace& t, const DiscreteDistribution& D) {
    if (t.size() != D.size()) throw DimensionMismatch(D.size(), t.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < D.size(); ++i)
        if (t[i] != D.true_labels()[i]) loss += D.probabilities()[i];
    return loss;
}

/// L_S(h): fraction of the sampled support indices that `t` misclassifies.
inline double empirical_loss(const Trace& t, const DiscreteDistribution& D, std::span<const std::size_t> S) {
    if (t.size() != D.size()) throw DimensionMismatch(D.size(), t.size());
    if (S.empty()) throw SchemaError("empirical loss needs a nonempty sample");
    std::size_t wrong = 0;
    for (auto i : S) {
        if (i >= D.size()) throw SchemaError("sample index outside the support");
        if (t[i] != D.true_labels()[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(S.size());
}

/// max over `traces` of |L_D(t) - L_S(t)|.
///
/// Both losses depend on a hypothesis only through its trace on the support,
/// so maximizing over the realizable traces is maximizing over the class.
inline double sup_deviation(std::span<const Trace> traces, const DiscreteDistribution& D,
                            std::span<const std::size_t> S) {
    if (S.empty()) throw SchemaError("sup deviation needs a nonempty sample");
    std::vector<std::size_t> hits(D.size(), 0);
    for (auto i : S) {
        if (i >= D.size()) throw SchemaError("sample index outside the support");
        ++hits[i];
    }
    const double k = static_cast<double>(S.size());
    double best = 0.0;
    for (const auto& t : traces) {
        if (t.size() != D.size()) throw DimensionMismatch(D.size(), t.size());
        double ld = 0.0;
        std::size_t wrong = 0;
        for (std::size_t i = 0; i < D.size(); ++i)
            if (t[i] != D.true_labels()[i]) {
                ld += D.probabilities()[i];
                wrong += hits[i];
            }
        best = std::max(best, std::fabs(ld - static_cast<double>(wrong) / k));
    }
    return std::min(best, 1.0);
}

enum class SupMethod { exact_trace_enumeration, sampled_hypotheses };

inline std::string_view to_string(SupMethod m) {
    return m == SupMethod::exact_trace_enumeration ? "exact_trace_enumeration" : "sampled_hypotheses";
}

/// The realizable traces of a class on the support of D, and how they were found.
struct SupportTraces {
    std::vector<Trace> traces;
    SupMethod method = SupMethod::exact_trace_enumeration;
};

inline SupportTraces support_traces(const HypothesisClass& c, const DiscreteDistribution& D,
                                    const EnumerationOptions& opt = {}) {
    const auto set = enumerate_traces(c, D.support(), opt);
    return {set.traces, set.exactness == Exactness::exact ? SupMethod::exact_trace_enumeration
                                                         : SupMethod::sampled_hypotheses};
}

struct SupResult {
    double value = 0.0;
    SupMethod method = SupMethod::exact_trace_enumeration; // sampled: value is a lower bound
};

/// Supremum of |L_D(h) - L_S(h)| over the whole class.
inline SupResult sup_deviation_exact(const HypothesisClass& c, const DiscreteDistribution& D,
                                     std::span<const std::size_t> S, const EnumerationOptions& opt = {}) {
    const auto st = support_traces(c, D, opt);
    return {sup_deviation(st.traces, D, S), st.method};
}

struct UCExperimentResult {
    std::uint64_t k = 0;
    double eps = 0.0;
    double delta_target = 0.0; // informational; 0 when not supplied
    std::size_t trials = 0;
    std::size_t failures = 0;
    double empirical_rate = 0.0;
    std::uint64_t seed = kDefaultSeed;
    SupMethod sup_method = SupMethod::exact_trace_enumeration;
    double mean_sup = 0.0;
    double sd_sup = 0.0;
};

struct UCOptions {
    double eps = 0.1;
    std::uint64_t k = 1;
    std::size_t trials = 100;
    std::uint64_t seed = kDefaultSeed;
    double delta_target = 0.0;
    unsigned threads = 1;
};

/// Monte Carlo estimate of P[sup_h |L_D(h) - L_S(h)| > eps] over S ~ D^k.
///
/// Trial t draws its sample from the stream mix_seed(seed, t), so results do
/// not depend on the thread count.
inline UCExperimentResult run_uc_experiment(const SupportTraces& st, const DiscreteDistribution& D,
                                            const UCOptions& opt) {
    if (opt.trials == 0) throw SchemaError("trials must be at least 1");
    if (opt.k == 0) throw SchemaError("sample size k must be at least 1");
    std::vector<double> sups(opt.trials);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            Rng rng(mix_seed(opt.seed, t));
            const auto S = D.sample(opt.k, rng);
            sups[t] = sup_deviation(st.traces, D, S);
        }
    };
    const unsigned threads = std::max(1U, std::min<unsigned>(opt.threads, static_cast<unsigned>(opt.trials)));
    if (threads == 1) {
        work(0, opt.trials);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (opt.trials + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            const std::size_t b = w * chunk;
            const std::size_t e = std::min(opt.trials, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
    }
    UCExperimentResult r;
    r.k = opt.k;
    r.eps = opt.eps;
    r.delta_target = opt.delta_target;
    r.trials = opt.trials;
    r.seed = opt.seed;
    r.sup_method = st.method;
    double sum = 0.0;
    for (double s : sups) {
        if (s > opt.eps) ++r.failures;
        sum += s;
    }
    r.empirical_rate = static_cast<double>(r.failures) / static_cast<double>(r.trials);
    r.mean_sup = sum / static_cast<double>(r.trials);
    double ss = 0.0;
    for (double s : sups) ss += (s - r.mean_sup) * (s - r.mean_sup);
    r.sd_sup = r.trials > 1 ? std::sqrt(ss / static_cast<double>(r.trials - 1)) : 0.0;
    return r;
}

inline UCExperimentResult run_uc_experiment(const HypothesisClass& c, const DiscreteDistribution& D,
                                            const UCOptions& opt, const EnumerationOptions& enumeration = {}) {
    return run_uc_experiment(support_traces(c, D, enumeration), D, opt);
}

} // namespace vcdlab
