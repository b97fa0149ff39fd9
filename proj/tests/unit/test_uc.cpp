#include <vcdlab/uc.hpp>

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

using namespace vcdlab;

namespace {

PointSet line_domain(std::size_t n) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(i)});
    return PointSet(1, std::move(pts));
}

PointSet planar_points(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return random_general_position(n, 2, rng);
}

// Brute force: every support labelling with at most m ones, losses computed
// directly from their definitions.
double union_sup_oracle(const DiscreteDistribution& D, const std::vector<std::size_t>& S, std::size_t m) {
    const std::size_t n = D.size();
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > m) continue;
        double ld = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (((mask >> i) & 1U) != static_cast<unsigned>(D.true_labels()[i])) ld += D.probabilities()[i];
        std::size_t wrong = 0;
        for (auto i : S)
            if (((mask >> i) & 1U) != static_cast<unsigned>(D.true_labels()[i])) ++wrong;
        best = std::max(best, std::fabs(ld - static_cast<double>(wrong) / static_cast<double>(S.size())));
    }
    return best;
}

} // namespace

TEST(Losses, Examples) {
    const auto D = DiscreteDistribution::uniform(line_domain(4), Trace::parse("0011"));
    EXPECT_DOUBLE_EQ(true_loss(Trace::parse("0011"), D), 0.0);
    EXPECT_DOUBLE_EQ(true_loss(Trace::parse("1100"), D), 1.0);
    EXPECT_DOUBLE_EQ(true_loss(Trace::parse("0001"), D), 0.25);
    const std::vector<std::size_t> S{2, 2, 0, 1};
    EXPECT_DOUBLE_EQ(empirical_loss(Trace::parse("0001"), D, S), 0.5);
    EXPECT_DOUBLE_EQ(empirical_loss(Trace::parse("0011"), D, S), 0.0);
    EXPECT_THROW(true_loss(Trace::parse("001"), D), DimensionMismatch);
    EXPECT_THROW(empirical_loss(Trace::parse("0011"), D, std::vector<std::size_t>{}), SchemaError);
}

TEST(SupDeviation, MatchesUnionBruteForce) {
    const auto D = DiscreteDistribution::uniform(line_domain(6), Trace::parse("010000"));
    const std::vector<std::size_t> S{1, 3, 3, 5};
    for (std::size_t m = 1; m <= 3; ++m) {
        const HypothesisClass c = UnionOfPointsClass(m, line_domain(6));
        const auto r = sup_deviation_exact(c, D, S);
        EXPECT_EQ(r.method, SupMethod::exact_trace_enumeration);
        EXPECT_NEAR(r.value, union_sup_oracle(D, S, m), 1e-12) << "m=" << m;
    }
}

TEST(SupDeviation, UnionBruteForceProperty) {
    Rng rng(77);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 3 + rng.below(6);
        std::vector<double> p(n);
        double total = 0.0;
        for (auto& x : p) total += (x = rng.uniform() + 0.01);
        for (auto& x : p) x /= total;
        p.back() = 1.0;
        for (std::size_t i = 0; i + 1 < n; ++i) p.back() -= p[i];
        Trace labels(n);
        labels.set(rng.below(n), true);
        const DiscreteDistribution D(line_domain(n), p, labels);
        const auto S = D.sample(1 + rng.below(10), rng);
        const std::size_t m = 1 + rng.below(3);
        const HypothesisClass c = UnionOfPointsClass(m, line_domain(n));
        EXPECT_NEAR(sup_deviation_exact(c, D, S).value, union_sup_oracle(D, S, m), 1e-12);
    }
}

TEST(SupDeviation, SingleTraceClass) {
    const auto dom = line_domain(4);
    const auto D = DiscreteDistribution::uniform(dom, Trace::parse("0000"));
    const HypothesisClass c = ExplicitFiniteClass(dom, {Trace::parse("1000")});
    const std::vector<std::size_t> S{0, 0, 1, 2};
    // L_D = 1/4, L_S = 1/2.
    EXPECT_DOUBLE_EQ(sup_deviation_exact(c, D, S).value, 0.25);
}

TEST(SupDeviation, OnePointSupportIsZero) {
    const auto D = DiscreteDistribution::uniform(line_domain(1), Trace::parse("1"));
    const HypothesisClass c = LinearThresholdClass{1};
    EXPECT_DOUBLE_EQ(sup_deviation_exact(c, D, std::vector<std::size_t>{0, 0, 0}).value, 0.0);
}

TEST(SupDeviation, AllLabellingsClosedForm) {
    // Over every labelling the sup is the larger of the positive and negative
    // mass of P - P_S.
    const auto D = DiscreteDistribution::uniform(line_domain(5), Trace::parse("00000"));
    const std::vector<std::size_t> S{0, 0, 0, 4};
    std::vector<Trace> all;
    for (std::uint64_t mask = 0; mask < 32; ++mask) all.push_back(Trace::from_mask(mask, 5));
    // P - P_S = (0.2-0.75, 0.2, 0.2, 0.2, 0.2-0.25)
    EXPECT_NEAR(sup_deviation(all, D, S), 0.6, 1e-12);
}

TEST(SupDeviation, SupersetIsNoSmaller) {
    Rng rng(5);
    const auto pts = planar_points(6, 11);
    const auto D = DiscreteDistribution::uniform(pts, Trace::parse("110010"));
    const HypothesisClass ltf = LinearThresholdClass{2};
    const auto base = support_traces(ltf, D).traces;
    std::vector<Trace> all;
    for (std::uint64_t mask = 0; mask < 64; ++mask) all.push_back(Trace::from_mask(mask, 6));
    for (int rep = 0; rep < 30; ++rep) {
        const auto S = D.sample(1 + rng.below(12), rng);
        std::vector<Trace> subset(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(rng.below(base.size()) + 1));
        const double a = sup_deviation(subset, D, S);
        const double b = sup_deviation(base, D, S);
        const double c = sup_deviation(all, D, S);
        EXPECT_LE(a, b + 1e-15);
        EXPECT_LE(b, c + 1e-15);
    }
}

TEST(Distribution, Validation) {
    const auto dom = line_domain(3);
    EXPECT_THROW(DiscreteDistribution(dom, {0.5, 0.5}, Trace::parse("000")), SchemaError);
    EXPECT_THROW(DiscreteDistribution(dom, {0.5, 0.5, 0.5}, Trace::parse("000")), SchemaError);
    EXPECT_THROW(DiscreteDistribution(dom, {1.5, -0.5, 0.0}, Trace::parse("000")), SchemaError);
    EXPECT_THROW(DiscreteDistribution(dom, {0.5, 0.5, 0.0}, Trace::parse("00")), SchemaError);
    EXPECT_NO_THROW(DiscreteDistribution(dom, {0.5, 0.5, 0.0}, Trace::parse("010")));
}

TEST(Distribution, SamplingFollowsProbabilities) {
    const DiscreteDistribution D(line_domain(3), {0.1, 0.6, 0.3}, Trace::parse("000"));
    Rng rng(1);
    const auto S = D.sample(60000, rng);
    std::array<std::size_t, 3> hits{};
    for (auto i : S) ++hits[i];
    EXPECT_NEAR(hits[0] / 60000.0, 0.1, 0.01);
    EXPECT_NEAR(hits[1] / 60000.0, 0.6, 0.01);
    EXPECT_NEAR(hits[2] / 60000.0, 0.3, 0.01);
}

TEST(UCExperiment, LargeEpsilonNeverFails) {
    const auto D = DiscreteDistribution::uniform(planar_points(6, 3), Trace::parse("000111"));
    UCOptions opt;
    opt.eps = 1.0;
    opt.k = 3;
    opt.trials = 50;
    const auto r = run_uc_experiment(LinearThresholdClass{2}, D, opt);
    EXPECT_EQ(r.failures, 0U);
    EXPECT_EQ(r.empirical_rate, 0.0);
}

TEST(UCExperiment, ReproducibleAndThreadIndependent) {
    const auto D = DiscreteDistribution::uniform(planar_points(8, 9), Trace::parse("01100110"));
    UCOptions opt;
    opt.eps = 0.2;
    opt.k = 25;
    opt.trials = 64;
    opt.seed = 1234;
    const auto st = support_traces(LinearThresholdClass{2}, D);
    const auto a = run_uc_experiment(st, D, opt);
    const auto b = run_uc_experiment(st, D, opt);
    opt.threads = 4;
    const auto c = run_uc_experiment(st, D, opt);
    EXPECT_EQ(a.failures, b.failures);
    EXPECT_EQ(a.failures, c.failures);
    EXPECT_EQ(a.mean_sup, c.mean_sup);
    EXPECT_EQ(a.sd_sup, c.sd_sup);
    opt.seed = 4321;
    const auto d = run_uc_experiment(st, D, opt);
    EXPECT_NE(a.mean_sup, d.mean_sup);
}

TEST(UCExperiment, LargerSamplesConcentrate) {
    const auto D = DiscreteDistribution::uniform(planar_points(8, 21), Trace::parse("00110101"));
    const auto st = support_traces(LinearThresholdClass{2}, D);
    UCOptions opt;
    opt.eps = 0.15;
    opt.trials = 300;
    opt.k = 30;
    const auto small = run_uc_experiment(st, D, opt);
    opt.k = 120;
    const auto large = run_uc_experiment(st, D, opt);
    EXPECT_LE(large.empirical_rate, small.empirical_rate);
    EXPECT_LT(large.mean_sup, small.mean_sup);
}

TEST(UCExperiment, RejectsDegenerateOptions) {
    const auto D = DiscreteDistribution::uniform(line_domain(2), Trace::parse("01"));
    UCOptions opt;
    opt.trials = 0;
    EXPECT_THROW(run_uc_experiment(LinearThresholdClass{1}, D, opt), SchemaError);
    opt.trials = 1;
    opt.k = 0;
    EXPECT_THROW(run_uc_experiment(LinearThresholdClass{1}, D, opt), SchemaError);
}
