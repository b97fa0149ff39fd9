// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <vcdlab/csv.hpp>
#include <vcdlab/vcdlab.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace vcdlab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && secs >= limit_seconds) {
        o.pass = false;
        o.detail += " [over time limit " + csv::format_double(limit_seconds) + " s]";
    }
    if (!o.pass) ++failures;
    std::printf("%s [%d] %s (%.3f s): %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
    std::fflush(stdout);
}

PointSet line_domain(std::size_t n) {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(i)});
    return PointSet(1, std::move(pts));
}

std::vector<PointSet> planar_sets() {
    std::vector<PointSet> sets;
    for (std::uint64_t s = 0; s < 3; ++s) {
        Rng rng(mix_seed(kDefaultSeed, s));
        sets.push_back(random_general_position(8, 2, rng));
    }
    return sets;
}

std::uint64_t cover_oracle(std::uint64_t n) {
    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i <= 2 && i <= n - 1; ++i) {
        std::uint64_t c = 1;
        for (std::uint64_t j = 0; j < i; ++j) c = c * (n - 1 - j) / (j + 1);
        sum += c;
    }
    return 2 * sum;
}

const std::vector<std::size_t> kDensityNs{16, 32, 64, 128};
const double kGrid[] = {0.05, 0.1, 0.2};
const std::uint64_t kGridM[] = {1, 2, 4, 8};

HypothesisClass threshold_net() {
    const ActivationSpec step(ActivationKind::threshold);
    return NetworkClass(NetworkSpec(1, {{1, 1, step}, {1, 1, step}}));
}

struct DensityRun {
    std::string csv;
    double union_slope, ltf_slope, net_slope;
    std::size_t net_params;
};

DensityRun density_run() {
    GrowthPolicy oracle;
    oracle.method = GrowthMethod::oracle;
    const auto gu = estimate_growth(UnionOfPointsClass(2, line_domain(128)), kDensityNs, oracle, "union2");
    const auto gl = estimate_growth(LinearThresholdClass{2}, kDensityNs, oracle, "ltf2");
    GrowthPolicy sampled;
    sampled.method = GrowthMethod::sampled;
    const auto net = threshold_net();
    const auto gn = estimate_growth(net, kDensityNs, sampled, "threshold_net_1x1");
    DensityRun r;
    r.union_slope = estimate_vc_density(gu).slope;
    r.ltf_slope = estimate_vc_density(gl).slope;
    const auto dn = estimate_vc_density(gn);
    r.net_slope = dn.slope;
    r.net_params = *parameter_count(net);
    r.csv = csv::growth_csv(gu) + csv::growth_csv(gl) + csv::growth_csv(gn) +
            csv::density_csv("union2", estimate_vc_density(gu)) + csv::density_csv("ltf2", estimate_vc_density(gl)) +
            csv::density_csv("threshold_net_1x1", dn);
    return r;
}

struct UcRun {
    std::string csv;
    UCExperimentResult result;
};

UcRun uc_run() {
    Rng rng(kDefaultSeed);
    auto pts = random_general_position(8, 2, rng);
    Trace labels(8);
    for (std::size_t i = 0; i < 8; ++i) labels.set(i, pts[i][0] + 0.5 * pts[i][1] > 0.0);
    const auto D = DiscreteDistribution::uniform(std::move(pts), labels);
    UCOptions opt;
    opt.eps = 0.25;
    opt.delta_target = 0.2;
    opt.k = k_elementary({3, 0.25, 0.2});
    opt.trials = 200;
    opt.seed = kDefaultSeed;
    opt.threads = 4;
    const auto r = run_uc_experiment(LinearThresholdClass{2}, D, opt);
    return {csv::uc_csv(std::vector<UCExperimentResult>{r}), r};
}

} // namespace

int main() {
    criterion(1, "Cover-count reproduction", 10.0, [] {
        std::ostringstream d;
        bool ok = true;
        for (const auto& set : planar_sets())
            for (std::size_t n = 1; n <= 8; ++n) {
                const auto c = count_dichotomies_exact_ltf(set.prefix(n));
                if (c.count != cover_oracle(n) || c.exactness != Exactness::exact || c.indeterminate) ok = false;
            }
        for (std::size_t n = 1; n <= 8; ++n) d << cover_oracle(n) << (n < 8 ? "," : "");
        return Outcome{ok, "tau(1..8) = " + d.str() + " on 3 random planar sets"};
    });

    criterion(2, "VC-dimension oracles", 60.0, [] {
        std::ostringstream d;
        VcSearchOptions opt;
        const auto ltf = vc_dim_bruteforce(LinearThresholdClass{2}, opt);
        bool ok = ltf.dimension == 3 && !ltf.reached_max;
        d << "ltf2=" << ltf.dimension;
        for (std::size_t m = 1; m <= 3; ++m) {
            const auto u = vc_dim_bruteforce(UnionOfPointsClass(m, line_domain(m + 4)), opt);
            ok = ok && u.dimension == m && !u.reached_max && u.exactness == Exactness::exact;
            d << " union" << m << "=" << u.dimension;
        }
        return Outcome{ok, d.str()};
    });

    criterion(3, "VC-density slopes", 300.0, [] {
        const auto r = density_run();
        const bool ok = r.union_slope >= 1.8 && r.union_slope <= 2.05 && r.ltf_slope >= 1.8 && r.ltf_slope <= 2.05 &&
                        r.net_params == 4 && r.net_slope <= 4.1;
        std::ostringstream d;
        d << "union2=" << r.union_slope << " ltf2=" << r.ltf_slope << " threshold net (m=" << r.net_params
          << ")=" << r.net_slope;
        return Outcome{ok, d.str()};
    });

    criterion(4, "Sauer-Shelah cap", 0.0, [] {
        std::size_t checked = 0, violations = 0;
        VcSearchOptions opt;
        const auto vc_ltf = vc_dim_bruteforce(LinearThresholdClass{2}, opt).dimension;
        for (const auto& set : planar_sets())
            for (std::size_t n = 1; n <= 8; ++n) {
                const auto c = count_dichotomies_exact_ltf(set.prefix(n));
                ++checked;
                if (c.count > sauer_shelah_cap(vc_ltf, n).value) ++violations;
            }
        for (std::size_t m = 1; m <= 3; ++m) {
            const auto dom = line_domain(m + 4);
            const UnionOfPointsClass u(m, dom);
            const auto vc = vc_dim_bruteforce(u, opt).dimension;
            for (std::size_t n = 1; n <= dom.size(); ++n) {
                const auto traces = enumerate_union_traces(u, dom.prefix(n));
                ++checked;
                if (traces.traces.size() > sauer_shelah_cap(vc, n).value) ++violations;
            }
        }
        return Outcome{violations == 0, std::to_string(checked) + " configurations, " + std::to_string(violations) +
                                            " violations"};
    });

    criterion(5, "Growth-route back-verification", 1.0, [] {
        std::size_t checked = 0, violations = 0;
        for (auto m : kGridM)
            for (double e : kGrid)
                for (double d : kGrid) {
                    const auto k = k_elementary({m, e, d});
                    const double log_tau = log_polynomial_growth(k, m);
                    if (log_tau < 16.0) continue;
                    ++checked;
                    if (deviation_bound_growth_log(log_tau, k, d) > e) ++violations;
                }
        return Outcome{violations == 0 && checked > 0,
                       std::to_string(checked) + " queries in regime, " + std::to_string(violations) + " violations"};
    });

    criterion(6, "Rademacher-route back-verification", 0.0, [] {
        std::size_t checked = 0, violations = 0;
        for (auto m : kGridM)
            for (double e : kGrid)
                for (double d : kGrid) {
                    const BoundQuery q{m, e, d};
                    const auto k = k_rademacher(q);
                    ++checked;
                    if (deviation_bound_rademacher(static_cast<double>(k), m, d) > e) ++violations;
                    if (k_solver_rademacher(q) > k) ++violations;
                }
        return Outcome{violations == 0,
                       std::to_string(checked) + " queries, " + std::to_string(violations) + " violations"};
    });

    criterion(7, "Crossover in delta", 0.0, [] {
        const double star = rademacher_crossover_delta(1, 0.1, 1e-6, 0.2);
        bool below = true;
        for (double d = 1e-6; d <= star; d *= 1.05)
            if (k_rademacher({1, 0.1, d}) >= k_elementary({1, 0.1, d})) below = false;
        const double ratio = static_cast<double>(k_elementary({1, 0.1, 1e-4})) /
                             static_cast<double>(k_rademacher({1, 0.1, 1e-4}));
        const bool ok = star > 1e-6 && star <= 0.2 && below && ratio > 10.0;
        std::ostringstream d;
        d << "delta*=" << star << " (unrestricted crossover " << rademacher_crossover_delta(1, 0.1, 1e-6, 0.999)
          << ") ratio at 1e-4=" << ratio;
        return Outcome{ok, d.str()};
    });

    criterion(8, "Uniform-convergence Monte Carlo", 300.0, [] {
        const auto r = uc_run().result;
        const double limit = 0.2 + 3.0 * std::sqrt(0.2 * 0.8 / 200.0);
        const bool ok = r.sup_method == SupMethod::exact_trace_enumeration && r.empirical_rate <= limit;
        std::ostringstream d;
        d << "k=" << r.k << " failures=" << r.failures << "/" << r.trials << " rate=" << r.empirical_rate
          << " limit=" << limit << " mean sup=" << r.mean_sup;
        return Outcome{ok, d.str()};
    });

    criterion(9, "Determinism", 0.0, [] {
        const auto a = density_run().csv + uc_run().csv;
        const auto b = density_run().csv + uc_run().csv;
        return Outcome{a == b, std::to_string(a.size()) + " CSV bytes compared"};
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
