#pragma once

#include "bounds.hpp"
#include "config.hpp"
#include "csv.hpp"
#include "density.hpp"
#include "dichotomy.hpp"
#include "errors.hpp"
#include "uc.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace vcdlab::cli {

enum class Command { bounds, growth, vcdim, density, ucheck };

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kSchema = 2;
inline constexpr int kCap = 3;
inline constexpr int kIo = 4;

/// Environment variable that relocates relative output paths.
inline constexpr const char* kOutputDirEnv = "VCDLAB_OUTPUT_DIR";

struct RunConfig {
    Command command = Command::bounds;
    std::string class_path;
    std::string dist_path;
    std::string input_path; // density: growth CSV to fit

    std::vector<std::uint64_t> m;
    std::vector<double> eps;
    std::vector<double> delta;
    BoundConstants constants{};
    bool weight_count_denominator = false;

    std::vector<std::size_t> n;
    std::string method = "exact";
    std::size_t budget = 20000;
    std::size_t draws = 4;
    std::optional<std::size_t> n_min;
    std::optional<std::size_t> n_max;

    std::size_t max_d = 6;
    std::size_t candidates = 16;

    std::optional<std::uint64_t> k;
    std::size_t trials = 200;

    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    std::string output;
    std::string plot;
};

namespace detail {

inline void need(bool present, const char* flag) {
    if (!present) throw SchemaError(std::string("missing required option ") + flag);
}

inline std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return std::filesystem::path(dir) / p;
    }
    return p;
}

inline void emit(const RunConfig& cfg, const std::string& csv_text, std::ostream& out) {
    if (cfg.output.empty()) {
        out << '\n' << csv_text;
    } else {
        csv::write_file(resolve_output(cfg.output), csv_text);
        out << "wrote " << resolve_output(cfg.output).string() << '\n';
    }
}

inline void emit_plot(const RunConfig& cfg, const std::vector<csv::PlotSeries>& series, std::ostream& out) {
    if (cfg.plot.empty()) return;
    csv::emit_plot_data(series, resolve_output(cfg.plot));
    out << "wrote " << resolve_output(cfg.plot).string() << '\n';
}

inline GrowthEstimate run_growth_estimate(const RunConfig& cfg, const config::ClassSpec& spec) {
    GrowthPolicy policy;
    policy.method = parse_growth_method(cfg.method);
    policy.budget = cfg.budget;
    policy.draws = cfg.draws;
    policy.seed = cfg.seed;
    return estimate_growth(spec.cls, cfg.n, policy, spec.id);
}

inline int run_bounds(const RunConfig& cfg, std::ostream& out) {
    need(!cfg.m.empty(), "--m");
    need(!cfg.eps.empty(), "--eps");
    need(!cfg.delta.empty(), "--delta");
    std::vector<BoundReport> reports;
    out << std::left << std::setw(4) << "m" << std::setw(8) << "eps" << std::setw(8) << "delta" << std::right
        << std::setw(16) << "k_elementary" << std::setw(14) << "k_rademacher" << std::setw(14) << "k_solver_elem"
        << std::setw(14) << "k_solver_rad" << std::setw(14) << "classical_m2" << "  verified\n";
    for (auto m : cfg.m)
        for (double e : cfg.eps)
            for (double d : cfg.delta) {
                const BoundQuery q{m, e, d, cfg.constants};
                const auto r = compute_bounds(q);
                reports.push_back(r);
                const bool ok = r.verified_rademacher && r.verified_solver_elementary && r.verified_solver_rademacher &&
                                (!r.elementary_regime || r.verified_elementary);
                out << std::left << std::setw(4) << m << std::setw(8) << e << std::setw(8) << d << std::right
                    << std::setw(16) << r.k_elementary << std::setw(14) << r.k_rademacher << std::setw(14)
                    << r.k_solver_elementary << std::setw(14) << r.k_solver_rademacher << std::setw(14)
                    << std::setprecision(6) << r.classical_m2 << "  " << (ok ? "yes" : "NO") << '\n';
                if (cfg.weight_count_denominator) {
                    out << "    confidence term over m: deviation at k_rademacher = "
                        << deviation_bound_rademacher(static_cast<double>(r.k_rademacher), m, d, cfg.constants,
                                                      ConfidenceDenominator::weight_count)
                        << '\n';
                }
            }
    for (auto m : cfg.m)
        for (double e : cfg.eps)
            out << "m=" << m << " eps=" << e << ": Rademacher route smaller for all delta <= "
                << rademacher_crossover_delta(m, e, 1e-12, 0.999, cfg.constants) << '\n';
    emit(cfg, csv::bounds_csv(reports), out);
    if (!cfg.plot.empty()) {
        std::vector<csv::PlotSeries> series;
        for (auto m : cfg.m)
            for (double e : cfg.eps) {
                csv::PlotSeries elem{"k_elementary_m" + std::to_string(m) + "_eps" + csv::format_double(e), {}};
                csv::PlotSeries rad{"k_rademacher_m" + std::to_string(m) + "_eps" + csv::format_double(e), {}};
                for (int i = 0; i <= 40; ++i) {
                    const double d = std::pow(10.0, -6.0 + 0.125 * i); // 1e-6 .. 1e-1
                    const BoundQuery q{m, e, d, cfg.constants};
                    elem.points.emplace_back(d, static_cast<double>(k_elementary(q)));
                    rad.points.emplace_back(d, static_cast<double>(k_rademacher(q)));
                }
                series.push_back(std::move(elem));
                series.push_back(std::move(rad));
            }
        emit_plot(cfg, series, out);
    }
    return kOk;
}

inline int run_growth(const RunConfig& cfg, std::ostream& out) {
    need(!cfg.class_path.empty(), "--class");
    need(!cfg.n.empty(), "--n");
    const auto spec = config::load_class(cfg.class_path);
    const auto g = run_growth_estimate(cfg, spec);
    out << "class " << spec.id << " (" << class_kind_name(spec.cls) << "), method " << cfg.method << '\n';
    out << std::setw(8) << "n" << std::setw(22) << "count" << "  exactness\n";
    for (const auto& s : g.samples)
        out << std::setw(8) << s.n << std::setw(22) << s.count << "  " << to_string(s.exactness) << '\n';
    emit(cfg, csv::growth_csv(g), out);
    csv::PlotSeries series{spec.id, {}};
    for (const auto& s : g.samples) series.points.emplace_back(static_cast<double>(s.n), static_cast<double>(s.count));
    emit_plot(cfg, {series}, out);
    return kOk;
}

inline int run_density(const RunConfig& cfg, std::ostream& out) {
    GrowthEstimate g;
    if (!cfg.input_path.empty()) {
        g = csv::parse_growth_csv(config::detail::read_file(cfg.input_path));
    } else {
        need(!cfg.class_path.empty(), "--input or --class");
        need(!cfg.n.empty(), "--n");
        g = run_growth_estimate(cfg, config::load_class(cfg.class_path));
    }
    const auto d = estimate_vc_density(g, FitPolicy{cfg.n_min, cfg.n_max});
    out << "class " << g.class_id << ": density slope " << d.slope << " over n in [" << d.n_min << ", " << d.n_max
        << "] (" << d.points << " points, rms residual " << d.residual << ")\n";
    emit(cfg, csv::density_csv(g.class_id, d), out);
    return kOk;
}

inline int run_vcdim(const RunConfig& cfg, std::ostream& out) {
    need(!cfg.class_path.empty(), "--class");
    const auto spec = config::load_class(cfg.class_path);
    VcSearchOptions opt;
    opt.max_d = cfg.max_d;
    opt.seed = cfg.seed;
    opt.random_candidates = cfg.candidates;
    opt.enumeration.budget = cfg.budget;
    opt.enumeration.seed = cfg.seed;
    const auto r = vc_dim_bruteforce(spec.cls, opt);
    out << "class " << spec.id << ": VC-dimension " << (r.reached_max ? ">= " : "") << r.dimension << " ("
        << to_string(r.exactness) << ", " << r.candidates_tried << " candidate sets)\n";
    emit(cfg, csv::vcdim_csv(spec.id, cfg.max_d, r, cfg.seed), out);
    return kOk;
}

inline int run_ucheck(const RunConfig& cfg, std::ostream& out) {
    need(!cfg.class_path.empty(), "--class");
    need(!cfg.dist_path.empty(), "--dist");
    need(!cfg.eps.empty(), "--eps");
    need(!cfg.delta.empty(), "--delta");
    const auto spec = config::load_class(cfg.class_path);
    const auto dist = config::load_distribution(cfg.dist_path);
    EnumerationOptions eo;
    eo.budget = cfg.budget;
    eo.seed = cfg.seed;
    const auto traces = support_traces(spec.cls, dist, eo);
    std::vector<UCExperimentResult> results;
    for (double e : cfg.eps)
        for (double d : cfg.delta) {
            UCOptions opt;
            opt.eps = e;
            opt.delta_target = d;
            opt.trials = cfg.trials;
            opt.seed = cfg.seed;
            opt.threads = cfg.threads;
            if (cfg.k) {
                opt.k = *cfg.k;
            } else {
                std::optional<std::uint64_t> m = cfg.m.empty() ? std::optional<std::uint64_t>{} : cfg.m.front();
                if (!m) m = parameter_count(spec.cls);
                need(m.has_value(), "--k or --m (class has no parameter count)");
                opt.k = k_elementary(BoundQuery{*m, e, d, cfg.constants});
            }
            results.push_back(run_uc_experiment(traces, dist, opt));
        }
    out << "class " << spec.id << ", " << traces.traces.size() << " traces on the support ("
        << to_string(traces.method) << ")\n";
    out << std::setw(10) << "k" << std::setw(8) << "eps" << std::setw(8) << "delta" << std::setw(8) << "trials"
        << std::setw(10) << "failures" << std::setw(10) << "rate" << std::setw(12) << "mean_sup\n";
    for (const auto& r : results)
        out << std::setw(10) << r.k << std::setw(8) << r.eps << std::setw(8) << r.delta_target << std::setw(8)
            << r.trials << std::setw(10) << r.failures << std::setw(10) << r.empirical_rate << std::setw(12)
            << r.mean_sup << '\n';
    emit(cfg, csv::uc_csv(results), out);
    return kOk;
}

} // namespace detail

/// Dispatches one validated command; returns the process exit status.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
        case Command::bounds: return detail::run_bounds(cfg, out);
        case Command::growth: return detail::run_growth(cfg, out);
        case Command::density: return detail::run_density(cfg, out);
        case Command::vcdim: return detail::run_vcdim(cfg, out);
        case Command::ucheck: return detail::run_ucheck(cfg, out);
        }
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << '\n';
        return kSchema;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kSchema;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kCap;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kSchema;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}

/// Parses argv into a RunConfig and runs it.
inline int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Growth functions, VC-density and sample-complexity bounds for parameterized classifiers"};
    app.require_subcommand(1);
    RunConfig cfg;
    bool time_seed = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "RNG seed (default " + std::to_string(kDefaultSeed) + ")");
        sub->add_flag("--time-seed", time_seed, "Seed from the clock instead (not reproducible)");
        sub->add_option("-o,--output", cfg.output, "CSV output path (stdout if omitted)");
        sub->add_option("--threads", cfg.threads, "Worker threads for parallel stages")->check(CLI::PositiveNumber);
    };

    auto* bounds = app.add_subcommand("bounds", "Sample-complexity bounds for (m, eps, delta) grids");
    bounds->add_option("--m", cfg.m, "Weight count(s)")->required()->delimiter(',');
    bounds->add_option("--eps", cfg.eps, "Accuracy parameter(s) in (0,1)")->required()->delimiter(',');
    bounds->add_option("--delta", cfg.delta, "Confidence parameter(s) in (0,1)")->required()->delimiter(',');
    bounds->add_option("--C", cfg.constants.C, "Growth-cap multiplier C");
    bounds->add_option("--C-prime", cfg.constants.C_prime, "Folding constant C'");
    bounds->add_option("--C-hat", cfg.constants.C_hat, "Closed-form multiplier C_hat");
    bounds->add_flag("--m-denominator", cfg.weight_count_denominator,
                     "Also report the confidence term with m in the denominator");
    bounds->add_option("--plot", cfg.plot, "Write bound-vs-delta plot data here");
    common(bounds);

    auto* growth = app.add_subcommand("growth", "Dichotomy counts tau(n) for a class");
    growth->add_option("--class", cfg.class_path, "Class spec JSON")->required();
    growth->add_option("--n", cfg.n, "Set size(s)")->required()->delimiter(',');
    growth->add_option("--method", cfg.method, "exact | sampled | oracle")
        ->check(CLI::IsMember({"exact", "sampled", "oracle"}));
    growth->add_option("--budget", cfg.budget, "Sampled hypotheses per point set")->check(CLI::PositiveNumber);
    growth->add_option("--draws", cfg.draws, "Random point sets per n");
    growth->add_option("--plot", cfg.plot, "Write growth-curve plot data here");
    common(growth);

    auto* density = app.add_subcommand("density", "Fit the VC-density exponent to growth data");
    density->add_option("--input", cfg.input_path, "Growth CSV to fit");
    density->add_option("--class", cfg.class_path, "Class spec JSON (computes growth first)");
    density->add_option("--n", cfg.n, "Set sizes when computing growth")->delimiter(',');
    density->add_option("--method", cfg.method, "exact | sampled | oracle")
        ->check(CLI::IsMember({"exact", "sampled", "oracle"}));
    density->add_option("--budget", cfg.budget, "Sampled hypotheses per point set")->check(CLI::PositiveNumber);
    density->add_option("--draws", cfg.draws, "Random point sets per n");
    density->add_option("--n-min", cfg.n_min, "Smallest n in the fit");
    density->add_option("--n-max", cfg.n_max, "Largest n in the fit");
    common(density);

    auto* vcdim = app.add_subcommand("vcdim", "Brute-force VC-dimension search");
    vcdim->add_option("--class", cfg.class_path, "Class spec JSON")->required();
    vcdim->add_option("--max-d", cfg.max_d, "Largest set size to try");
    vcdim->add_option("--candidates", cfg.candidates, "Random candidate sets per size");
    vcdim->add_option("--budget", cfg.budget, "Sampled hypotheses (network classes)")->check(CLI::PositiveNumber);
    common(vcdim);

    auto* ucheck = app.add_subcommand("ucheck", "Monte Carlo uniform-convergence check");
    ucheck->add_option("--class", cfg.class_path, "Class spec JSON")->required();
    ucheck->add_option("--dist", cfg.dist_path, "Distribution spec JSON")->required();
    ucheck->add_option("--eps", cfg.eps, "Accuracy parameter(s)")->required()->delimiter(',');
    ucheck->add_option("--delta", cfg.delta, "Target failure probability(ies)")->required()->delimiter(',');
    ucheck->add_option("--k", cfg.k, "Sample size (default: elementary bound for the class's m)");
    ucheck->add_option("--m", cfg.m, "Weight count used for the default k")->delimiter(',');
    ucheck->add_option("--trials", cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    ucheck->add_option("--budget", cfg.budget, "Sampled hypotheses (network classes)")->check(CLI::PositiveNumber);
    common(ucheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kSchema;
    }
    if (*bounds) cfg.command = Command::bounds;
    if (*growth) cfg.command = Command::growth;
    if (*density) cfg.command = Command::density;
    if (*vcdim) cfg.command = Command::vcdim;
    if (*ucheck) cfg.command = Command::ucheck;
    if (time_seed)
        cfg.seed = static_cast<std::uint64_t>(std::chrono::system_clock::now().time_since_epoch().count());
    return run(cfg, out, err);
}

} // namespace vcdlab::cli
