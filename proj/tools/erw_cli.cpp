#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <omp.h>
#include <sstream>

#include "erw/bounds.hpp"
#include "erw/expansion.hpp"
#include "erw/greens.hpp"
#include "erw/montecarlo.hpp"
#include "erw/report.hpp"

namespace {

using namespace erw;

// Exit codes: 0 pass, 1 certificate failure / invariant violation,
// 2 usage error, 3 resource or divergence error.
enum ExitCode { kOk = 0, kFail = 1, kUsage = 2, kResource = 3 };

struct CommonOpts {
    std::string format = "json";
    std::string output;
    int threads = 0;
    bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--format", opts.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output", opts.output, "Write the report here instead of stdout");
    cmd->add_option("--threads", opts.threads, "OpenMP thread count (0 = runtime default)");
    cmd->add_flag("--no-timestamp", opts.no_timestamp, "Omit the timestamp for byte-identical reruns");
}

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.output);
        if (!out) throw std::runtime_error("cannot open output file: " + opts.output);
        out << text;
    }
}

void apply_threads(const CommonOpts& opts) {
    if (opts.threads > 0) omp_set_num_threads(opts.threads);
}

uint64_t default_seed() {
    if (const char* env = std::getenv("ERW_SEED")) return std::strtoull(env, nullptr, 10);
    return 1;
}

std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string csv_from_scan(const BetaScanReport& rep) {
    std::ostringstream os;
    os << "beta,mean,stderr,diff,diff_stderr\n";
    for (size_t b = 0; b < rep.betas.size(); ++b) {
        os << rep.betas[b] << "," << rep.estimates[b].mean[0] << ","
           << rep.estimates[b].stderr_[0] << ",";
        if (b + 1 < rep.betas.size())
            os << rep.diff_mean[b] << "," << rep.diff_stderr[b];
        else
            os << ",";
        os << "\n";
    }
    return os.str();
}

int run_greens(int d, int n, double tol, int kmax, const CommonOpts& opts) {
    Json config{{"d", d}, {"n", n}, {"tol", tol}, {"kmax", kmax}};
    Report report("greens", config, !opts.no_timestamp);
    GreensValue g = greens_power_origin(d, n, tol);
    report.add("greens_power_origin", g.value, g.error_radius, "",
               "int_0^inf t^{n-1}/(n-1)! e^-t I0(t/d)^d dt");
    double oracle = greens_series_oracle(d, n, kmax);
    report.add("greens_series_oracle", oracle, 0.0, "",
               "partial sum_k C(k+n-1,n-1) P_d(walk_k = 0), k <= kmax");
    emit(opts, report.serialize());
    return kOk;
}

int run_constants(int d, double tol, const CommonOpts& opts) {
    Json config{{"d", d}, {"tol", tol}};
    Report report("constants", config, !opts.no_timestamp);
    DerivedConstants c = derived_constants(d, tol);
    auto put = [&](const char* name, const std::optional<Interval>& v, const char* formula) {
        if (v)
            report.add(name, v->v, v->r, "", formula);
        else
            report.add(name, std::numeric_limits<double>::infinity(), 0.0, "", formula);
    };
    put("E0", c.E0, "(d/(d-1)) G_{d-1}(0) - 1");
    put("E1", c.E1, "(d/(d-1))^2 G_{d-1}^{*2}(0) - 1");
    put("a_d", c.a_d, "d/(d-1)^2 G_{d-1}^{*2}(0)");
    put("eps_d", c.eps_d,
        "2d/(d-1)^4 G_{d-1}(0) G_{d-1}^{*3}(0) + E1/(d(d-1)^2) G_{d-1}^{*2}(0)");
    emit(opts, report.serialize());
    return kOk;
}

int run_bounds(int d, double beta, int nmax_level, double tol, const CommonOpts& opts) {
    Json config{{"d", d}, {"beta", beta}, {"N-max", nmax_level}, {"tol", tol}};
    Report report("bounds", config, !opts.no_timestamp);
    BoundInputs inputs = make_bound_inputs(d, tol);
    for (int N = 1; N <= nmax_level; ++N) {
        Interval pn = pi_norm_bound(inputs, beta, N);
        DerivativePieces pieces = rho_chi_gamma_bounds(inputs, beta, N);
        std::string suffix = "(N=" + std::to_string(N) + ")";
        report.add("pi_norm_bound" + suffix, pn.v, pn.r, "", "level norm bound");
        report.add("rho" + suffix, pieces.rho.v, pieces.rho.r, "", "first-step derivative piece");
        report.add("chi" + suffix, pieces.chi.v, pieces.chi.r, "", "Delta derivative piece");
        report.add("gamma" + suffix, pieces.gamma.v, pieces.gamma.r, "",
                   "interior-kernel derivative piece");
    }
    BoundReport rep = summary_sums(inputs);
    report.add("rho_sum", rep.rho_sum.v, rep.rho_sum.r, "", "d * sum_N rho^(N) at beta=1");
    report.add("chi_sum", rep.chi_sum.v, rep.chi_sum.r, "", "d * sum_N chi^(N) at beta=1");
    report.add("gamma_sum", rep.gamma_sum.v, rep.gamma_sum.r, "", "d * sum_N gamma^(N) at beta=1");
    report.add("total", rep.total.v, rep.total.r, "", "rho_sum + chi_sum + gamma_sum");
    emit(opts, report.serialize());
    return kOk;
}

int run_certify(int d, double tol, const CommonOpts& opts) {
    Json config{{"d", d}, {"tol", tol}};
    Report report("certify", config, !opts.no_timestamp);
    Certificate cert = certify(d, tol);
    report.add("total", cert.total, 0.0, "", "d * (rho + chi + gamma sums) at beta=1");
    report.add("margin", cert.margin, 0.0, "", "1 - (total + error)");
    report.set_verdict(verdict_name(cert.verdict));
    report.set_note(cert.notes);
    emit(opts, report.serialize());
    switch (cert.verdict) {
        case Verdict::monotone_all_beta:
        case Verdict::monotone_small_beta: return kOk;
        case Verdict::inconclusive: return kFail;
        case Verdict::divergent: return kResource;
    }
    return kFail;
}

int run_expansion(int d, const std::string& beta_text, int mmax, const CommonOpts& opts) {
    ExactBeta beta = parse_beta(beta_text);
    Json config{{"d", d}, {"beta", beta_text}, {"mmax", mmax}};
    Report report("expansion", config, !opts.no_timestamp);
    auto pi = extract_pi(enumerate_two_point(d, beta, mmax));
    for (const auto& [m, site_map] : pi.by_order) {
        Rational first_moment = 0;
        Rational mass = 0;
        for (const auto& [y, v] : site_map) {
            first_moment += Rational(y.c[0]) * v;
            mass += v;
        }
        std::string suffix = "(m=" + std::to_string(m) + ")";
        report.add_exact("pi_first_moment" + suffix, rat_str(first_moment),
                         "sum_y y_1 pi_m(y), recursion-extracted");
        report.add_exact("pi_mass" + suffix, rat_str(mass), "sum_y pi_m(y)");
    }
    DriftSeries series = drift_series(d, beta, mmax);
    report.add_exact("drift_series_coord1", rat_str(series.value[0]),
                     "beta/d + sum_m sum_x x_1 pi_m(x)");
    report.add("drift_tail_bound", series.tail_bound, 0.0, "",
               "level norm bounds minus enumerated partial norms");
    emit(opts, report.serialize());
    return kOk;
}

int run_crosscheck(int d, const std::string& beta_text, int mmax, const CommonOpts& opts) {
    ExactBeta beta = parse_beta(beta_text);
    Json config{{"d", d}, {"beta", beta_text}, {"mmax", mmax}};
    Report report("crosscheck", config, !opts.no_timestamp);
    auto pi = extract_pi(enumerate_two_point(d, beta, mmax));
    bool all_equal = true;
    for (int m = 2; m <= mmax; ++m) {
        SiteMap direct_sum;
        for (int N = 1; N + 1 <= m; ++N) {
            auto level = enumerate_pi_direct(d, beta, N, m);
            for (const auto& [y, v] : level.sum_over_x()) direct_sum[y] += v;
        }
        const SiteMap& extracted = pi.by_order.at(m);
        bool equal = true;
        for (const auto& [y, v] : direct_sum) {
            auto it = extracted.find(y);
            Rational ev = it == extracted.end() ? Rational(0) : it->second;
            if (ev != v) equal = false;
        }
        for (const auto& [y, v] : extracted)
            if (v != 0 && direct_sum.find(y) == direct_sum.end()) equal = false;
        all_equal = all_equal && equal;
        report.add("oracle_equal(m=" + std::to_string(m) + ")", equal ? 1.0 : 0.0, 0.0, "bool",
                   "recursion-extracted pi_m == sum_N direct-enumerated pi_m");
    }
    report.set_verdict(all_equal ? "pass" : "fail");
    emit(opts, report.serialize());
    return all_equal ? kOk : kFail;
}

int run_simulate(int d, double beta, const SimConfig& cfg, const std::string& estimator,
                 const CommonOpts& opts) {
    Json config{{"d", d},       {"beta", beta},
                {"n", cfg.steps}, {"replicas", cfg.replicas},
                {"seed", cfg.seed}, {"window", cfg.effective_window()},
                {"estimator", estimator}};
    Report report("simulate", config, !opts.no_timestamp);
    ModelParams params(d, beta);
    auto put = [&](const DriftEstimate& est, const std::string& tag) {
        for (int j = 0; j < d; ++j)
            report.add(tag + "_coord" + std::to_string(j + 1), est.mean[j], est.stderr_[j], "",
                       tag == "endpoint" ? "mean of omega_n / n over replicas"
                                         : "(beta/d) * windowed fresh fraction");
    };
    if (estimator == "both") {
        auto [ep, fs] = estimate_drift_both(params, cfg);
        put(ep, "endpoint");
        put(fs, "fresh-site");
    } else if (estimator == "endpoint") {
        put(estimate_drift(params, cfg, Estimator::endpoint), "endpoint");
    } else {
        put(estimate_drift(params, cfg, Estimator::fresh_site), "fresh-site");
    }
    emit(opts, report.serialize());
    return kOk;
}

int run_scan(int d, const std::vector<double>& betas, const SimConfig& cfg, bool uncoupled,
             const CommonOpts& opts) {
    Json config{{"d", d},          {"betas", betas},   {"n", cfg.steps},
                {"replicas", cfg.replicas}, {"seed", cfg.seed}, {"coupled", !uncoupled}};
    BetaScanReport rep = scan_beta(d, betas, cfg, !uncoupled);
    if (opts.format == "csv") {
        emit(opts, csv_from_scan(rep));
        return kOk;
    }
    Report report("scan", config, !opts.no_timestamp);
    for (size_t b = 0; b < rep.betas.size(); ++b) {
        std::string suffix = "(beta=" + std::to_string(rep.betas[b]) + ")";
        report.add("drift" + suffix, rep.estimates[b].mean[0], rep.estimates[b].stderr_[0], "",
                   "endpoint estimator, coordinate 1");
    }
    for (size_t b = 0; b + 1 < rep.betas.size(); ++b)
        report.add("diff(" + std::to_string(rep.betas[b]) + "->" +
                       std::to_string(rep.betas[b + 1]) + ")",
                   rep.diff_mean[b], rep.diff_stderr[b], "",
                   rep.coupled ? "paired difference, common random numbers"
                               : "difference of independent runs");
    emit(opts, report.serialize());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Excited random walk drift toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    int d = 9, n = 1, mmax = 5, nmax_level = 5, kmax = 30;
    double tol = 1e-4, beta_d = 1.0;
    std::string beta_text = "1";
    std::string estimator = "both";
    std::vector<double> betas;
    bool uncoupled = false;
    SimConfig cfg;
    cfg.seed = default_seed();

    auto* c_greens = app.add_subcommand("greens", "Green's function convolution power at the origin");
    c_greens->add_option("--d", d)->required();
    c_greens->add_option("--n", n);
    c_greens->add_option("--tol", tol);
    c_greens->add_option("--kmax", kmax, "Series-oracle cutoff");
    add_common(c_greens, opts);

    auto* c_constants = app.add_subcommand("constants", "Derived Green's constants E0, E1, a_d, eps");
    c_constants->add_option("--d", d)->required();
    c_constants->add_option("--tol", tol);
    add_common(c_constants, opts);

    auto* c_bounds = app.add_subcommand("bounds", "Per-level and summed derivative bounds");
    c_bounds->add_option("--d", d)->required();
    c_bounds->add_option("--beta", beta_d);
    c_bounds->add_option("--N-max", nmax_level);
    c_bounds->add_option("--tol", tol);
    add_common(c_bounds, opts);

    auto* c_certify = app.add_subcommand("certify", "Monotonicity certificate for a dimension");
    c_certify->add_option("--d", d)->required();
    c_certify->add_option("--tol", tol);
    add_common(c_certify, opts);

    auto* c_exp = app.add_subcommand("expansion", "Exact expansion coefficients and drift series");
    c_exp->add_option("--d", d)->required();
    c_exp->add_option("--beta", beta_text);
    c_exp->add_option("--mmax", mmax);
    add_common(c_exp, opts);

    auto* c_cross = app.add_subcommand("crosscheck", "Compare the two exact coefficient routes");
    c_cross->add_option("--d", d)->required();
    c_cross->add_option("--beta", beta_text);
    c_cross->add_option("--mmax", mmax);
    add_common(c_cross, opts);

    auto* c_sim = app.add_subcommand("simulate", "Monte Carlo drift estimation");
    c_sim->add_option("--d", d)->required();
    c_sim->add_option("--beta", beta_d);
    c_sim->add_option("--n", cfg.steps);
    c_sim->add_option("--replicas", cfg.replicas);
    c_sim->add_option("--seed", cfg.seed);
    c_sim->add_option("--window", cfg.window);
    c_sim->add_option("--estimator", estimator)
        ->check(CLI::IsMember({"endpoint", "fresh-site", "both"}));
    add_common(c_sim, opts);

    auto* c_scan = app.add_subcommand("scan", "Coupled beta scan of the drift");
    c_scan->add_option("--d", d)->required();
    c_scan->add_option("--betas", betas, "Ascending grid in [0,1]")->required()->delimiter(',');
    c_scan->add_option("--n", cfg.steps);
    c_scan->add_option("--replicas", cfg.replicas);
    c_scan->add_option("--seed", cfg.seed);
    c_scan->add_flag("--uncoupled", uncoupled, "Independent streams per beta");
    add_common(c_scan, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        apply_threads(opts);
        if (*c_greens) return run_greens(d, n, tol, kmax, opts);
        if (*c_constants) return run_constants(d, tol, opts);
        if (*c_bounds) return run_bounds(d, beta_d, nmax_level, tol, opts);
        if (*c_certify) return run_certify(d, tol, opts);
        if (*c_exp) return run_expansion(d, beta_text, mmax, opts);
        if (*c_cross) return run_crosscheck(d, beta_text, mmax, opts);
        if (*c_sim) return run_simulate(d, beta_d, cfg, estimator, opts);
        if (*c_scan) return run_scan(d, betas, cfg, uncoupled, opts);
    } catch (const erw::divergence_error& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kResource;
    } catch (const erw::resource_error& e) {
        std::cerr << "resource: " << e.what() << "\n";
        return kResource;
    } catch (const erw::precision_error& e) {
        std::cerr << "precision: " << e.what() << " (best value " << e.best_value << " +- "
                  << e.best_error << ")\n";
        return kResource;
    } catch (const std::domain_error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
