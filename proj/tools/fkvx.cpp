#include "fkvx/artifacts.hpp"
#include "fkvx/config.hpp"
#include "fkvx/validation.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCheck = 4;

struct CliOptions {
    std::string case_label;
    std::string config_path;
    std::string output_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    long long n_paths = -1, n_steps = -1, n_x = -1, n_t = -1;
    long long interior_trim = -1, snapshot_stride = -1;
    double tolerance = 1e-3;
    bool check_oracle = false;
};

fkvx::RunConfig assemble_config(const CliOptions& opts) {
    fkvx::RunConfig cfg;
    if (!opts.config_path.empty())
        cfg = fkvx::parse_config_file(opts.config_path);
    fkvx::apply_env_overrides(cfg);
    if (!opts.case_label.empty())
        cfg.case_label = opts.case_label;
    if (opts.seed_set)
        cfg.master_seed = opts.seed;
    if (opts.threads > 0)
        cfg.n_threads = opts.threads;
    if (!opts.output_dir.empty())
        cfg.output_dir = opts.output_dir;
    if (opts.n_paths >= 0) cfg.n_paths = static_cast<std::size_t>(opts.n_paths);
    if (opts.n_steps >= 0) cfg.n_steps = static_cast<std::size_t>(opts.n_steps);
    if (opts.n_x >= 0) cfg.n_x = static_cast<std::size_t>(opts.n_x);
    if (opts.n_t >= 0) cfg.n_t = static_cast<std::size_t>(opts.n_t);
    if (opts.interior_trim >= 0) cfg.interior_trim = static_cast<std::size_t>(opts.interior_trim);
    if (opts.snapshot_stride >= 0)
        cfg.snapshot_stride = static_cast<std::size_t>(opts.snapshot_stride);
    return cfg;
}

int run_command(const CliOptions& opts) {
    fkvx::RunConfig cfg;
    fkvx::ModelSpec spec;
    try {
        cfg = assemble_config(opts);
        spec = fkvx::build_model(cfg);
        if (opts.check_oracle && cfg.case_label != "case3")
            throw fkvx::ConfigError("--check-oracle requires --case case3 (GBM closed form)");
    } catch (const fkvx::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    fkvx::ComparisonReport report;
    try {
        fkvx::RunParams params;
        params.n_x = cfg.n_x;
        params.n_t = cfg.n_t;
        params.n_paths = cfg.n_paths;
        params.n_steps = cfg.n_steps;
        params.interior_trim = cfg.interior_trim;
        params.snapshot_stride = cfg.snapshot_stride;
        params.n_threads = cfg.n_threads;
        params.master_seed = cfg.master_seed;
        const std::string label = cfg.case_label.empty() ? "custom" : cfg.case_label;
        report = fkvx::run_case(spec, label, params);
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }

    try {
        std::filesystem::create_directories(cfg.output_dir);
        const std::filesystem::path dir(cfg.output_dir);
        fkvx::write_solution_csv((dir / "solution.csv").string(), report);
        fkvx::write_report_text((dir / "report.txt").string(), report);
        fkvx::write_comparison_svg((dir / "comparison.svg").string(), report);
        fkvx::write_error_svg((dir / "error.svg").string(), report);

        bool ok = true;
        std::cout << fkvx::format_report(report);

        if (opts.check_oracle) {
            std::vector<double> oracle(report.xs.size());
            for (std::size_t i = 0; i < report.xs.size(); ++i)
                oracle[i] = fkvx::gbm_quadrature_u(spec.mu, spec.sigma, spec.T, spec.V(1.0),
                                                   spec.f, report.xs[i]);
            fkvx::write_oracle_csv((dir / "oracle.csv").string(), report, oracle);
            // The truncation boundary layer is excluded: the oracle solves the
            // free-space problem, both solvers the truncated Neumann one.
            const std::size_t trim = 20;
            double pde_err = 0.0, sde_err = 0.0;
            for (std::size_t i = trim; i + trim < report.xs.size(); ++i) {
                pde_err = std::max(pde_err, std::abs(report.u_pde[i] - oracle[i]));
                sde_err = std::max(sde_err, std::abs(report.u_sde_mean[i] - oracle[i]));
            }
            const double sde_allow = 5.0 * report.mc_std_error_max + 5e-4;
            std::cout << "oracle check:       pde_interior_err=" << pde_err
                      << " sde_interior_err=" << sde_err << "\n";
            if (pde_err > 1e-3 || sde_err > sde_allow) {
                std::cout << "oracle check:       FAIL\n";
                ok = false;
            }
        }

        if (report.max_abs_error > opts.tolerance) {
            std::cout << "error check:        FAIL (max_abs_error > " << opts.tolerance << ")\n";
            ok = false;
        }
        if (!report.moment_bound.pass)
            ok = false;
        if (report.feller.classification != fkvx::BoundaryClass::NonAttainable)
            ok = false;
        return ok ? kExitOk : kExitCheck;
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
}

int verify_command(const CliOptions& opts) {
    fkvx::RunConfig cfg;
    fkvx::ModelSpec spec;
    try {
        cfg = assemble_config(opts);
        spec = fkvx::build_model(cfg);
    } catch (const fkvx::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    bool ok = true;
    auto line = [&ok](const std::string& name, bool pass, const std::string& extra = "") {
        std::cout << (pass ? "PASS  " : "FAIL  ") << name;
        if (!extra.empty())
            std::cout << "  (" << extra << ")";
        std::cout << "\n";
        ok = ok && pass;
    };

    try {
        for (const char* which : {"p", "q"}) {
            const fkvx::ExponentFunction& h = which[0] == 'p' ? spec.p : spec.q;
            const auto report = fkvx::verify_class_s(h);
            if (report.status == fkvx::VerificationStatus::CertificateRequired) {
                line(std::string("class-S ") + which, false, "certificate required");
                continue;
            }
            if (report.status == fkvx::VerificationStatus::InvalidFunction) {
                line(std::string("class-S ") + which, false, "non-finite evaluation");
                continue;
            }
            for (const auto& hyp : report.hypotheses) {
                char extra[96];
                std::snprintf(extra, sizeof(extra), "worst margin %.3g at x=%.3g",
                              hyp.worst_margin, hyp.worst_x);
                line(std::string(which) + ": " + hyp.hypothesis, hyp.pass,
                     hyp.detail.empty() ? extra : hyp.detail);
            }
        }

        const auto feller = fkvx::feller_test(spec, fkvx::default_feller_probes());
        char extra[64];
        std::snprintf(extra, sizeof(extra), "liminf %.3g", feller.liminf);
        line("feller non-attainability",
             feller.classification == fkvx::BoundaryClass::NonAttainable, extra);

        if (spec.p.certificate && spec.q.certificate) {
            const double K = fkvx::linear_growth_constant(spec.p, spec.q);
            // Spot check of the linear growth bound x^{q(x)} <= K(1+x).
            bool growth_ok = true;
            for (double lx = -6.0; lx <= 6.0; lx += 0.01) {
                const double x = std::pow(10.0, lx);
                if (std::pow(x, spec.q.eval(x)) > K * (1.0 + x) * (1.0 + 1e-12)) {
                    growth_ok = false;
                    break;
                }
            }
            std::snprintf(extra, sizeof(extra), "K=%.6g", K);
            line("linear growth x^q(x) <= K(1+x)", growth_ok, extra);

            const auto mb = fkvx::moment_bound_check(spec, 1.0, std::min<std::size_t>(cfg.n_paths, 20000),
                                                     cfg.n_steps, cfg.master_seed);
            std::snprintf(extra, sizeof(extra), "empirical %.4g <= bound %.4g", mb.empirical,
                          mb.theoretical);
            line("second-moment bound", mb.pass, extra);
        } else {
            line("linear growth x^q(x) <= K(1+x)", false, "certificate required");
        }
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
    return ok ? kExitOk : kExitCheck;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-solver toolkit: Crank-Nicolson PDE vs Feynman-Kac Monte Carlo "
                 "for variable-exponent diffusions"};
    app.require_subcommand(1);

    CliOptions opts;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--case", opts.case_label, "builtin case: case1 | case2 | case3");
        cmd->add_option("--config", opts.config_path, "config file path");
        cmd->add_option("--seed", opts.seed, "master RNG seed")->each([&](const std::string&) {
            opts.seed_set = true;
        });
        cmd->add_option("--threads", opts.threads, "worker threads for the MC stage");
        cmd->add_option("--n-paths", opts.n_paths, "Monte Carlo paths");
        cmd->add_option("--n-steps", opts.n_steps, "EM time steps");
        cmd->add_option("--n-x", opts.n_x, "spatial grid nodes");
        cmd->add_option("--n-t", opts.n_t, "PDE time steps");
    };

    auto* run = app.add_subcommand("run", "run both solvers and write artifacts");
    add_common(run);
    run->add_option("--out", opts.output_dir, "output directory");
    run->add_option("--tolerance", opts.tolerance, "max |u_PDE - u_SDE| accepted (default 1e-3)");
    run->add_option("--interior-trim", opts.interior_trim, "nodes excluded per side in trimmed max");
    run->add_option("--snapshot-stride", opts.snapshot_stride, "store every k-th PDE time slice");
    run->add_flag("--check-oracle", opts.check_oracle, "also compare against the GBM quadrature oracle (case3)");

    auto* verify = app.add_subcommand("verify", "run the well-posedness hypothesis checks");
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (run->parsed())
        return run_command(opts);
    return verify_command(opts);
}
