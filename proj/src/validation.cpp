#include "fkvx/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fkvx {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

} // namespace

ComparisonReport run_case(const ModelSpec& spec, const std::string& label,
                          const RunParams& params) {
    ComparisonReport report;
    report.case_id = label;
    report.mu = spec.mu;
    report.sigma = spec.sigma;
    report.T = spec.T;
    report.domain_r = spec.domain_r;
    report.domain_R = spec.domain_R;
    report.n_x = params.n_x;
    report.n_t = params.n_t;
    report.n_paths = params.n_paths;
    report.n_steps = params.n_steps;
    report.master_seed = params.master_seed;
    report.interior_trim = params.interior_trim;

    const double t0 = now_seconds();
    const LogGrid grid = make_log_grid(spec.domain_r, spec.domain_R, params.n_x);
    const GridSolution pde = solve_pde(spec, grid, params.n_t, params.snapshot_stride);
    const double t1 = now_seconds();

    McOptions mc_opts;
    mc_opts.antithetic = true;
    mc_opts.policy = BoundaryPolicy::Reflect;  // matches the Neumann truncation
    mc_opts.n_threads = params.n_threads;
    const std::vector<McEstimate> mc =
        estimate_u(spec, grid.nodes_x, params.n_paths, params.n_steps, params.master_seed, mc_opts);
    const double t2 = now_seconds();

    report.xs = grid.nodes_x;
    report.u_pde = pde.final();
    report.pde_min_over_run = pde.min_over_run;
    report.pde_max_over_run = pde.max_over_run;

    double err_sum = 0.0;
    for (std::size_t i = 0; i < grid.n_x; ++i) {
        report.u_sde_mean.push_back(mc[i].mean);
        report.u_sde_std_error.push_back(mc[i].std_error);
        const double e = std::abs(report.u_pde[i] - mc[i].mean);
        report.pointwise_error.push_back(e);
        err_sum += e;
        report.max_abs_error = std::max(report.max_abs_error, e);
        report.mc_std_error_max = std::max(report.mc_std_error_max, mc[i].std_error);
        report.payoff_sup_on_grid = std::max(report.payoff_sup_on_grid, std::abs(spec.f(grid.nodes_x[i])));
    }
    report.mean_abs_error = err_sum / static_cast<double>(grid.n_x);

    const std::size_t trim = params.interior_trim;
    if (2 * trim < grid.n_x) {
        for (std::size_t i = trim; i < grid.n_x - trim; ++i)
            report.interior_max_abs_error =
                std::max(report.interior_max_abs_error, report.pointwise_error[i]);
    }

    report.feller = feller_test(spec, default_feller_probes());
    report.moment_bound =
        moment_bound_check(spec, 1.0, params.n_paths, params.n_steps, params.master_seed);

    const double t3 = now_seconds();
    report.runtimes.pde_seconds = t1 - t0;
    report.runtimes.mc_seconds = t2 - t1;
    report.runtimes.total_seconds = t3 - t0;
    return report;
}

ComparisonReport run_case(CaseId id, const RunParams& params) {
    return run_case(builtin_model(id), case_name(id), params);
}

MomentBoundResult moment_bound_check(const ModelSpec& spec, double x0, std::size_t n_paths,
                                     std::size_t n_steps, std::uint64_t master_seed) {
    MomentBoundResult result;
    result.growth_constant = linear_growth_constant(spec.p, spec.q);
    const double K = result.growth_constant;
    result.theoretical =
        (1.0 + 3.0 * x0 * x0) *
        std::exp(6.0 * spec.T * K * K * (spec.mu * spec.mu * spec.T + 4.0 * spec.sigma * spec.sigma));

    const PathBatch batch = simulate_paths(spec, x0, n_paths, n_steps, master_seed, true);
    double acc = 0.0;
    for (std::size_t j = 0; j < batch.n_paths; ++j) {
        double peak = 0.0;
        for (double v : batch.path(j))
            peak = std::max(peak, v * v);
        acc += peak;
    }
    result.empirical = acc / static_cast<double>(batch.n_paths);
    result.pass = result.empirical <= result.theoretical;
    return result;
}

double gbm_quadrature_u(double mu, double sigma, double T, double v_const,
                        const std::function<double(double)>& f, double x) {
    // Simpson rule over z in [-10, 10] against the standard normal density.
    const int n = 4000;  // even
    const double lo = -10.0, hi = 10.0;
    const double h = (hi - lo) / n;
    const double m = (mu - 0.5 * sigma * sigma) * T;
    const double s = sigma * std::sqrt(T);
    auto integrand = [&](double z) {
        return f(x * std::exp(m + s * z)) * std::exp(-0.5 * z * z);
    };
    double acc = integrand(lo) + integrand(hi);
    for (int i = 1; i < n; ++i)
        acc += integrand(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    const double integral = acc * h / 3.0 / std::sqrt(2.0 * M_PI);
    return std::exp(-v_const * T) * integral;
}

namespace {

double interpolate(const LogGrid& grid, const std::vector<double>& v, double x) {
    const double y = std::log(x);
    const double t = (y - grid.y_min) / grid.dy;
    const std::size_t i = std::min(grid.n_x - 2, static_cast<std::size_t>(std::max(0.0, t)));
    const double w = t - static_cast<double>(i);
    return (1.0 - w) * v[i] + w * v[i + 1];
}

} // namespace

ConvergenceStudy convergence_study(const ModelSpec& spec,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& levels,
                                   std::pair<double, double> window,
                                   const std::function<double(double)>& u_exact) {
    if (levels.empty())
        throw std::invalid_argument("convergence_study: no refinement levels");

    std::function<double(double)> reference = u_exact;
    LogGrid fine_grid;
    GridSolution fine_sol;
    if (!reference) {
        // Self-reference on a grid twice as fine as the last level.
        const auto [nx, nt] = levels.back();
        fine_grid = make_log_grid(spec.domain_r, spec.domain_R, 2 * nx);
        fine_sol = solve_pde(spec, fine_grid, 2 * nt);
        reference = [&fine_grid, &fine_sol](double x) {
            return interpolate(fine_grid, fine_sol.final(), x);
        };
    }

    ConvergenceStudy study;
    for (const auto& [nx, nt] : levels) {
        const LogGrid grid = make_log_grid(spec.domain_r, spec.domain_R, nx);
        const GridSolution sol = solve_pde(spec, grid, nt);
        ConvergenceLevel level;
        level.n_x = nx;
        level.n_t = nt;
        level.dy = grid.dy;
        level.dt = spec.T / static_cast<double>(nt);
        for (std::size_t i = 0; i < grid.n_x; ++i) {
            const double x = grid.nodes_x[i];
            if (x < window.first || x > window.second)
                continue;
            level.error = std::max(level.error, std::abs(sol.final()[i] - reference(x)));
        }
        study.levels.push_back(level);
    }
    for (std::size_t k = 0; k + 1 < study.levels.size(); ++k) {
        const double e0 = study.levels[k].error, e1 = study.levels[k + 1].error;
        study.observed_orders.push_back(e1 > 0.0 ? std::log2(e0 / e1)
                                                 : std::numeric_limits<double>::quiet_NaN());
    }
    return study;
}

} // namespace fkvx
