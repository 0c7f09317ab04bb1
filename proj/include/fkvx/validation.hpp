#pragma once

#include "fkvx/mc.hpp"
#include "fkvx/pde.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace fkvx {

struct RunParams {
    std::size_t n_x = 400;
    std::size_t n_t = 400;
    std::size_t n_paths = 20000;
    std::size_t n_steps = 400;
    std::size_t interior_trim = 5;   // nodes excluded per side in the trimmed max
    std::size_t snapshot_stride = 0;
    int n_threads = 1;
    std::uint64_t master_seed = 20260824;
};

struct MomentBoundResult {
    double empirical = 0.0;    // mean over paths of max_n X_n^2 (discrete-time
                               // proxy for the continuous sup, so it understates)
    double theoretical = 0.0;  // (1 + 3 x0^2) e^{6 T K^2 (mu^2 T + 4 sigma^2)}
    double growth_constant = 0.0;
    bool pass = false;
};

struct StageTimes {
    double pde_seconds = 0.0;
    double mc_seconds = 0.0;
    double total_seconds = 0.0;
};

// Side-by-side solver comparison on the shared grid, plus the executable
// well-posedness checks.
struct ComparisonReport {
    std::string case_id;
    double mu = 0.0, sigma = 0.0, T = 0.0;
    double domain_r = 0.0, domain_R = 0.0;
    std::size_t n_x = 0, n_t = 0, n_paths = 0, n_steps = 0;
    std::uint64_t master_seed = 0;

    std::vector<double> xs;
    std::vector<double> u_pde;
    std::vector<double> u_sde_mean;
    std::vector<double> u_sde_std_error;
    std::vector<double> pointwise_error;  // |u_pde - u_sde_mean|

    double max_abs_error = 0.0;
    double mean_abs_error = 0.0;
    double interior_max_abs_error = 0.0;  // first/last interior_trim nodes excluded
    std::size_t interior_trim = 0;
    double mc_std_error_max = 0.0;

    double pde_min_over_run = 0.0;
    double pde_max_over_run = 0.0;
    double payoff_sup_on_grid = 0.0;

    MomentBoundResult moment_bound;
    FellerReport feller;
    StageTimes runtimes;
};

ComparisonReport run_case(const ModelSpec& spec, const std::string& label,
                          const RunParams& params);
ComparisonReport run_case(CaseId id, const RunParams& params);

MomentBoundResult moment_bound_check(const ModelSpec& spec, double x0, std::size_t n_paths,
                                     std::size_t n_steps, std::uint64_t master_seed);

// u(x,T) for the GBM special case (p = q = 1, constant potential) via Simpson
// quadrature of the lognormal terminal law. Independent of both solvers.
double gbm_quadrature_u(double mu, double sigma, double T, double v_const,
                        const std::function<double(double)>& f, double x);

struct ConvergenceLevel {
    std::size_t n_x = 0, n_t = 0;
    double dy = 0.0, dt = 0.0;
    double error = 0.0;  // max |u - u_exact| over the measurement window
};

struct ConvergenceStudy {
    std::vector<ConvergenceLevel> levels;
    std::vector<double> observed_orders;  // log2(e_k / e_{k+1})
};

// Error of the CN solution against u_exact on an interior window (the fixed
// truncation-boundary layer would otherwise mask the scheme's order). When
// u_exact is empty, a fine-grid self-reference at twice the last level is used.
ConvergenceStudy convergence_study(const ModelSpec& spec,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& levels,
                                   std::pair<double, double> window,
                                   const std::function<double(double)>& u_exact = {});

} // namespace fkvx
