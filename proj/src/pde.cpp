#include "fkvx/pde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fkvx {

LogGrid make_log_grid(double r, double R, std::size_t n_x) {
    if (!(0.0 < r && r < R))
        throw std::invalid_argument("make_log_grid: need 0 < r < R");
    if (n_x < 3)
        throw std::invalid_argument("make_log_grid: need at least 3 nodes");
    LogGrid grid;
    grid.y_min = std::log(r);
    grid.y_max = std::log(R);
    grid.n_x = n_x;
    grid.dy = (grid.y_max - grid.y_min) / static_cast<double>(n_x - 1);
    grid.nodes_y.resize(n_x);
    grid.nodes_x.resize(n_x);
    for (std::size_t i = 0; i < n_x; ++i) {
        grid.nodes_y[i] = grid.y_min + static_cast<double>(i) * grid.dy;
        grid.nodes_x[i] = std::exp(grid.nodes_y[i]);
    }
    // Pin the endpoints exactly.
    grid.nodes_y.back() = grid.y_max;
    grid.nodes_x.front() = r;
    grid.nodes_x.back() = R;
    return grid;
}

TransformedCoefficients build_coefficients(const ModelSpec& spec, const LogGrid& grid) {
    TransformedCoefficients coeffs;
    const std::size_t n = grid.n_x;
    coeffs.A.resize(n);
    coeffs.B.resize(n);
    coeffs.C.resize(n);
    const double half_sigma2 = 0.5 * spec.sigma * spec.sigma;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = grid.nodes_y[i];
        const double x = grid.nodes_x[i];
        const double a = half_sigma2 * std::exp(y * (2.0 * spec.q.eval(x) - 2.0));
        const double b = spec.mu * std::exp(y * (spec.p.eval(x) - 1.0)) - a;
        const double c = spec.V(x);
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
            throw std::runtime_error("build_coefficients: non-finite coefficient at node " +
                                     std::to_string(i));
        if (a <= 0.0)
            throw std::runtime_error("build_coefficients: parabolicity lost (A <= 0) at node " +
                                     std::to_string(i));
        if (c < 0.0)
            throw std::runtime_error("build_coefficients: potential negative at node " +
                                     std::to_string(i));
        // Central first derivatives need |B| dy <= 2A for the no-pivot sweep
        // to stay diagonally dominant.
        if (std::abs(b) * grid.dy > 2.0 * a)
            throw std::runtime_error("build_coefficients: cell Peclet bound violated at node " +
                                     std::to_string(i));
        coeffs.A[i] = a;
        coeffs.B[i] = b;
        coeffs.C[i] = c;
    }
    return coeffs;
}

namespace {

// Thomas sweep for a tridiagonal system; no pivoting, callers guarantee
// diagonal dominance.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0)
            throw std::runtime_error("cn_step: zero pivot at node " + std::to_string(i - 1));
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0)
        throw std::runtime_error("cn_step: zero pivot at node " + std::to_string(n - 1));
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

} // namespace

std::vector<double> cn_step(const TransformedCoefficients& coeffs, const std::vector<double>& v,
                            double dy, double dt) {
    const std::size_t n = v.size();
    const double half_dt = 0.5 * dt;

    // Row i of L: l v_{i-1} + d v_i + u v_{i+1}. Ghost mirroring makes the
    // boundary rows l=0,d=-2a-c,u=2a and l=2a,d=-2a-c,u=0 (the convective
    // term cancels there since v_{i+1} - v_{i-1} = 0).
    std::vector<double> lower(n), diag(n), upper(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = coeffs.A[i] / (dy * dy);
        const double b = coeffs.B[i] / (2.0 * dy);
        const double c = coeffs.C[i];
        double l, d, u;
        if (i == 0) {
            l = 0.0;
            d = -2.0 * a - c;
            u = 2.0 * a;
        } else if (i == n - 1) {
            l = 2.0 * a;
            d = -2.0 * a - c;
            u = 0.0;
        } else {
            l = a - b;
            d = -2.0 * a - c;
            u = a + b;
        }
        // Explicit half: rhs = (I + dt/2 L) v
        const double vm = i > 0 ? v[i - 1] : 0.0;
        const double vp = i + 1 < n ? v[i + 1] : 0.0;
        rhs[i] = v[i] + half_dt * (l * vm + d * v[i] + u * vp);
        // Implicit half: (I - dt/2 L)
        lower[i] = -half_dt * l;
        diag[i] = 1.0 - half_dt * d;
        upper[i] = -half_dt * u;
    }
    solve_tridiagonal(lower, diag, upper, rhs);
    return rhs;
}

GridSolution solve_pde(const ModelSpec& spec, const LogGrid& grid, std::size_t n_t,
                       std::size_t snapshot_stride) {
    if (n_t == 0)
        throw std::invalid_argument("solve_pde: n_t must be positive");
    const double dt = spec.T / static_cast<double>(n_t);
    const TransformedCoefficients coeffs = build_coefficients(spec, grid);

    GridSolution sol;
    sol.grid = grid;
    std::vector<double> v(grid.n_x);
    for (std::size_t i = 0; i < grid.n_x; ++i) {
        v[i] = spec.f(grid.nodes_x[i]);
        if (!std::isfinite(v[i]))
            throw std::runtime_error("solve_pde: non-finite initial value at node " +
                                     std::to_string(i));
    }
    sol.times.push_back(0.0);
    sol.values.push_back(v);
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    sol.min_over_run = *mn;
    sol.max_over_run = *mx;

    for (std::size_t k = 1; k <= n_t; ++k) {
        v = cn_step(coeffs, v, grid.dy, dt);
        for (double vi : v) {
            sol.min_over_run = std::min(sol.min_over_run, vi);
            sol.max_over_run = std::max(sol.max_over_run, vi);
        }
        const bool snapshot = snapshot_stride != 0 && k % snapshot_stride == 0;
        if (snapshot && k != n_t) {
            sol.times.push_back(static_cast<double>(k) * dt);
            sol.values.push_back(v);
        }
    }
    sol.times.push_back(spec.T);
    sol.values.push_back(std::move(v));
    return sol;
}

} // namespace fkvx
