#pragma once

#include "fkvx/model.hpp"

#include <vector>

namespace fkvx {

// Uniform grid in y = log(x) over [log r, log R].
struct LogGrid {
    double y_min = 0.0;
    double y_max = 0.0;
    std::size_t n_x = 0;
    double dy = 0.0;
    std::vector<double> nodes_y;
    std::vector<double> nodes_x;  // exp(nodes_y)
};

LogGrid make_log_grid(double r, double R, std::size_t n_x);

// Node values of the log-transformed operator
//   dv/dt = A v_yy + B v_y - C v,
//   A = (sigma^2/2) e^{y(2q-2)},  B = mu e^{y(p-1)} - A,  C = V(e^y).
struct TransformedCoefficients {
    std::vector<double> A, B, C;
};

// Throws on a non-finite coefficient, a non-parabolic A <= 0, a negative C,
// or loss of diagonal dominance in the implicit sweep (|B| dy > 2A).
TransformedCoefficients build_coefficients(const ModelSpec& spec, const LogGrid& grid);

// One Crank-Nicolson step (I - dt/2 L) v+ = (I + dt/2 L) v with mirrored
// ghost points v_{-1} = v_1, v_{Nx} = v_{Nx-2} folded into the end rows.
// The tridiagonal system is solved by a direct Thomas sweep.
std::vector<double> cn_step(const TransformedCoefficients& coeffs, const std::vector<double>& v,
                            double dy, double dt);

struct GridSolution {
    LogGrid grid;
    std::vector<double> times;                 // snapshot times
    std::vector<std::vector<double>> values;   // one row per snapshot
    double min_over_run = 0.0;                 // extrema over every time level
    double max_over_run = 0.0;

    const std::vector<double>& initial() const { return values.front(); }
    const std::vector<double>& final() const { return values.back(); }
};

// Marches the initial slice v0_i = f(exp(y_i)) through n_t CN steps.
// snapshot_stride = 0 keeps only the initial and final slices.
GridSolution solve_pde(const ModelSpec& spec, const LogGrid& grid, std::size_t n_t,
                       std::size_t snapshot_stride = 0);

} // namespace fkvx
