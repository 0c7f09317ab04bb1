#pragma once

#include "fkvx/simulate.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fkvx {

struct McEstimate {
    double start_x = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
};

struct McOptions {
    bool antithetic = true;
    BoundaryPolicy policy = BoundaryPolicy::FloorOnly;
    int n_threads = 1;
};

// f(X_T) exp(-sum_{n=0}^{N-1} V(X_{t_n}) dt): left-endpoint discount sum,
// terminal state excluded. Throws on a non-finite f or V evaluation.
double path_functional(const ModelSpec& spec, std::span<const double> path, double dt);

// Feynman-Kac Monte Carlo estimate of u(x, T) at each starting point.
// All starting points share the same path-indexed normal streams (common
// random numbers); with antithetic on, functionals are averaged over
// (+Z, -Z) pairs and the pair averages are the i.i.d. units for the
// standard error. Results are bit-identical for any n_threads.
std::vector<McEstimate> estimate_u(const ModelSpec& spec, std::span<const double> start_points,
                                   std::size_t n_paths, std::size_t n_steps,
                                   std::uint64_t master_seed, const McOptions& options = {});

} // namespace fkvx
