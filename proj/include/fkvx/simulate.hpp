#pragma once

#include "fkvx/model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fkvx {

// The EM discretization can touch zero even though the continuous process
// cannot; exponent evaluation needs x > 0, so states are clamped and counted.
inline constexpr double kPositivityFloor = 1e-10;

// What to do with a post-update state that leaves the admissible region.
// FloorOnly is the free-space contract (positivity clamp only). Reflect
// additionally reflects specularly at the truncation boundaries [r, R],
// which is the path-space counterpart of the PDE's homogeneous Neumann
// conditions and is what the solver comparison uses.
enum class BoundaryPolicy { FloorOnly, Reflect };

struct PathBatch {
    double start_x = 0.0;
    std::size_t n_paths = 0;
    std::size_t n_steps = 0;
    double dt = 0.0;
    std::vector<double> values;  // row-major [n_paths x (n_steps+1)]
    std::uint64_t floor_activations = 0;

    std::span<const double> path(std::size_t j) const {
        return {values.data() + j * (n_steps + 1), n_steps + 1};
    }
};

// One EM update X -> X + mu X^p dt + sigma X^q sqrt(dt) z, followed by the
// boundary policy. Returns the new state; bumps the clamp counter on floor hits.
double em_step(const ModelSpec& spec, double x, double dt, double sqrt_dt, double z,
               BoundaryPolicy policy, std::uint64_t& floor_hits);

// Simulates n_paths full trajectories from start_x with per-path-index normal
// streams. With antithetic set, path 2j+1 re-uses the draws of path 2j negated,
// so n_paths must be even.
PathBatch simulate_paths(const ModelSpec& spec, double start_x, std::size_t n_paths,
                         std::size_t n_steps, std::uint64_t master_seed, bool antithetic,
                         BoundaryPolicy policy = BoundaryPolicy::FloorOnly);

} // namespace fkvx
