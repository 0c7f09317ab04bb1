#include "fkvx/simulate.hpp"

#include "fkvx/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fkvx {

double em_step(const ModelSpec& spec, double x, double dt, double sqrt_dt, double z,
               BoundaryPolicy policy, std::uint64_t& floor_hits) {
    const double px = spec.p.eval(x);
    const double qx = spec.q.eval(x);
    double next = x + spec.mu * std::pow(x, px) * dt + spec.sigma * std::pow(x, qx) * sqrt_dt * z;
    if (policy == BoundaryPolicy::Reflect) {
        if (next < spec.domain_r)
            next = 2.0 * spec.domain_r - next;
        if (next > spec.domain_R)
            next = 2.0 * spec.domain_R - next;
    }
    if (next < kPositivityFloor) {
        next = kPositivityFloor;
        ++floor_hits;
    }
    return next;
}

PathBatch simulate_paths(const ModelSpec& spec, double start_x, std::size_t n_paths,
                         std::size_t n_steps, std::uint64_t master_seed, bool antithetic,
                         BoundaryPolicy policy) {
    if (start_x < kPositivityFloor)
        throw std::domain_error("simulate_paths: start_x below positivity floor");
    if (n_steps == 0)
        throw std::invalid_argument("simulate_paths: n_steps must be positive");
    if (antithetic && n_paths % 2 != 0)
        throw std::invalid_argument("simulate_paths: antithetic requires an even path count");

    PathBatch batch;
    batch.start_x = start_x;
    batch.n_paths = n_paths;
    batch.n_steps = n_steps;
    batch.dt = spec.T / static_cast<double>(n_steps);
    batch.values.resize(n_paths * (n_steps + 1));

    const double sqrt_dt = std::sqrt(batch.dt);
    std::vector<double> draws(n_steps);

    const std::size_t n_streams = antithetic ? n_paths / 2 : n_paths;
    for (std::size_t s = 0; s < n_streams; ++s) {
        NormalStream stream(master_seed, s);
        stream.fill(draws);
        const std::size_t replicas = antithetic ? 2 : 1;
        for (std::size_t r = 0; r < replicas; ++r) {
            const double sign = r == 0 ? 1.0 : -1.0;
            const std::size_t j = antithetic ? 2 * s + r : s;
            double* row = batch.values.data() + j * (n_steps + 1);
            row[0] = start_x;
            double x = start_x;
            for (std::size_t n = 0; n < n_steps; ++n) {
                x = em_step(spec, x, batch.dt, sqrt_dt, sign * draws[n], policy,
                            batch.floor_activations);
                row[n + 1] = x;
            }
        }
    }
    return batch;
}

} // namespace fkvx
