#include "fkvx/mc.hpp"

#include "fkvx/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace fkvx {

double path_functional(const ModelSpec& spec, std::span<const double> path, double dt) {
    if (path.size() < 2)
        throw std::invalid_argument("path_functional: path needs at least two states");
    double vsum = 0.0;
    for (std::size_t n = 0; n + 1 < path.size(); ++n) {
        const double v = spec.V(path[n]);
        if (!std::isfinite(v))
            throw std::runtime_error("path_functional: non-finite V at step " + std::to_string(n));
        vsum += v;
    }
    const double fx = spec.f(path.back());
    if (!std::isfinite(fx))
        throw std::runtime_error("path_functional: non-finite payoff at terminal state");
    return fx * std::exp(-vsum * dt);
}

namespace {

// Streaming version of simulate + path_functional for one antithetic pair.
double pair_functional(const ModelSpec& spec, double start_x, std::span<const double> draws,
                       double dt, double sqrt_dt, bool antithetic, BoundaryPolicy policy,
                       std::uint64_t& floor_hits) {
    double acc = 0.0;
    const int replicas = antithetic ? 2 : 1;
    for (int r = 0; r < replicas; ++r) {
        const double sign = r == 0 ? 1.0 : -1.0;
        double x = start_x;
        double vsum = 0.0;
        for (double z : draws) {
            vsum += spec.V(x);
            x = em_step(spec, x, dt, sqrt_dt, sign * z, policy, floor_hits);
        }
        const double value = spec.f(x) * std::exp(-vsum * dt);
        if (!std::isfinite(value))
            throw std::runtime_error("estimate_u: non-finite path functional");
        acc += value;
    }
    return acc / replicas;
}

McEstimate reduce(double start_x, const std::vector<double>& unit_values) {
    McEstimate est;
    est.start_x = start_x;
    const std::size_t n = unit_values.size();
    double sum = 0.0;
    for (double v : unit_values)
        sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : unit_values)
        ss += (v - mean) * (v - mean);
    est.mean = mean;
    est.std_error = n > 1 ? std::sqrt(ss / (static_cast<double>(n) * (n - 1))) : 0.0;
    return est;
}

} // namespace

std::vector<McEstimate> estimate_u(const ModelSpec& spec, std::span<const double> start_points,
                                   std::size_t n_paths, std::size_t n_steps,
                                   std::uint64_t master_seed, const McOptions& options) {
    if (options.antithetic && n_paths % 2 != 0)
        throw std::invalid_argument("estimate_u: antithetic requires an even path count");
    if (n_steps == 0 || n_paths == 0)
        throw std::invalid_argument("estimate_u: n_paths and n_steps must be positive");

    const std::size_t n_units = options.antithetic ? n_paths / 2 : n_paths;
    const double dt = spec.T / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(dt);

    // Draws are generated once per path-index stream and shared read-only by
    // every starting point (common random numbers) and every worker.
    std::vector<double> draws(n_units * n_steps);
    for (std::size_t s = 0; s < n_units; ++s) {
        NormalStream stream(master_seed, s);
        stream.fill({draws.data() + s * n_steps, n_steps});
    }

    std::vector<McEstimate> estimates(start_points.size());
    auto run_range = [&](std::size_t begin, std::size_t end) {
        std::vector<double> unit_values(n_units);
        for (std::size_t i = begin; i < end; ++i) {
            std::uint64_t floor_hits = 0;
            for (std::size_t s = 0; s < n_units; ++s) {
                unit_values[s] =
                    pair_functional(spec, start_points[i], {draws.data() + s * n_steps, n_steps},
                                    dt, sqrt_dt, options.antithetic, options.policy, floor_hits);
            }
            estimates[i] = reduce(start_points[i], unit_values);
            estimates[i].n_paths = n_paths;
        }
    };

    const int n_threads = std::max(1, options.n_threads);
    if (n_threads == 1 || start_points.size() <= 1) {
        run_range(0, start_points.size());
    } else {
        std::vector<std::thread> workers;
        const std::size_t chunk = (start_points.size() + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const std::size_t begin = std::min(start_points.size(), t * chunk);
            const std::size_t end = std::min(start_points.size(), begin + chunk);
            if (begin < end)
                workers.emplace_back(run_range, begin, end);
        }
        for (auto& w : workers)
            w.join();
    }
    return estimates;
}

} // namespace fkvx
