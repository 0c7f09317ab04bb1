#include <doctest.h>

#include "fkvx/mc.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace fkvx;

TEST_CASE("path functional closed forms") {
    ModelSpec spec = builtin_model(CaseId::Case3);

    SUBCASE("zero potential returns the terminal payoff") {
        spec.V = [](double) { return 0.0; };
        const std::vector<double> path{1.0, 2.0, 3.0};
        CHECK(path_functional(spec, path, 0.5) == std::exp(-0.1 * 3.0));
    }
    SUBCASE("constant potential discounts by exp(-V T)") {
        // default V = 0.1; 400 steps of dt = 0.0025 sum to T = 1 exactly up
        // to round-off, terminal state excluded from the Riemann sum
        std::vector<double> path(401, 1.0);
        const double expect = std::exp(-0.1) * std::exp(-0.1 * 400 * 0.0025);
        CHECK(path_functional(spec, path, 0.0025) == doctest::Approx(expect).epsilon(1e-14));
    }
    SUBCASE("frozen two-step path, exact hand computation") {
        spec.V = [](double x) { return 0.1 * x; };
        spec.f = [](double x) { return x * x; };
        const std::vector<double> path{2.0, 4.0, 3.0};
        // sum over non-terminal states: V(2) + V(4) = 0.6, dt = 0.5
        CHECK(path_functional(spec, path, 0.5) ==
              doctest::Approx(9.0 * std::exp(-0.3)).epsilon(1e-15));
    }
    SUBCASE("left endpoint rule: the terminal potential never enters") {
        spec.V = [](double x) { return x > 100.0 ? 1e9 : 0.0; };
        const std::vector<double> path{1.0, 1.0, 1000.0};  // spike only at T
        CHECK(path_functional(spec, path, 0.5) == spec.f(1000.0));
    }
    SUBCASE("non-finite evaluations raise") {
        spec.f = [](double) { return std::numeric_limits<double>::quiet_NaN(); };
        const std::vector<double> path{1.0, 1.0};
        CHECK_THROWS_AS(path_functional(spec, path, 0.5), std::runtime_error);
        const std::vector<double> tiny{1.0};
        CHECK_THROWS_AS(path_functional(builtin_model(CaseId::Case3), tiny, 0.5),
                        std::invalid_argument);
    }
}

TEST_CASE("constant data gives the exact deterministic value with zero spread") {
    ModelSpec spec = builtin_model(CaseId::Case2);
    spec.f = [](double) { return 0.7; };
    spec.V = [](double) { return 0.3; };
    const std::vector<double> xs{0.2, 1.0, 10.0};
    const auto est = estimate_u(spec, xs, 64, 16, 5);
    const double expect = 0.7 * std::exp(-0.3);
    for (const auto& e : est) {
        CHECK(e.mean == doctest::Approx(expect).epsilon(1e-13));
        CHECK(e.std_error <= 1e-15);
        CHECK(e.n_paths == 64);
    }
}

TEST_CASE("common random numbers: estimates do not depend on start-point order") {
    const auto spec = builtin_model(CaseId::Case1);
    const std::vector<double> fwd{0.5, 2.0, 9.0};
    const std::vector<double> rev{9.0, 2.0, 0.5};
    const auto a = estimate_u(spec, fwd, 200, 40, 77);
    const auto b = estimate_u(spec, rev, 200, 40, 77);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a[i].mean == b[2 - i].mean);           // bit-identical
        CHECK(a[i].std_error == b[2 - i].std_error);
    }
}

TEST_CASE("estimates are bit-identical for any thread count") {
    const auto spec = builtin_model(CaseId::Case1);
    std::vector<double> xs;
    for (int i = 0; i < 7; ++i)
        xs.push_back(0.3 + 0.9 * i);
    McOptions opts1, opts3;
    opts3.n_threads = 3;
    const auto a = estimate_u(spec, xs, 200, 40, 123, opts1);
    const auto b = estimate_u(spec, xs, 200, 40, 123, opts3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].mean == b[i].mean);
        CHECK(a[i].std_error == b[i].std_error);
    }
}

TEST_CASE("estimate_u agrees with simulate_paths + path_functional") {
    const auto spec = builtin_model(CaseId::Case2);
    const double x0 = 1.5;
    const std::size_t n_paths = 8, n_steps = 16;
    const std::uint64_t seed = 31;

    const auto batch = simulate_paths(spec, x0, n_paths, n_steps, seed, true);
    double acc = 0.0;
    for (std::size_t j = 0; j < n_paths; ++j)
        acc += path_functional(spec, batch.path(j), batch.dt);
    const double reference = acc / static_cast<double>(n_paths);

    const std::vector<double> xs{x0};
    const auto est = estimate_u(spec, xs, n_paths, n_steps, seed);
    CHECK(est[0].mean == doctest::Approx(reference).epsilon(1e-14));
}

TEST_CASE("monotonicity in the potential under shared draws") {
    ModelSpec lo = builtin_model(CaseId::Case1);
    ModelSpec hi = builtin_model(CaseId::Case1);
    lo.V = [](double) { return 0.05; };
    hi.V = [](double) { return 0.25; };
    const std::vector<double> xs{0.5, 1.0, 5.0, 20.0};
    const auto a = estimate_u(lo, xs, 400, 50, 9);
    const auto b = estimate_u(hi, xs, 400, 50, 9);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(a[i].mean > b[i].mean);  // f > 0, so a larger V strictly shrinks u
}

TEST_CASE("estimates respect the payoff bound") {
    const auto spec = builtin_model(CaseId::Case1);  // 0 < f <= 1, V >= 0
    const std::vector<double> xs{0.1, 1.0, 50.0};
    for (const auto& e : estimate_u(spec, xs, 500, 50, 2)) {
        CHECK(e.mean > 0.0);
        CHECK(e.mean < 1.0);
    }
}

TEST_CASE("antithetic pairing reduces variance for a monotone functional") {
    const auto spec = builtin_model(CaseId::Case3);
    const std::vector<double> xs{1.0};
    McOptions plain;
    plain.antithetic = false;
    const auto paired = estimate_u(spec, xs, 4000, 100, 314);
    const auto unpaired = estimate_u(spec, xs, 4000, 100, 314, plain);
    CHECK(paired[0].std_error < unpaired[0].std_error);
}

TEST_CASE("argument validation") {
    const auto spec = builtin_model(CaseId::Case3);
    const std::vector<double> xs{1.0};
    CHECK_THROWS_AS(estimate_u(spec, xs, 5, 10, 1), std::invalid_argument);   // odd antithetic
    CHECK_THROWS_AS(estimate_u(spec, xs, 4, 0, 1), std::invalid_argument);    // no steps
    CHECK_THROWS_AS(estimate_u(spec, xs, 0, 10, 1), std::invalid_argument);   // no paths
}
