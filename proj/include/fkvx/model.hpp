#pragma once

#include "fkvx/exponent.hpp"

#include <functional>
#include <vector>

namespace fkvx {

// Full problem datum shared by the PDE and SDE solvers.
struct ModelSpec {
    double mu = 0.1;
    double sigma = 0.2;
    ExponentFunction p;  // drift exponent
    ExponentFunction q;  // diffusion exponent
    std::function<double(double)> V;  // potential, V >= 0
    std::function<double(double)> f;  // bounded payoff / initial condition
    double T = 1.0;
    double domain_r = 0.1;
    double domain_R = 50.0;
};

// The three experimental setups: shared physical parameters
// (mu=0.1, sigma=0.2, V=0.1, f=exp(-0.1x), T=1, [0.1,50]) with the
// case-specific exponent pair.
ModelSpec builtin_model(CaseId id);

// mu * x^{p(x)}; throws std::domain_error for x <= 0.
double drift(const ModelSpec& spec, double x);

// sigma * x^{q(x)}; throws std::domain_error for x <= 0.
double diffusion(const ModelSpec& spec, double x);

// K = max{delta^{q-}, delta^{p-}, e^{M_inf}}, the constant in the linear
// growth bound x^{h(x)} <= K(1+x). Throws if either certificate is missing.
double linear_growth_constant(const ExponentFunction& p, const ExponentFunction& q,
                              double delta, double M_inf);
double linear_growth_constant(const ExponentFunction& p, const ExponentFunction& q);

enum class BoundaryClass { NonAttainable, Inconclusive };

struct FellerReport {
    std::vector<double> probes;
    std::vector<double> values;  // T(x) at each probe
    double liminf = 0.0;         // min over the probe sequence
    BoundaryClass classification = BoundaryClass::Inconclusive;
    bool aborted = false;        // non-finite value encountered
    double abort_probe = 0.0;
};

// Scale function test at the origin:
//   T(x) = mu x^{p(x)} - (sigma^2/2) x^{2q(x)} (2 q'(x) log x + 2 q(x)/x).
// NonAttainable when the liminf over the probe sequence is >= -tol.
FellerReport feller_test(const ModelSpec& spec, const std::vector<double>& probes,
                         double tol = 1e-8);
std::vector<double> default_feller_probes();  // 10^-k, k = 2..12

double feller_scale_value(const ModelSpec& spec, double x);

// (L g)(x) = (sigma^2/2) x^{2q(x)} g''(x) + mu x^{p(x)} g'(x).
double generator_apply(const ModelSpec& spec, const std::function<double(double)>& g_prime,
                       const std::function<double(double)>& g_second, double x);

} // namespace fkvx
