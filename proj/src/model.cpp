#include "fkvx/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fkvx {

ModelSpec builtin_model(CaseId id) {
    ModelSpec spec;
    auto pair = builtin_case(id);
    spec.p = std::move(pair.p);
    spec.q = std::move(pair.q);
    spec.V = [](double) { return 0.1; };
    spec.f = [](double x) { return std::exp(-0.1 * x); };
    return spec;
}

double drift(const ModelSpec& spec, double x) {
    if (x <= 0.0)
        throw std::domain_error("drift: x must be positive");
    return spec.mu * std::pow(x, spec.p.eval(x));
}

double diffusion(const ModelSpec& spec, double x) {
    if (x <= 0.0)
        throw std::domain_error("diffusion: x must be positive");
    return spec.sigma * std::pow(x, spec.q.eval(x));
}

double linear_growth_constant(const ExponentFunction& p, const ExponentFunction& q,
                              double delta, double M_inf) {
    if (!p.certificate || !q.certificate)
        throw std::invalid_argument("linear_growth_constant: certificate required");
    const double k1 = std::pow(delta, q.certificate->h_minus);
    const double k2 = std::pow(delta, p.certificate->h_minus);
    return std::max({k1, k2, std::exp(M_inf)});
}

double linear_growth_constant(const ExponentFunction& p, const ExponentFunction& q) {
    if (!p.certificate || !q.certificate)
        throw std::invalid_argument("linear_growth_constant: certificate required");
    const double delta = std::min(p.certificate->delta, q.certificate->delta);
    const double M_inf = std::max(p.certificate->M_inf, q.certificate->M_inf);
    return linear_growth_constant(p, q, delta, M_inf);
}

double feller_scale_value(const ModelSpec& spec, double x) {
    if (x <= 0.0)
        throw std::domain_error("feller_scale_value: x must be positive");
    const double qx = spec.q.eval(x);
    const double dqx = spec.q.deriv(x);
    // d/dx x^{2q(x)} = x^{2q(x)} (2 q'(x) log x + 2 q(x)/x)
    const double x2q = std::pow(x, 2.0 * qx);
    const double deriv = x2q * (2.0 * dqx * std::log(x) + 2.0 * qx / x);
    return spec.mu * std::pow(x, spec.p.eval(x)) - 0.5 * spec.sigma * spec.sigma * deriv;
}

std::vector<double> default_feller_probes() {
    std::vector<double> probes;
    for (int k = 2; k <= 12; ++k)
        probes.push_back(std::pow(10.0, -k));
    return probes;
}

FellerReport feller_test(const ModelSpec& spec, const std::vector<double>& probes, double tol) {
    FellerReport report;
    report.probes = probes;
    for (double x : probes) {
        const double t = feller_scale_value(spec, x);
        if (!std::isfinite(t)) {
            report.aborted = true;
            report.abort_probe = x;
            report.classification = BoundaryClass::Inconclusive;
            return report;
        }
        report.values.push_back(t);
    }
    // liminf of T along the probe sequence: the early (larger-x) probes are
    // transient, so estimate from the tail of the sequence.
    const std::size_t tail = std::min<std::size_t>(3, report.values.size());
    double lim = std::numeric_limits<double>::infinity();
    for (std::size_t i = report.values.size() - tail; i < report.values.size(); ++i)
        lim = std::min(lim, report.values[i]);
    report.liminf = lim;
    report.classification =
        lim >= -tol ? BoundaryClass::NonAttainable : BoundaryClass::Inconclusive;
    return report;
}

double generator_apply(const ModelSpec& spec, const std::function<double(double)>& g_prime,
                       const std::function<double(double)>& g_second, double x) {
    if (x <= 0.0)
        throw std::domain_error("generator_apply: x must be positive");
    const double a = 0.5 * spec.sigma * spec.sigma * std::pow(x, 2.0 * spec.q.eval(x));
    return a * g_second(x) + drift(spec, x) * g_prime(x);
}

} // namespace fkvx
