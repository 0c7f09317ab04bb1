#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fkvx {

// Declared constants certifying membership of an exponent function in the
// admissible class: bounds (h1), tail behavior (h2), and derivative decay (h3).
struct ClassSCertificate {
    double h_minus = 1.0;  // claimed infimum, >= 1
    double h_plus = 1.0;   // claimed supremum
    double delta = 1.0;    // in (0, 1]
    double M0 = 1.0;       // derivative bound on (0, delta]
    double C0 = 1.0;       // tail derivative constant
    double alpha = 1.0;    // tail derivative decay rate, h_plus < 1 + alpha
    double M_inf = 0.0;    // (h(x)-1) log(x) <= M_inf for x > R_inf
    double R_inf = 1.0;
};

// A variable exponent function h on (0, inf) together with its derivative and,
// when available, the certificate constants backing the hypothesis checks.
struct ExponentFunction {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::optional<ClassSCertificate> certificate;
};

// Log-spaced evaluation grid used by the sampling-based hypothesis verifier.
struct SamplingPlan {
    double x_min = 1e-8;
    double x_max = 1e8;
    std::size_t n_samples = 10000;

    std::vector<double> points() const;
};

enum class VerificationStatus { Pass, Fail, InvalidFunction, CertificateRequired };

struct HypothesisResult {
    std::string hypothesis;  // "h1", "h2", "h3"
    bool pass = false;
    double worst_x = 0.0;    // sample with the smallest margin
    double worst_margin = 0.0;  // bound minus attained value; negative = violated
    std::string detail;
};

struct VerificationReport {
    VerificationStatus status = VerificationStatus::Fail;
    std::vector<HypothesisResult> hypotheses;
    double h2_margin_at_xmax = 0.0;  // (h(x)-1)log(x) headroom at the largest sample

    bool passed() const { return status == VerificationStatus::Pass; }
    const HypothesisResult* find(const std::string& name) const;
};

// Samples h over the plan and falsifies or accepts the declared certificate.
VerificationReport verify_class_s(const ExponentFunction& h, const SamplingPlan& plan = {});

enum class CaseId { Case1, Case2, Case3 };

struct ExponentPair {
    ExponentFunction p;
    ExponentFunction q;
};

// The three experimental exponent configurations:
//   Case 1: p = 1 + 0.30/(1+x^1.2), q = 1 + 0.40/(1+x^2)   (polynomial decay)
//   Case 2: p = 1 + 0.2 e^{-x},     q = 1 + 0.3 e^{-x}     (exponential decay)
//   Case 3: p = q = 1                                      (GBM base model)
ExponentPair builtin_case(CaseId id);

const char* case_name(CaseId id);
std::optional<CaseId> case_from_name(const std::string& name);

// |h'(x) - central difference| <= tol * (1 + |h'(x)|) at each plan point.
bool deriv_consistent(const ExponentFunction& h, const SamplingPlan& plan, double tol = 1e-6);

} // namespace fkvx
