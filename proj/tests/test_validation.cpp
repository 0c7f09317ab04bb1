#include <doctest.h>

#include "fkvx/artifacts.hpp"
#include "fkvx/validation.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

using namespace fkvx;

TEST_CASE("quadrature oracle reproduces lognormal closed forms") {
    const double mu = 0.1, sigma = 0.2, T = 1.0, v = 0.1;
    // f = 1: u = e^{-vT}
    CHECK(gbm_quadrature_u(mu, sigma, T, v, [](double) { return 1.0; }, 3.0) ==
          doctest::Approx(std::exp(-v * T)).epsilon(1e-12));
    // f = s: u = x e^{(mu - v) T} (lognormal mean)
    for (double x : {0.5, 1.0, 7.0})
        CHECK(gbm_quadrature_u(mu, sigma, T, v, [](double s) { return s; }, x) ==
              doctest::Approx(x * std::exp((mu - v) * T)).epsilon(1e-12));
    // f = s^2: u = x^2 e^{(2 mu + sigma^2 - v) T}
    CHECK(gbm_quadrature_u(mu, sigma, T, v, [](double s) { return s * s; }, 2.0) ==
          doctest::Approx(4.0 * std::exp((2.0 * mu + sigma * sigma - v) * T)).epsilon(1e-11));
}

TEST_CASE("both solvers agree to round-off scale on constant data") {
    ModelSpec spec = builtin_model(CaseId::Case1);
    spec.f = [](double) { return 1.0; };
    RunParams params;
    params.n_x = 60;
    params.n_t = 400;
    params.n_paths = 40;
    params.n_steps = 400;
    const auto report = run_case(spec, "flat", params);
    // PDE: exact CN decay factor; MC: exact e^{-0.1}. Both sit within the
    // O(dt^2) consistency error of the time discretization.
    CHECK(report.max_abs_error <= 1e-9);
    CHECK(report.mc_std_error_max <= 1e-15);
    const double ratio = (1.0 - 0.5 * 0.1 * 0.0025) / (1.0 + 0.5 * 0.1 * 0.0025);
    for (double u : report.u_pde)
        CHECK(u == doctest::Approx(std::pow(ratio, 400)).epsilon(1e-13));
    for (double u : report.u_sde_mean)
        CHECK(u == doctest::Approx(std::exp(-0.1)).epsilon(1e-13));
}

TEST_CASE("run_case is reproducible bit for bit") {
    RunParams params;
    params.n_x = 40;
    params.n_t = 30;
    params.n_paths = 100;
    params.n_steps = 30;
    params.master_seed = 555;
    const auto a = run_case(CaseId::Case2, params);
    const auto b = run_case(CaseId::Case2, params);
    CHECK(a.max_abs_error == b.max_abs_error);
    CHECK(a.u_sde_mean == b.u_sde_mean);
    CHECK(a.u_pde == b.u_pde);
    CHECK(a.master_seed == 555);
    CHECK(a.case_id == "case2");
}

TEST_CASE("run_case report is internally consistent") {
    RunParams params;
    params.n_x = 50;
    params.n_t = 50;
    params.n_paths = 200;
    params.n_steps = 50;
    const auto r = run_case(CaseId::Case3, params);
    REQUIRE(r.xs.size() == 50);
    REQUIRE(r.u_pde.size() == 50);
    REQUIRE(r.u_sde_mean.size() == 50);
    double mx = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        CHECK(r.pointwise_error[i] == std::abs(r.u_pde[i] - r.u_sde_mean[i]));
        mx = std::max(mx, r.pointwise_error[i]);
        sum += r.pointwise_error[i];
    }
    CHECK(r.max_abs_error == mx);
    CHECK(r.mean_abs_error == doctest::Approx(sum / 50.0).epsilon(1e-15));
    CHECK(r.interior_max_abs_error <= r.max_abs_error);
    CHECK(r.payoff_sup_on_grid == doctest::Approx(std::exp(-0.01)).epsilon(1e-15));
    CHECK(r.feller.classification == BoundaryClass::NonAttainable);
    CHECK(r.moment_bound.pass);
    CHECK(r.runtimes.total_seconds >= 0.0);
}

TEST_CASE("moment bound: explicit constant and empirical check") {
    const auto spec = builtin_model(CaseId::Case3);
    const auto res = moment_bound_check(spec, 1.0, 2000, 100, 99);
    CHECK(res.growth_constant == doctest::Approx(1.0).epsilon(1e-15));
    // (1 + 3 x0^2) e^{6 T K^2 (mu^2 T + 4 sigma^2)} with x0 = 1, K = 1
    CHECK(res.theoretical == doctest::Approx(4.0 * std::exp(6.0 * 0.17)).epsilon(1e-14));
    CHECK(res.empirical > 1.0);   // paths start at 1, so the running sup of X^2 does too
    CHECK(res.empirical < 3.0);   // loose sanity ceiling, far under the bound
    CHECK(res.pass);
}

TEST_CASE("convergence study hits second order on the GBM case") {
    const auto spec = builtin_model(CaseId::Case3);
    auto exact = [&spec](double x) {
        return gbm_quadrature_u(spec.mu, spec.sigma, spec.T, 0.1, spec.f, x);
    };
    const auto study = convergence_study(spec, {{100, 100}, {200, 200}, {400, 400}},
                                         {0.5, 5.0}, exact);
    REQUIRE(study.levels.size() == 3);
    REQUIRE(study.observed_orders.size() == 2);
    for (std::size_t k = 0; k + 1 < study.levels.size(); ++k)
        CHECK(study.levels[k + 1].error < study.levels[k].error);
    for (double order : study.observed_orders)
        CHECK(order == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("convergence study without an oracle falls back to self-reference") {
    const auto spec = builtin_model(CaseId::Case1);
    const auto study = convergence_study(spec, {{50, 50}, {100, 100}}, {0.5, 5.0});
    REQUIRE(study.levels.size() == 2);
    CHECK(study.levels[1].error < study.levels[0].error);
    CHECK(study.levels[0].error > 0.0);
    CHECK(study.observed_orders.size() == 1);
}

TEST_CASE("solution CSV round-trips the report exactly") {
    RunParams params;
    params.n_x = 40;
    params.n_t = 10;
    params.n_paths = 20;
    params.n_steps = 10;
    const auto report = run_case(CaseId::Case2, params);
    const std::string path = "/tmp/fkvx_test_solution.csv";
    write_solution_csv(path, report);

    std::ifstream in(path);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "x,u_pde,u_sde_mean,u_sde_stderr,abs_error");
    std::string line;
    std::size_t i = 0;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        double x, up, um, se, err;
        char comma;
        row >> x >> comma >> up >> comma >> um >> comma >> se >> comma >> err;
        REQUIRE(i < report.xs.size());
        CHECK(x == report.xs[i]);
        CHECK(up == report.u_pde[i]);
        CHECK(um == report.u_sde_mean[i]);
        CHECK(se == report.u_sde_std_error[i]);
        CHECK(err == report.pointwise_error[i]);
        ++i;
    }
    CHECK(i == report.xs.size());

    // same run, same file bytes
    const std::string path2 = "/tmp/fkvx_test_solution2.csv";
    write_solution_csv(path2, run_case(CaseId::Case2, params));
    std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
}

TEST_CASE("text report carries the headline numbers") {
    RunParams params;
    params.n_x = 40;
    params.n_t = 10;
    params.n_paths = 20;
    params.n_steps = 10;
    const auto report = run_case(CaseId::Case3, params);
    const auto text = format_report(report);
    CHECK(text.find("case3") != std::string::npos);
    CHECK(text.find("max_abs_error") != std::string::npos);
    CHECK(text.find("NON_ATTAINABLE") != std::string::npos);
    CHECK(text.find("moment") != std::string::npos);
}

TEST_CASE("svg artifacts are produced and well-formed at the envelope level") {
    RunParams params;
    params.n_x = 40;
    params.n_t = 10;
    params.n_paths = 20;
    params.n_steps = 10;
    const auto report = run_case(CaseId::Case3, params);
    for (const char* name : {"/tmp/fkvx_test_cmp.svg", "/tmp/fkvx_test_err.svg"}) {
        if (std::string(name).find("cmp") != std::string::npos)
            write_comparison_svg(name, report);
        else
            write_error_svg(name, report);
        std::ifstream in(name);
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string svg = buf.str();
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(svg.find("polyline") != std::string::npos);
    }
}
