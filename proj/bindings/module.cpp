#include "fkvx/artifacts.hpp"
#include "fkvx/config.hpp"
#include "fkvx/validation.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

fkvx::CaseId case_id_or_throw(const std::string& name) {
    auto id = fkvx::case_from_name(name);
    if (!id)
        throw py::value_error("unknown case '" + name + "' (expected case1 | case2 | case3)");
    return *id;
}

} // namespace

PYBIND11_MODULE(_fkvx, m) {
    m.doc() = "Dual-solver toolkit for degenerate parabolic problems with "
              "variable-exponent coefficients: Crank-Nicolson PDE solver and "
              "Feynman-Kac Euler-Maruyama Monte Carlo, plus well-posedness checks.";

    py::class_<fkvx::McEstimate>(m, "McEstimate")
        .def_readonly("start_x", &fkvx::McEstimate::start_x)
        .def_readonly("mean", &fkvx::McEstimate::mean)
        .def_readonly("std_error", &fkvx::McEstimate::std_error)
        .def_readonly("n_paths", &fkvx::McEstimate::n_paths)
        .def("__repr__", [](const fkvx::McEstimate& e) {
            return "McEstimate(x=" + std::to_string(e.start_x) +
                   ", mean=" + std::to_string(e.mean) + ")";
        });

    py::class_<fkvx::FellerReport>(m, "FellerReport")
        .def_readonly("probes", &fkvx::FellerReport::probes)
        .def_readonly("values", &fkvx::FellerReport::values)
        .def_readonly("liminf", &fkvx::FellerReport::liminf)
        .def_property_readonly("non_attainable", [](const fkvx::FellerReport& r) {
            return r.classification == fkvx::BoundaryClass::NonAttainable;
        });

    py::class_<fkvx::ComparisonReport>(m, "ComparisonReport")
        .def_readonly("case_id", &fkvx::ComparisonReport::case_id)
        .def_readonly("xs", &fkvx::ComparisonReport::xs)
        .def_readonly("u_pde", &fkvx::ComparisonReport::u_pde)
        .def_readonly("u_sde_mean", &fkvx::ComparisonReport::u_sde_mean)
        .def_readonly("u_sde_std_error", &fkvx::ComparisonReport::u_sde_std_error)
        .def_readonly("pointwise_error", &fkvx::ComparisonReport::pointwise_error)
        .def_readonly("max_abs_error", &fkvx::ComparisonReport::max_abs_error)
        .def_readonly("mean_abs_error", &fkvx::ComparisonReport::mean_abs_error)
        .def_readonly("interior_max_abs_error", &fkvx::ComparisonReport::interior_max_abs_error)
        .def_readonly("mc_std_error_max", &fkvx::ComparisonReport::mc_std_error_max)
        .def_readonly("feller", &fkvx::ComparisonReport::feller)
        .def("text", [](const fkvx::ComparisonReport& r) { return fkvx::format_report(r); });

    m.def("drift",
          [](const std::string& case_label, double mu, double x) {
              auto spec = fkvx::builtin_model(case_id_or_throw(case_label));
              spec.mu = mu;
              return fkvx::drift(spec, x);
          },
          py::arg("case"), py::arg("mu"), py::arg("x"),
          "mu * x^p(x) for a builtin exponent case");

    m.def("diffusion",
          [](const std::string& case_label, double sigma, double x) {
              auto spec = fkvx::builtin_model(case_id_or_throw(case_label));
              spec.sigma = sigma;
              return fkvx::diffusion(spec, x);
          },
          py::arg("case"), py::arg("sigma"), py::arg("x"),
          "sigma * x^q(x) for a builtin exponent case");

    m.def("verify_case",
          [](const std::string& case_label) {
              auto pair = fkvx::builtin_case(case_id_or_throw(case_label));
              py::dict out;
              for (auto [name, fn] : {std::pair{"p", &pair.p}, {"q", &pair.q}}) {
                  const auto report = fkvx::verify_class_s(*fn);
                  py::dict entry;
                  entry["pass"] = report.passed();
                  for (const auto& hyp : report.hypotheses)
                      entry[hyp.hypothesis.c_str()] = hyp.pass;
                  out[name] = entry;
              }
              return out;
          },
          py::arg("case"), "class-S hypothesis checks (h1-h3) for a builtin case");

    m.def("feller_test",
          [](const std::string& case_label) {
              return fkvx::feller_test(fkvx::builtin_model(case_id_or_throw(case_label)),
                                       fkvx::default_feller_probes());
          },
          py::arg("case"));

    m.def("solve_pde",
          [](const std::string& case_label, std::size_t n_x, std::size_t n_t) {
              const auto spec = fkvx::builtin_model(case_id_or_throw(case_label));
              const auto grid = fkvx::make_log_grid(spec.domain_r, spec.domain_R, n_x);
              const auto sol = fkvx::solve_pde(spec, grid, n_t);
              return py::make_tuple(grid.nodes_x, sol.final());
          },
          py::arg("case"), py::arg("n_x") = 400, py::arg("n_t") = 400,
          "Crank-Nicolson solution u(x, T) on the log grid; returns (x, u)");

    m.def("estimate_u",
          [](const std::string& case_label, const std::vector<double>& xs, std::size_t n_paths,
             std::size_t n_steps, std::uint64_t seed, bool reflect) {
              const auto spec = fkvx::builtin_model(case_id_or_throw(case_label));
              fkvx::McOptions opts;
              opts.policy =
                  reflect ? fkvx::BoundaryPolicy::Reflect : fkvx::BoundaryPolicy::FloorOnly;
              return fkvx::estimate_u(spec, xs, n_paths, n_steps, seed, opts);
          },
          py::arg("case"), py::arg("xs"), py::arg("n_paths") = 20000, py::arg("n_steps") = 400,
          py::arg("seed") = 20260824, py::arg("reflect") = true,
          "Feynman-Kac Monte Carlo estimates of u(x, T) with antithetic variates "
          "and common random numbers");

    m.def("run_case",
          [](const std::string& case_label, std::size_t n_x, std::size_t n_t,
             std::size_t n_paths, std::size_t n_steps, std::uint64_t seed, int threads) {
              fkvx::RunParams params;
              params.n_x = n_x;
              params.n_t = n_t;
              params.n_paths = n_paths;
              params.n_steps = n_steps;
              params.master_seed = seed;
              params.n_threads = threads;
              return fkvx::run_case(case_id_or_throw(case_label), params);
          },
          py::arg("case"), py::arg("n_x") = 400, py::arg("n_t") = 400,
          py::arg("n_paths") = 20000, py::arg("n_steps") = 400, py::arg("seed") = 20260824,
          py::arg("threads") = 1,
          "full PDE-vs-MC comparison with hypothesis checks");

    m.def("gbm_quadrature_u", &fkvx::gbm_quadrature_u, py::arg("mu"), py::arg("sigma"),
          py::arg("T"), py::arg("v_const"), py::arg("f"), py::arg("x"),
          "independent lognormal quadrature oracle for the GBM case");
}
