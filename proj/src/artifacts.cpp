#include "fkvx/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fkvx {

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

// Maps data coordinates into a fixed plot frame.
struct Frame {
    double x0, x1, y0, y1;   // data ranges
    double px0 = 70, px1 = 860, py0 = 330, py1 = 20;  // pixel corners (y flipped)

    double px(double x) const { return px0 + (x - x0) / (x1 - x0) * (px1 - px0); }
    double py(double y) const {
        return y1 == y0 ? py0 : py0 + (y - y0) / (y1 - y0) * (py1 - py0);
    }
};

void svg_header(std::ostream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"380\" "
           "viewBox=\"0 0 900 380\">\n";
    out << "<rect width=\"900\" height=\"380\" fill=\"white\"/>\n";
    out << "<text x=\"450\" y=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"14\">" << title << "</text>\n";
}

void svg_axes(std::ostream& out, const Frame& fr, const std::string& xlabel,
              const std::string& ylabel) {
    out << "<line x1=\"" << fr.px0 << "\" y1=\"" << fr.py0 << "\" x2=\"" << fr.px1
        << "\" y2=\"" << fr.py0 << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fr.px0 << "\" y1=\"" << fr.py0 << "\" x2=\"" << fr.px0
        << "\" y2=\"" << fr.py1 << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = fr.x0 + k * (fr.x1 - fr.x0) / 4;
        const double yv = fr.y0 + k * (fr.y1 - fr.y0) / 4;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.3g", xv);
        out << "<text x=\"" << fr.px(xv) << "\" y=\"" << fr.py0 + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << buf
            << "</text>\n";
        std::snprintf(buf, sizeof(buf), "%.3g", yv);
        out << "<text x=\"" << fr.px0 - 6 << "\" y=\"" << fr.py(yv) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
            << "</text>\n";
    }
    out << "<text x=\"" << (fr.px0 + fr.px1) / 2 << "\" y=\"368\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"12\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << (fr.py0 + fr.py1) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " << (fr.py0 + fr.py1) / 2 << ")\">" << ylabel
        << "</text>\n";
}

void svg_polyline(std::ostream& out, const Frame& fr, const std::vector<double>& xs,
                  const std::vector<double>& ys, const std::string& style) {
    out << "<polyline fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << fr.px(xs[i]) << ',' << fr.py(ys[i]) << ' ';
    out << "\"/>\n";
}

} // namespace

void write_solution_csv(const std::string& path, const ComparisonReport& report) {
    auto out = open_out(path);
    out << "x,u_pde,u_sde_mean,u_sde_stderr,abs_error\n";
    for (std::size_t i = 0; i < report.xs.size(); ++i) {
        out << g17(report.xs[i]) << ',' << g17(report.u_pde[i]) << ','
            << g17(report.u_sde_mean[i]) << ',' << g17(report.u_sde_std_error[i]) << ','
            << g17(report.pointwise_error[i]) << '\n';
    }
}

void write_oracle_csv(const std::string& path, const ComparisonReport& report,
                      const std::vector<double>& oracle) {
    auto out = open_out(path);
    out << "x,u_oracle,u_pde,u_sde_mean\n";
    for (std::size_t i = 0; i < report.xs.size(); ++i) {
        out << g17(report.xs[i]) << ',' << g17(oracle[i]) << ',' << g17(report.u_pde[i]) << ','
            << g17(report.u_sde_mean[i]) << '\n';
    }
}

std::string format_report(const ComparisonReport& r) {
    std::ostringstream out;
    out << "case:               " << r.case_id << "\n"
        << "parameters:         mu=" << r.mu << " sigma=" << r.sigma << " T=" << r.T
        << " domain=[" << r.domain_r << "," << r.domain_R << "]\n"
        << "discretization:     n_x=" << r.n_x << " n_t=" << r.n_t << " n_paths=" << r.n_paths
        << " n_steps=" << r.n_steps << "\n"
        << "master_seed:        " << r.master_seed << "\n"
        << "max_abs_error:      " << g17(r.max_abs_error) << "\n"
        << "interior_max_error: " << g17(r.interior_max_abs_error) << " (trim "
        << r.interior_trim << " nodes/side)\n"
        << "mean_abs_error:     " << g17(r.mean_abs_error) << "\n"
        << "mc_std_error_max:   " << g17(r.mc_std_error_max) << "\n"
        << "pde_range_over_run: [" << g17(r.pde_min_over_run) << ", " << g17(r.pde_max_over_run)
        << "] (payoff sup on grid " << g17(r.payoff_sup_on_grid) << ")\n"
        << "moment_bound:       empirical=" << g17(r.moment_bound.empirical)
        << " theoretical=" << g17(r.moment_bound.theoretical)
        << " K=" << g17(r.moment_bound.growth_constant)
        << (r.moment_bound.pass ? "  PASS" : "  FAIL") << "\n"
        << "feller:             liminf=" << g17(r.feller.liminf) << " -> "
        << (r.feller.classification == BoundaryClass::NonAttainable ? "NON_ATTAINABLE"
                                                                    : "INCONCLUSIVE")
        << "\n"
        << "runtimes:           pde=" << r.runtimes.pde_seconds
        << "s mc=" << r.runtimes.mc_seconds << "s total=" << r.runtimes.total_seconds << "s\n";
    return out.str();
}

void write_report_text(const std::string& path, const ComparisonReport& report) {
    auto out = open_out(path);
    out << format_report(report);
}

void write_comparison_svg(const std::string& path, const ComparisonReport& report) {
    auto out = open_out(path);
    const auto [mn, mx] = std::minmax_element(report.u_pde.begin(), report.u_pde.end());
    Frame fr{report.xs.front(), report.xs.back(), std::min(0.0, *mn), *mx * 1.05};
    svg_header(out, "u(x,T): PDE (Crank-Nicolson) vs SDE (Monte Carlo), " + report.case_id);
    svg_axes(out, fr, "x", "u(x,T)");
    svg_polyline(out, fr, report.xs, report.u_pde, "stroke=\"#1f4fd8\" stroke-width=\"2\"");
    svg_polyline(out, fr, report.xs, report.u_sde_mean,
                 "stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"");
    out << "<text x=\"760\" y=\"40\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#1f4fd8\">PDE</text>\n"
        << "<text x=\"760\" y=\"56\" font-family=\"sans-serif\" font-size=\"12\" "
           "fill=\"#d62728\">SDE MC</text>\n";
    out << "</svg>\n";
}

void write_error_svg(const std::string& path, const ComparisonReport& report) {
    auto out = open_out(path);
    const double emax = *std::max_element(report.pointwise_error.begin(),
                                          report.pointwise_error.end());
    Frame fr{report.xs.front(), report.xs.back(), 0.0, emax * 1.1 + 1e-300};
    svg_header(out, "|u_PDE - u_SDE|, " + report.case_id);
    svg_axes(out, fr, "x", "absolute error");
    svg_polyline(out, fr, report.xs, report.pointwise_error,
                 "stroke=\"#2ca02c\" stroke-width=\"1.5\"");
    out << "</svg>\n";
}

} // namespace fkvx
