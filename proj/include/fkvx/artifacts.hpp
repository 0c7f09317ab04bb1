#pragma once

#include "fkvx/validation.hpp"

#include <string>

namespace fkvx {

// solution.csv columns: x,u_pde,u_sde_mean,u_sde_stderr,abs_error.
// Values printed with 17 significant digits so the file round-trips exactly.
void write_solution_csv(const std::string& path, const ComparisonReport& report);

// oracle.csv columns: x,u_oracle,u_pde,u_sde_mean.
void write_oracle_csv(const std::string& path, const ComparisonReport& report,
                      const std::vector<double>& oracle);

void write_report_text(const std::string& path, const ComparisonReport& report);

// Two-panel mirrors of the comparison figures: overlaid PDE/SDE curves and
// the pointwise absolute error.
void write_comparison_svg(const std::string& path, const ComparisonReport& report);
void write_error_svg(const std::string& path, const ComparisonReport& report);

std::string format_report(const ComparisonReport& report);

} // namespace fkvx
