// Post-processing: order studies, invariant drift fits, and solver
// iteration summaries.
#ifndef SYMPX_HARNESS_REPORTS_HPP
#define SYMPX_HARNESS_REPORTS_HPP

#include "sympx/harness/trajectory.hpp"

#include <iosfwd>
#include <optional>

namespace sympx::harness {

struct OrderStudyRow {
  std::string method;
  double dt = 0;
  double max_rel_energy_error = 0;
};

struct OrderStudyResult {
  std::vector<OrderStudyRow> rows;
  // least-squares log-log slope per method label, in input order
  std::vector<std::pair<std::string, double>> slopes;
};

/// Runs every method over every time step (base_cfg supplies model, T,
/// solver, omega) and fits the log-log slope of the maximum relative
/// energy error.  Requires at least 4 time steps spanning a decade.
OrderStudyResult order_study(const RunConfig& base_cfg,
                             const std::vector<MethodSpec>& methods,
                             const std::vector<double>& dts);

void write_order_study_csv(const OrderStudyResult& r, const std::string& path);
void print_order_study(std::ostream& os, const OrderStudyResult& r);

struct DriftEntry {
  std::string name;
  double max_abs_relerr = 0;
  double slope = 0;  // least-squares drift of the relative error per unit time
};

/// Per-invariant maximum relative error and fitted linear drift.
/// Requires at least 10 records.
std::vector<DriftEntry> invariant_drift_report(const Trajectory& tr);

struct IterationReport {
  double mean_iterations = 0;
  std::optional<double> max_update_norm;  // absent for CSV-loaded runs
  double max_defect = 0;
  long failure_count = 0;
  long steps = 0;
};

IterationReport iteration_report(const Trajectory& tr);

/// Aligned plain-text summary of both reports.
void print_summary(std::ostream& os, const Trajectory& tr);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sympx::harness

#endif  // SYMPX_HARNESS_REPORTS_HPP
