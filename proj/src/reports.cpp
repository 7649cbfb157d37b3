#include "sympx/harness/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace sympx::harness {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope: need two samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / denom;
}

OrderStudyResult order_study(const RunConfig& base_cfg,
                             const std::vector<MethodSpec>& methods,
                             const std::vector<double>& dts) {
  if (methods.empty())
    throw std::invalid_argument("order_study: no methods given");
  if (dts.size() < 4)
    throw std::invalid_argument("order_study: need at least 4 time steps");
  const auto [lo, hi] = std::minmax_element(dts.begin(), dts.end());
  if (!(*lo > 0) || *hi / *lo < 10.0)
    throw std::invalid_argument(
        "order_study: time steps must be positive and span at least a decade");

  OrderStudyResult result;
  for (const MethodSpec& spec : methods) {
    std::vector<double> log_dt, log_err;
    for (double dt : dts) {
      RunConfig cfg = base_cfg;
      cfg.spec = spec;
      cfg.dt = dt;
      cfg.stride = 1;  // the maximum must see every step
      cfg.out.clear();
      const Trajectory tr = run_trajectory(cfg);
      double max_err = 0;
      for (const auto& row : tr.records)
        max_err = std::max(max_err, std::abs(row.invariant_relerr.at(0)));
      result.rows.push_back({spec.label(), dt, max_err});
      log_dt.push_back(std::log(dt));
      log_err.push_back(std::log(std::max(max_err, 1e-300)));
    }
    result.slopes.emplace_back(spec.label(), fit_slope(log_dt, log_err));
  }
  return result;
}

void write_order_study_csv(const OrderStudyResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::invalid_argument("write_order_study_csv: cannot open '" + path +
                                "'");
  out << "method,dt,max_rel_H_err\n";
  char buf[96];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g", row.method.c_str(), row.dt,
                  row.max_rel_energy_error);
    out << buf << '\n';
  }
}

void print_order_study(std::ostream& os, const OrderStudyResult& r) {
  char buf[128];
  os << "method                          dt        max_rel_H_err\n";
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%-30s  %-8.4g  %.6e", row.method.c_str(),
                  row.dt, row.max_rel_energy_error);
    os << buf << '\n';
  }
  os << '\n' << "method                          fitted slope\n";
  for (const auto& [label, slope] : r.slopes) {
    std::snprintf(buf, sizeof buf, "%-30s  %.3f", label.c_str(), slope);
    os << buf << '\n';
  }
}

std::vector<DriftEntry> invariant_drift_report(const Trajectory& tr) {
  if (tr.records.size() < 10)
    throw std::invalid_argument("invariant_drift_report: need >= 10 records");
  std::vector<DriftEntry> out;
  std::vector<double> t(tr.records.size());
  for (std::size_t k = 0; k < tr.records.size(); ++k) t[k] = tr.records[k].time;

  for (std::size_t j = 0; j < tr.invariant_names.size(); ++j) {
    DriftEntry e;
    e.name = tr.invariant_names[j];
    std::vector<double> rel(tr.records.size());
    for (std::size_t k = 0; k < tr.records.size(); ++k) {
      rel[k] = tr.records[k].invariant_relerr.at(j);
      e.max_abs_relerr = std::max(e.max_abs_relerr, std::abs(rel[k]));
    }
    e.slope = fit_slope(t, rel);
    out.push_back(std::move(e));
  }
  return out;
}

IterationReport iteration_report(const Trajectory& tr) {
  IterationReport rep;
  rep.steps = tr.aggregates.steps;
  rep.failure_count = tr.aggregates.failure_count;
  rep.max_defect = tr.aggregates.max_defect;
  if (tr.has_solver && tr.aggregates.steps > 0) {
    rep.mean_iterations =
        tr.aggregates.iteration_sum / static_cast<double>(tr.aggregates.steps);
    rep.max_update_norm = tr.aggregates.max_update_norm;
  }
  return rep;
}

void print_summary(std::ostream& os, const Trajectory& tr) {
  const IterationReport it = iteration_report(tr);
  char buf[160];
  os << "steps              " << it.steps << '\n';
  std::snprintf(buf, sizeof buf, "mean NW_itr        %.4g", it.mean_iterations);
  os << buf << '\n';
  if (it.max_update_norm) {
    std::snprintf(buf, sizeof buf, "max update norm    %.4g",
                  *it.max_update_norm);
    os << buf << '\n';
  }
  std::snprintf(buf, sizeof buf, "max defect         %.4g", it.max_defect);
  os << buf << '\n';
  os << "solver failures    " << it.failure_count << '\n';
  std::snprintf(buf, sizeof buf, "wall seconds       %.4g",
                tr.aggregates.wall_seconds);
  os << buf << '\n';

  if (tr.records.size() >= 10) {
    os << '\n' << "invariant      max |rel err|   drift per unit time\n";
    for (const auto& e : invariant_drift_report(tr)) {
      std::snprintf(buf, sizeof buf, "%-12s   %.6e    %.6e", e.name.c_str(),
                    e.max_abs_relerr, e.slope);
      os << buf << '\n';
    }
  }
}

}  // namespace sympx::harness
