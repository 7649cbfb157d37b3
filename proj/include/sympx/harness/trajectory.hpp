// Trajectory driver: steps a configured method, records strided rows, and
// keeps per-step aggregates for the solver telemetry.
#ifndef SYMPX_HARNESS_TRAJECTORY_HPP
#define SYMPX_HARNESS_TRAJECTORY_HPP

#include "sympx/harness/config.hpp"

#include <string>
#include <vector>

namespace sympx::harness {

struct TrajectoryRecord {
  double time = 0;
  Eigen::VectorXd q, p;
  double defect_norm = 0;  // copy discrepancy; 0 for phase-space methods
  std::vector<double> invariant_relerr;  // H first, then the named ones
  int solver_iters = 0;
  bool solver_converged = true;
  double update_norm = 0;  // final solver update norm; not part of the CSV
};

/// Aggregates taken over every step regardless of the recording stride.
struct RunAggregates {
  long steps = 0;
  double iteration_sum = 0;
  long failure_count = 0;
  double max_update_norm = 0;
  double max_defect = 0;
  double wall_seconds = 0;  // recorded for information only
};

struct Trajectory {
  std::vector<std::string> invariant_names;  // "H" first
  std::vector<double> invariant_initial;
  std::vector<TrajectoryRecord> records;
  RunAggregates aggregates;
  bool has_solver = false;
};

/// Runs the configured method from the configured initial state.  Records
/// are written every cfg.stride steps (the initial state is always row 0);
/// numerical failures abort with the failing step index in the message.
/// For the raw extended methods (pihajoki, tao) the recorded (q, p) is the
/// first copy of the extended state, not an average.
Trajectory run_trajectory(const RunConfig& cfg);

/// Fixed column order:
///   time, q0.., p0.., defect_norm, inv_<name>_relerr.., solver_iters,
///   solver_converged
void write_csv(const Trajectory& tr, const std::string& path);

/// Rebuilds a Trajectory from a CSV produced by write_csv.  Aggregates are
/// reconstructed from the recorded rows (exact for stride 1).
Trajectory read_csv(const std::string& path);

}  // namespace sympx::harness

#endif  // SYMPX_HARNESS_TRAJECTORY_HPP
