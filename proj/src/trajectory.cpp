#include "sympx/harness/trajectory.hpp"

#include "sympx/composition.hpp"
#include "sympx/irk.hpp"
#include "sympx/reference.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sympx::harness {

namespace {

CompositionScheme make_scheme(const MethodSpec& spec) {
  switch (spec.composition) {
    case CompositionId::none:
      return {{1.0}, 2};
    case CompositionId::triple_jump:
      return triple_jump(spec.order);
    case CompositionId::suzuki:
      return suzuki(spec.order);
    case CompositionId::yoshida6:
      return yoshida6();
  }
  throw std::invalid_argument("unknown composition");
}

ExtendedStepFn<double> make_extended_base(const RunConfig& cfg,
                                          const HamiltonianModel<double>& model) {
  CompositionScheme scheme = make_scheme(cfg.spec);
  if (cfg.spec.method == MethodId::tao)
    return compose(make_tao_step(model, *cfg.omega), std::move(scheme));
  if (cfg.fuse) return make_fused_strang(model, std::move(scheme));
  return compose(make_strang_step(model), std::move(scheme));
}

std::vector<double> invariant_values(const HamiltonianModel<double>& model,
                                     const PhasePoint<double>& z) {
  std::vector<double> vals;
  vals.reserve(1 + model.named_invariants.size());
  vals.push_back(model.energy(z.q, z.p));
  for (const auto& [name, fn] : model.named_invariants)
    vals.push_back(fn(z.q, z.p));
  return vals;
}

std::vector<double> relative_errors(const std::vector<double>& now,
                                    const std::vector<double>& initial) {
  std::vector<double> rel(now.size());
  for (std::size_t i = 0; i < now.size(); ++i) {
    const double denom = std::abs(initial[i]) > 0 ? std::abs(initial[i]) : 1.0;
    rel[i] = (now[i] - initial[i]) / denom;
  }
  return rel;
}

}  // namespace

Trajectory run_trajectory(const RunConfig& cfg) {
  cfg.validate();
  const HamiltonianModel<double> model = build_model(cfg);
  const PhasePoint<double> z0 = initial_state(cfg);

  Trajectory tr;
  tr.invariant_names.push_back("H");
  for (const auto& [name, fn] : model.named_invariants)
    tr.invariant_names.push_back(name);
  tr.invariant_initial = invariant_values(model, z0);

  const long nsteps =
      static_cast<long>(std::floor(cfg.T / std::abs(cfg.dt) + 1e-9));
  tr.records.reserve(static_cast<std::size_t>(nsteps / cfg.stride) + 1);

  const MethodId method = cfg.spec.method;
  tr.has_solver = method == MethodId::semiexplicit ||
                  method == MethodId::midpoint || method == MethodId::irk4;

  ExtendedStepFn<double> base;
  ExtendedPoint<double> zeta;  // evolving state of the raw extended methods
  IrkTableau tableau;
  if (method == MethodId::semiexplicit || method == MethodId::pihajoki ||
      method == MethodId::tao) {
    base = make_extended_base(cfg, model);
    zeta = embed(z0);
  } else if (method == MethodId::midpoint) {
    tableau = midpoint_tableau();
  } else if (method == MethodId::irk4) {
    tableau = gauss_legendre4_tableau();
  }

  PhasePoint<double> z = z0;

  auto record = [&](double time, const PhasePoint<double>& state,
                    double defect_norm, const SolverStats<double>* stats) {
    TrajectoryRecord row;
    row.time = time;
    row.q = state.q;
    row.p = state.p;
    row.defect_norm = defect_norm;
    row.invariant_relerr =
        relative_errors(invariant_values(model, state), tr.invariant_initial);
    if (stats) {
      row.solver_iters = stats->iterations;
      row.solver_converged = stats->converged;
      row.update_norm = stats->final_update_norm;
    }
    tr.records.push_back(std::move(row));
  };

  record(0.0, z0, 0.0, nullptr);

  const auto t_start = std::chrono::steady_clock::now();
  for (long k = 1; k <= nsteps; ++k) {
    SolverStats<double> stats;
    double defect_norm = 0;
    bool have_stats = false;
    try {
      switch (method) {
        case MethodId::semiexplicit: {
          StepResult<double> r = semiexplicit_step(base, cfg.dt, z, cfg.solver);
          z = std::move(r.z);
          stats = r.stats;
          defect_norm = r.defect_norm;
          have_stats = true;
          break;
        }
        case MethodId::pihajoki:
        case MethodId::tao: {
          zeta = base(cfg.dt, zeta);
          z = {zeta.q, zeta.p};  // raw first copy, no averaging
          defect_norm = defect(zeta).norm();
          break;
        }
        case MethodId::midpoint:
        case MethodId::irk4: {
          StepResult<double> r = irk_step(model, tableau, cfg.dt, z, cfg.solver);
          z = std::move(r.z);
          stats = r.stats;
          have_stats = true;
          break;
        }
        case MethodId::reference: {
          z = rk4_integrate(model, z, cfg.dt, 100);
          break;
        }
      }
      if (!z.q.allFinite() || !z.p.allFinite())
        throw numerical_error("state is no longer finite");

      ++tr.aggregates.steps;
      if (have_stats) {
        tr.aggregates.iteration_sum += stats.iterations;
        tr.aggregates.max_update_norm =
            std::max(tr.aggregates.max_update_norm,
                     static_cast<double>(stats.final_update_norm));
        if (!stats.converged) ++tr.aggregates.failure_count;
      }
      tr.aggregates.max_defect = std::max(tr.aggregates.max_defect, defect_norm);

      if (k % cfg.stride == 0)
        record(k * cfg.dt, z, defect_norm, have_stats ? &stats : nullptr);
    } catch (const numerical_error& err) {
      throw numerical_error("step " + std::to_string(k) + ": " + err.what());
    }
  }
  tr.aggregates.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();

  if (!cfg.out.empty()) write_csv(tr, cfg.out);
  return tr;
}

void write_csv(const Trajectory& tr, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("write_csv: cannot open '" + path + "'");

  const Eigen::Index d = tr.records.empty() ? 0 : tr.records.front().q.size();
  out << "time";
  for (Eigen::Index i = 0; i < d; ++i) out << ",q" << i;
  for (Eigen::Index i = 0; i < d; ++i) out << ",p" << i;
  out << ",defect_norm";
  for (const auto& name : tr.invariant_names) out << ",inv_" << name << "_relerr";
  out << ",solver_iters,solver_converged\n";

  char buf[32];
  auto emit = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << ',' << buf;
  };
  for (const auto& row : tr.records) {
    std::snprintf(buf, sizeof buf, "%.17g", row.time);
    out << buf;
    for (Eigen::Index i = 0; i < d; ++i) emit(row.q(i));
    for (Eigen::Index i = 0; i < d; ++i) emit(row.p(i));
    emit(row.defect_norm);
    for (double v : row.invariant_relerr) emit(v);
    out << ',' << row.solver_iters << ',' << (row.solver_converged ? 1 : 0)
        << '\n';
  }
}

Trajectory read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("read_csv: cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("read_csv: empty file '" + path + "'");

  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cols.push_back(c);
  }
  Eigen::Index d = 0;
  while (d + 1 < static_cast<Eigen::Index>(cols.size()) &&
         cols[static_cast<std::size_t>(d) + 1] == "q" + std::to_string(d))
    ++d;

  Trajectory tr;
  for (std::size_t i = 2 * static_cast<std::size_t>(d) + 2; i < cols.size() - 2;
       ++i) {
    std::string name = cols[i];
    if (name.rfind("inv_", 0) == 0) name = name.substr(4);
    const auto suffix = name.rfind("_relerr");
    if (suffix != std::string::npos) name = name.substr(0, suffix);
    tr.invariant_names.push_back(name);
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string c;
    std::vector<double> vals;
    while (std::getline(ss, c, ',')) vals.push_back(std::stod(c));
    if (vals.size() != cols.size())
      throw std::invalid_argument("read_csv: ragged row in '" + path + "'");

    TrajectoryRecord row;
    std::size_t i = 0;
    row.time = vals[i++];
    row.q.resize(d);
    row.p.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) row.q(k) = vals[i++];
    for (Eigen::Index k = 0; k < d; ++k) row.p(k) = vals[i++];
    row.defect_norm = vals[i++];
    row.invariant_relerr.assign(vals.begin() + static_cast<long>(i),
                                vals.end() - 2);
    row.solver_iters = static_cast<int>(vals[vals.size() - 2]);
    row.solver_converged = vals.back() != 0;
    tr.records.push_back(std::move(row));
  }

  // Aggregates from the recorded rows; exact when the run used stride 1.
  for (std::size_t k = 1; k < tr.records.size(); ++k) {
    const auto& row = tr.records[k];
    ++tr.aggregates.steps;
    tr.aggregates.iteration_sum += row.solver_iters;
    if (!row.solver_converged) ++tr.aggregates.failure_count;
    tr.aggregates.max_defect =
        std::max(tr.aggregates.max_defect, row.defect_norm);
    if (row.solver_iters > 0) tr.has_solver = true;
  }
  return tr;
}

}  // namespace sympx::harness
