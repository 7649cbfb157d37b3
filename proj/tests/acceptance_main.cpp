// Acceptance suite: end-to-end checks of the integrator stack, one
// pass/fail line per criterion.  Individual runs are deterministic; only
// independent runs execute concurrently.
#include "sympx/composition.hpp"
#include "sympx/harness/reports.hpp"
#include "sympx/reference.hpp"

#include "testutil.hpp"

#include <cstdarg>
#include <cstdio>
#include <future>
#include <map>
#include <string>
#include <vector>

using namespace sympx;
using namespace sympx::harness;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              text.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void info(const std::string& text) {
  std::printf("       %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

template <typename T>
std::vector<T> run_parallel(std::vector<std::function<T()>> jobs) {
  std::vector<std::future<T>> futures;
  futures.reserve(jobs.size());
  for (auto& j : jobs) futures.push_back(std::async(std::launch::async, j));
  std::vector<T> out;
  out.reserve(jobs.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

RunConfig quartic_base() {
  RunConfig cfg;  // model quartic, IC (-3, 0)
  cfg.T = 100.0;
  cfg.solver.tolerance = 1e-15;
  cfg.omega = 20.0;
  return cfg;
}

RunConfig nls_base() {
  RunConfig cfg;
  cfg.model = "nls";
  cfg.nls_sites = 5;
  cfg.q0 = {3, 0.01, 0.01, 0.01, 0.01};
  cfg.p0 = {1, 0, 0, 0, 0};
  cfg.omega = 100.0;
  return cfg;
}

RunConfig vortex_base() {
  RunConfig cfg;
  cfg.model = "vortex";
  cfg.vortex_x = {3, -10, 6, 9, 0, 7, -8, 5, 9, 7};
  cfg.vortex_y = {-5, -6, 0, -2, 0, 10, 2, 9, 0, -1};
  cfg.vortex_gamma = {-0.5, 0.3, 0.6, 0.7, -0.2, -0.8, -0.9, -0.3, 0.7, -0.6};
  cfg.omega = 7.0;
  return cfg;
}

RunConfig vortex_disparate_base() {
  RunConfig cfg;
  cfg.model = "vortex";
  cfg.vortex_x = {0.5, 3.5, -1.5, -0.5, -4.5, -3.5, 1.5, -2, 4, -4};
  cfg.vortex_y = {5, 0.5, 2, 5, -2, -1, -0.5, 3, 3.5, -4};
  cfg.vortex_gamma = {-14.8, -18.8, 17.6, -8, -8.2, -6.8, -1.4, 6, -11, 13.8};
  return cfg;
}

double max_energy_error(const Trajectory& tr) {
  double worst = 0;
  for (const auto& row : tr.records)
    worst = std::max(worst, std::abs(row.invariant_relerr[0]));
  return worst;
}

// ---------------------------------------------------------------- 1 & 2

struct OrderCurve {
  std::string label;
  int order;
  std::vector<double> errors;  // per dt, same index order as the grid
  double slope = 0;
};

void criteria_order_and_accuracy() {
  const std::vector<double> dts{0.001, 0.002, 0.005, 0.01, 0.02, 0.05};
  struct MethodCase {
    const char* spec;
    int order;
  };
  const std::vector<MethodCase> cases{
      {"semiexplicit:none:2", 2},        {"semiexplicit:triple_jump:4", 4},
      {"semiexplicit:triple_jump:6", 6}, {"semiexplicit:suzuki:4", 4},
      {"semiexplicit:suzuki:6", 6},      {"semiexplicit:yoshida6:6", 6},
      {"tao:none:2", 2},                 {"tao:triple_jump:4", 4},
      {"tao:triple_jump:6", 6},          {"midpoint", 2},
      {"irk4", 4},
  };

  std::vector<std::function<double()>> jobs;
  for (const auto& mc : cases)
    for (double dt : dts)
      jobs.push_back([mc, dt]() {
        RunConfig cfg = quartic_base();
        cfg.spec = parse_method_spec(mc.spec);
        cfg.dt = dt;
        return max_energy_error(run_trajectory(cfg));
      });
  const std::vector<double> errors = run_parallel(std::move(jobs));

  std::vector<OrderCurve> curves;
  std::size_t idx = 0;
  for (const auto& mc : cases) {
    OrderCurve c;
    c.label = mc.spec;
    c.order = mc.order;
    std::vector<double> lx, ly;
    for (double dt : dts) {
      c.errors.push_back(errors[idx++]);
      lx.push_back(std::log(dt));
      ly.push_back(std::log(std::max(c.errors.back(), 1e-300)));
    }
    c.slope = fit_slope(lx, ly);
    curves.push_back(std::move(c));
  }

  bool slopes_ok = true;
  for (const auto& c : curves) {
    const bool ok = std::abs(c.slope - c.order) <= 0.5;
    slopes_ok = slopes_ok && ok;
    std::string note;
    if (!ok) {
      // steepest adjacent-pair slope: where the curve is not floored or
      // saturated it shows the asymptotic order
      double steepest = 0;
      for (std::size_t i = 0; i + 1 < dts.size(); ++i)
        steepest = std::max(
            steepest, std::log(c.errors[i + 1] / c.errors[i]) /
                          std::log(dts[i + 1] / dts[i]));
      note = fmt("  <-- off; steepest adjacent-pair slope %.2f", steepest);
    }
    info(fmt("%-28s slope %5.2f (target %d +- 0.5)%s", c.label.c_str(), c.slope,
             c.order, note.c_str()));
  }
  if (!slopes_ok)
    info("note: 6th-order error curves sit at the double-precision rounding "
         "floor (~1e-13 after 1e5 steps) over part of the grid, which drags "
         "the full-grid least-squares slope");
  report(1, slopes_ok,
         "order slopes 2/4/6 on the quartic model, T=100, eps=1e-15");

  auto curve = [&](const std::string& label) -> const OrderCurve& {
    for (const auto& c : curves)
      if (c.label == label) return c;
    throw std::logic_error("missing curve " + label);
  };
  bool ordering_ok = true;
  const std::vector<std::pair<std::string, std::string>> matched{
      {"semiexplicit:none:2", "tao:none:2"},
      {"semiexplicit:triple_jump:4", "tao:triple_jump:4"},
      {"semiexplicit:triple_jump:6", "tao:triple_jump:6"}};
  for (const auto& [semi, tao] : matched) {
    for (std::size_t i = 0; i < dts.size(); ++i) {
      const double es = curve(semi).errors[i], et = curve(tao).errors[i];
      if (es > et) {
        ordering_ok = false;
        info(fmt("%s error %.3e exceeds %s error %.3e at dt=%g", semi.c_str(),
                 es, tao.c_str(), et, dts[i]));
      }
    }
  }
  report(2, ordering_ok,
         "semiexplicit is at least as accurate as tao at matched order");
}

// ------------------------------------------------------------------- 3

void criterion_defect_suppression() {
  struct Case {
    const char* spec;
    double anchor;  // measured values reported for this setup
    bool is_semi;
  };
  // reference defect levels for the explicit coupled-copies runs at this
  // setup
  const std::vector<Case> cases{
      {"semiexplicit:none:2", 0.0, true},
      {"tao:none:2", 0.025191, false},
      {"tao:triple_jump:4", 0.016279, false},
      {"tao:triple_jump:6", 0.006048, false},
  };

  std::vector<std::function<double()>> jobs;
  for (const auto& c : cases)
    jobs.push_back([c]() {
      RunConfig cfg = nls_base();
      cfg.spec = parse_method_spec(c.spec);
      cfg.dt = 1e-2;
      cfg.T = 1e4;
      cfg.solver.tolerance = 1e-13;
      cfg.stride = 10000;
      return run_trajectory(cfg).aggregates.max_defect;
    });
  const std::vector<double> defects = run_parallel(std::move(jobs));

  bool ok = true;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    bool this_ok;
    if (cases[i].is_semi) {
      this_ok = defects[i] <= 1e-11;
      info(fmt("%-24s max defect %.3e (bound 1e-11)", cases[i].spec,
               defects[i]));
    } else {
      this_ok = defects[i] <= 3 * cases[i].anchor &&
                defects[i] >= cases[i].anchor / 3;
      info(fmt("%-24s max defect %.3e (within 3x of %.3e)", cases[i].spec,
               defects[i], cases[i].anchor));
    }
    ok = ok && this_ok;
  }
  report(3, ok, "NLS defect suppression at dt=1e-2, eps=1e-13, T=1e4");
}

// ------------------------------------------------------------------- 4

void criterion_iteration_counts() {
  struct Anchor {
    RunConfig cfg;
    const char* label;
    double expected;
  };
  std::vector<Anchor> anchors;

  auto add = [&](RunConfig base, const char* spec, double dt, double eps,
                 double T, ProjectionMethod pm, double expected) {
    base.spec = parse_method_spec(spec);
    base.dt = dt;
    base.T = T;
    base.solver.tolerance = eps;
    base.solver.method = pm;
    base.stride = 100000;
    anchors.push_back({std::move(base), spec, expected});
  };

  const auto simp = ProjectionMethod::simplified_newton;
  const auto brdn = ProjectionMethod::broyden;

  add(nls_base(), "semiexplicit:none:2", 1e-3, 1e-10, 1000, simp, 3.37);
  add(nls_base(), "semiexplicit:triple_jump:4", 1e-3, 1e-10, 1000, simp, 1.94);
  add(nls_base(), "semiexplicit:triple_jump:6", 1e-3, 1e-10, 1000, simp, 1.00);

  add(vortex_base(), "semiexplicit:none:2", 0.1, 1e-10, 1000, simp, 2.0);
  add(vortex_base(), "semiexplicit:triple_jump:4", 0.1, 1e-10, 1000, simp, 1.00);
  add(vortex_base(), "semiexplicit:triple_jump:6", 0.1, 1e-10, 1000, simp, 1.0);

  add(nls_base(), "semiexplicit:none:2", 1e-2, 1e-13, 1000, simp, 11.55);
  add(nls_base(), "semiexplicit:triple_jump:4", 1e-2, 1e-13, 1000, simp, 9.88);
  add(nls_base(), "semiexplicit:triple_jump:6", 1e-2, 1e-13, 1000, simp, 8.92);
  add(nls_base(), "semiexplicit:none:2", 1e-2, 1e-13, 1000, brdn, 8.88);
  add(nls_base(), "semiexplicit:triple_jump:4", 1e-2, 1e-13, 1000, brdn, 7.85);
  add(nls_base(), "semiexplicit:triple_jump:6", 1e-2, 1e-13, 1000, brdn, 7.06);

  std::vector<std::function<double()>> jobs;
  for (const auto& a : anchors)
    jobs.push_back(
        [&a]() { return iteration_report(run_trajectory(a.cfg)).mean_iterations; });
  const std::vector<double> means = run_parallel(std::move(jobs));

  bool ok = true;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const auto& a = anchors[i];
    const bool this_ok = std::abs(means[i] - a.expected) <= 1.0;
    ok = ok && this_ok;
    info(fmt("%-28s dt=%-6g eps=%-6g %-10s NW_itr %5.2f (target %.2f +- 1)%s",
             a.label, a.cfg.dt, a.cfg.solver.tolerance,
             a.cfg.solver.method == simp ? "simplified" : "broyden", means[i],
             a.expected, this_ok ? "" : "  <-- off"));
  }
  report(4, ok, "mean projection iteration counts match the benchmarks");
}

// ------------------------------------------------------------------- 5

void criterion_symplecticity() {
  SolverConfig scfg;
  scfg.tolerance = 1e-13;
  std::mt19937_64 rng(101);
  bool ok = true;
  double worst_phase = 0, worst_ext = 0;

  // projected step on the original phase space
  {
    const auto quartic = quartic_exact_model<double>();
    auto base_q = make_strang_step(quartic);
    const auto nls = nls_model<double>(5);
    auto base_n = make_strang_step(nls);
    for (int k = 0; k < 20; ++k) {
      for (int which = 0; which < 2; ++which) {
        const Eigen::Index d = which == 0 ? 1 : 5;
        const auto& base = which == 0 ? base_q : base_n;
        const auto z = testutil::random_phase_point(rng, d, -1.2, 1.2);
        const auto J = testutil::fd_jacobian(
            [&](const Eigen::VectorXd& v) {
              return to_flat(
                  semiexplicit_step(base, 1e-2, phase_from_flat(v), scfg).z);
            },
            to_flat(z));
        worst_phase = std::max(worst_phase, testutil::symplectic_residual(J));
      }
    }
    ok = ok && worst_phase <= 1e-5;
    info(fmt("projected step: worst |M^T J M - J| = %.3e (bound 1e-5)",
             worst_phase));
  }

  // explicit base steps on the doubled space
  {
    const auto nls = nls_model<double>(5);
    std::vector<std::pair<std::string, ExtendedStepFn<double>>> steps;
    steps.emplace_back("strang", make_strang_step(nls));
    steps.emplace_back("tao", make_tao_step(nls, 100.0));
    steps.emplace_back("strang+tj4",
                       compose(make_strang_step(nls), sympx::triple_jump(4)));
    steps.emplace_back("strang+suzuki4",
                       compose(make_strang_step(nls), sympx::suzuki(4)));
    steps.emplace_back("strang+yoshida6",
                       compose(make_strang_step(nls), sympx::yoshida6()));
    steps.emplace_back("tao+tj4",
                       compose(make_tao_step(nls, 100.0), sympx::triple_jump(4)));
    for (const auto& [name, step] : steps) {
      double worst = 0;
      for (int k = 0; k < 20; ++k) {
        const auto zeta = testutil::random_extended_point(rng, 5, -1.0, 1.0);
        const auto J = testutil::fd_jacobian(
            [&](const Eigen::VectorXd& v) {
              return to_flat(step(1e-2, from_flat(v)));
            },
            to_flat(zeta));
        worst = std::max(worst, testutil::symplectic_residual(J));
      }
      worst_ext = std::max(worst_ext, worst);
    }
    ok = ok && worst_ext <= 1e-5;
    info(fmt("extended base steps: worst residual = %.3e (bound 1e-5)",
             worst_ext));
  }

  report(5, ok, "finite-difference symplecticity residuals stay below 1e-5");
}

// ------------------------------------------------------------------- 6

void criterion_symmetry() {
  SolverConfig scfg;
  scfg.tolerance = 1e-13;
  const double bound = 10 * scfg.tolerance + 1e-12;
  std::mt19937_64 rng(103);
  const auto nls = nls_model<double>(4);
  bool ok = true;

  auto check_phase_map = [&](const std::string& name, auto&& step) {
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      const auto z = testutil::random_phase_point(rng, 4, -1.0, 1.0);
      const auto fwd = step(0.02, z);
      const auto back = step(-0.02, fwd);
      worst = std::max(worst, (to_flat(back) - to_flat(z)).norm());
    }
    const bool this_ok = worst <= bound;
    ok = ok && this_ok;
    info(fmt("%-22s worst forward-backward gap %.3e (bound %.3e)", name.c_str(),
             worst, bound));
  };

  auto base = make_strang_step(nls);
  check_phase_map("semiexplicit:2", [&](double dt, const PhasePoint<double>& z) {
    return semiexplicit_step(base, dt, z, scfg).z;
  });
  auto tj4 = compose(make_strang_step(nls), sympx::triple_jump(4));
  check_phase_map("semiexplicit:tj4", [&](double dt, const PhasePoint<double>& z) {
    return semiexplicit_step(tj4, dt, z, scfg).z;
  });
  const auto mid = midpoint_tableau();
  check_phase_map("midpoint", [&](double dt, const PhasePoint<double>& z) {
    return irk_step(nls, mid, dt, z, scfg).z;
  });
  const auto gl4 = gauss_legendre4_tableau();
  check_phase_map("irk4", [&](double dt, const PhasePoint<double>& z) {
    return irk_step(nls, gl4, dt, z, scfg).z;
  });

  // explicit extended maps are symmetric up to rounding
  std::vector<std::pair<std::string, ExtendedStepFn<double>>> ext;
  ext.emplace_back("strang", make_strang_step(nls));
  ext.emplace_back("tao", make_tao_step(nls, 100.0));
  ext.emplace_back("strang+suzuki4", compose(make_strang_step(nls), sympx::suzuki(4)));
  ext.emplace_back("strang+yoshida6",
                   compose(make_strang_step(nls), sympx::yoshida6()));
  for (const auto& [name, step] : ext) {
    double worst = 0;
    for (int k = 0; k < 20; ++k) {
      const auto zeta = testutil::random_extended_point(rng, 4, -1.0, 1.0);
      const auto fwd = step(0.02, zeta);
      worst =
          std::max(worst, (to_flat(step(-0.02, fwd)) - to_flat(zeta)).norm());
    }
    const bool this_ok = worst <= bound;
    ok = ok && this_ok;
    info(fmt("%-22s worst forward-backward gap %.3e (bound %.3e)", name.c_str(),
             worst, bound));
  }

  report(6, ok, "forward-then-backward steps return to the start state");
}

// ------------------------------------------------------------------- 7

void criterion_invariant_drift() {
  struct Outcome {
    std::map<std::string, double> slopes;
  };

  auto drift_run = [](RunConfig cfg) {
    const Trajectory tr = run_trajectory(cfg);
    Outcome out;
    for (const auto& e : invariant_drift_report(tr)) out.slopes[e.name] = e.slope;
    return out;
  };

  RunConfig nls_semi = nls_base();
  nls_semi.dt = 1e-3;
  nls_semi.T = 1000;
  nls_semi.solver.tolerance = 1e-13;
  nls_semi.stride = 100;

  RunConfig vort = vortex_base();
  vort.dt = 0.1;
  vort.T = 1000;
  vort.solver.tolerance = 1e-13;

  RunConfig mid_loose = nls_semi;
  mid_loose.spec = parse_method_spec("midpoint");
  mid_loose.solver.tolerance = 1e-10;

  RunConfig semi_loose = nls_semi;
  semi_loose.solver.tolerance = 1e-10;

  std::vector<std::function<Outcome()>> jobs{
      [&]() { return drift_run(nls_semi); }, [&]() { return drift_run(vort); },
      [&]() { return drift_run(mid_loose); },
      [&]() { return drift_run(semi_loose); }};
  auto results = run_parallel(std::move(jobs));

  bool ok = true;
  const double mass_slope = std::abs(results[0].slopes.at("total_mass"));
  ok = ok && mass_slope <= 1e-12;
  info(fmt("semiexplicit NLS total-mass drift %.3e per unit time (bound 1e-12)",
           mass_slope));
  for (const char* name : {"Q", "P", "I_angular"}) {
    const double s = std::abs(results[1].slopes.at(name));
    ok = ok && s <= 1e-12;
    info(fmt("semiexplicit vortex %-10s drift %.3e per unit time (bound 1e-12)",
             name, s));
  }
  const double mid_drift = std::abs(results[2].slopes.at("total_mass"));
  const double semi_drift = std::abs(results[3].slopes.at("total_mass"));
  ok = ok && mid_drift > semi_drift;
  info(fmt("total-mass drift at eps=1e-10: midpoint %.3e vs semiexplicit %.3e",
           mid_drift, semi_drift));

  report(7, ok, "long-run invariant drifts match the structure preservation");
}

// ------------------------------------------------------------------- 8

void criterion_broyden_robustness() {
  struct Outcome {
    double mean = 0;
    long failures = 0;
  };
  auto run = [](const char* spec, ProjectionMethod pm) {
    RunConfig cfg = vortex_disparate_base();
    cfg.spec = parse_method_spec(spec);
    cfg.dt = 0.01;
    cfg.T = 1000;
    cfg.solver.tolerance = 1e-13;
    cfg.solver.method = pm;
    cfg.stride = 100000;
    const auto rep = iteration_report(run_trajectory(cfg));
    return Outcome{rep.mean_iterations, rep.failure_count};
  };

  std::vector<std::function<Outcome()>> jobs{
      [&]() { return run("semiexplicit:none:2", ProjectionMethod::broyden); },
      [&]() {
        return run("semiexplicit:none:2", ProjectionMethod::simplified_newton);
      },
      [&]() {
        return run("semiexplicit:triple_jump:4", ProjectionMethod::broyden);
      },
      [&]() {
        return run("semiexplicit:triple_jump:4",
                   ProjectionMethod::simplified_newton);
      }};
  auto results = run_parallel(std::move(jobs));

  bool ok = true;
  ok = ok && results[0].failures == 0 && results[2].failures == 0;
  ok = ok && results[0].mean <= results[1].mean;
  ok = ok && results[2].mean <= results[3].mean;
  info(fmt("order 2: broyden %5.2f it, %ld failures | simplified %5.2f it, %ld "
           "failures",
           results[0].mean, results[0].failures, results[1].mean,
           results[1].failures));
  info(fmt("order 4: broyden %5.2f it, %ld failures | simplified %5.2f it, %ld "
           "failures",
           results[2].mean, results[2].failures, results[3].mean,
           results[3].failures));
  report(8, ok,
         "broyden converges at every step of the disparate-circulation run");
}

// ------------------------------------------------------------------- 9

void criterion_local_order() {
  const auto model = quartic_exact_model<double>();
  auto base = make_strang_step(model);
  SolverConfig scfg;
  scfg.tolerance = 1e-15;
  const PhasePoint<double> z0{Eigen::VectorXd::Constant(1, -3.0),
                              Eigen::VectorXd::Zero(1)};

  std::vector<double> lx, ly;
  for (double dt : {1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2}) {
    const auto one = semiexplicit_step(base, dt, z0, scfg);
    const auto ref = rk4_integrate(model, z0, dt, 100);
    const double err = (to_flat(one.z) - to_flat(ref)).norm();
    lx.push_back(std::log(dt));
    ly.push_back(std::log(err));
  }
  const double slope = fit_slope(lx, ly);
  const bool ok = std::abs(slope - 3.0) <= 0.5;
  info(fmt("local error slope %.2f (target 3 +- 0.5)", slope));
  report(9, ok, "one projected step matches the reference to local order n+1");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n-----------------\n");
  criteria_order_and_accuracy();
  criterion_defect_suppression();
  criterion_iteration_counts();
  criterion_symplecticity();
  criterion_symmetry();
  criterion_invariant_drift();
  criterion_broyden_robustness();
  criterion_local_order();
  std::printf("-----------------\n%s (%d failed)\n",
              g_failures == 0 ? "all criteria passed" : "FAILURES PRESENT",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
