// Fully implicit symplectic baselines: implicit midpoint and the 2-stage
// Gauss-Legendre method, with a full Newton stage solver.
#ifndef SYMPX_IRK_HPP
#define SYMPX_IRK_HPP

#include "sympx/projection.hpp"

#include <cmath>

namespace sympx {

struct IrkTableau {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  int order = 0;

  Eigen::Index stages() const { return b.size(); }
};

inline IrkTableau midpoint_tableau() {
  IrkTableau t;
  t.a = Eigen::MatrixXd::Constant(1, 1, 0.5);
  t.b = Eigen::VectorXd::Constant(1, 1.0);
  t.c = Eigen::VectorXd::Constant(1, 0.5);
  t.order = 2;
  return t;
}

inline IrkTableau gauss_legendre4_tableau() {
  const double s3 = std::sqrt(3.0) / 6.0;
  IrkTableau t;
  t.a.resize(2, 2);
  t.a << 0.25, 0.25 - s3, 0.25 + s3, 0.25;
  t.b.resize(2);
  t.b << 0.5, 0.5;
  t.c.resize(2);
  t.c << 0.5 - s3, 0.5 + s3;
  t.order = 4;
  return t;
}

namespace detail {

/// Hamiltonian vector field (D2 H, -D1 H) on the flat (q, p) vector.
template <typename Scalar>
Vector<Scalar> hamiltonian_field(const HamiltonianModel<Scalar>& model,
                                 const Vector<Scalar>& z) {
  const Eigen::Index d = model.dim;
  Vector<Scalar> f(2 * d);
  f.head(d) = model.grad_p(z.head(d), z.tail(d));
  f.tail(d) = -model.grad_q(z.head(d), z.tail(d));
  return f;
}

}  // namespace detail

/// One step of an implicit Runge-Kutta method, solving the stage
/// equations K_i = f(z_n + dt sum_j a_ij K_j) for the stage derivatives.
///
/// Like the projection solver, the iteration is a simplified Newton with
/// the dt -> 0 Jacobian of the stage system, which here is the identity,
/// so each update is the raw stage residual.  The contraction rate is
/// O(dt * L) and the accepted stages carry an error of the order of the
/// stopping tolerance; with a loose tolerance that error is visible as a
/// slow drift in quadratic invariants, which the comparison runs rely on.
/// Stops when the candidate stage increment drops below cfg.tolerance;
/// hitting max_iterations is flagged via converged = false.
template <typename Scalar>
StepResult<Scalar> irk_step(const HamiltonianModel<Scalar>& model,
                            const IrkTableau& tableau, Scalar dt,
                            const PhasePoint<Scalar>& z,
                            const SolverConfig& cfg) {
  using Vec = Vector<Scalar>;
  using Mat = Matrix<Scalar>;
  if (!(cfg.tolerance > 0))
    throw std::invalid_argument("irk_step: tolerance must be > 0");
  if (cfg.max_iterations < 1)
    throw std::invalid_argument("irk_step: max_iterations must be >= 1");

  const Eigen::Index d = model.dim;
  const Eigen::Index n = 2 * d;
  const Eigen::Index s = tableau.stages();
  const Vec z0 = to_flat(z);

  // Stage derivatives, seeded with the dt -> 0 limit f(z_n).
  const Vec f0 = detail::hamiltonian_field(model, z0);
  if (!f0.allFinite()) throw numerical_error("irk_step: non-finite field");
  Mat stages(n, s);
  for (Eigen::Index i = 0; i < s; ++i) stages.col(i) = f0;

  SolverStats<Scalar> stats;
  int moves = 0;
  Mat residual(n, s);
  for (;;) {
    for (Eigen::Index i = 0; i < s; ++i) {
      Vec yi = z0;
      for (Eigen::Index j = 0; j < s; ++j)
        yi += dt * Scalar(tableau.a(i, j)) * stages.col(j);
      const Vec fi = detail::hamiltonian_field(model, yi);
      if (!fi.allFinite()) throw numerical_error("irk_step: non-finite field");
      residual.col(i) = fi - stages.col(i);
    }
    const Scalar delta_norm = residual.norm();
    if (!std::isfinite(delta_norm))
      throw numerical_error("irk_step: stage update is non-finite");
    if (delta_norm < Scalar(cfg.tolerance)) {
      stats.converged = true;
      stats.final_update_norm = delta_norm;
      stats.iterations = moves + 1;
      break;
    }
    if (moves >= cfg.max_iterations) {
      stats.converged = false;
      stats.final_update_norm = delta_norm;
      stats.iterations = moves;
      break;
    }
    stages += residual;
    ++moves;
  }

  Vec z1 = z0;
  for (Eigen::Index i = 0; i < s; ++i)
    z1 += dt * Scalar(tableau.b(i)) * stages.col(i);
  return {phase_from_flat(z1), stats, Scalar(0)};
}

}  // namespace sympx

#endif  // SYMPX_IRK_HPP
