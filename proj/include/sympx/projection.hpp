// Symmetric projection of an explicit extended-phase-space step back onto
// the diagonal submanifold where both copies of the state agree: residual
// function, simplified Newton and good Broyden solvers, and the full
// projected step.
#ifndef SYMPX_PROJECTION_HPP
#define SYMPX_PROJECTION_HPP

#include "sympx/flows.hpp"

#include <algorithm>
#include <cmath>

namespace sympx {

enum class ProjectionMethod { simplified_newton, broyden };

struct SolverConfig {
  double tolerance = 1e-10;  // stopping threshold on the update norm
  int max_iterations = 100;
  ProjectionMethod method = ProjectionMethod::simplified_newton;
};

template <typename Scalar>
struct SolverStats {
  int iterations = 0;
  Scalar final_update_norm = 0;  // |mu^(N+1) - mu^(N)| at exit
  bool converged = false;
};

/// f(mu) = A(Phi_dt(zeta_n + A^T mu) + A^T mu)
///       = defect(Phi_dt(shift(zeta_n, mu))) + 2 mu,   since A A^T = 2 I.
/// zeta_n is expected to lie on the diagonal (defect zero).
template <typename Scalar>
DefectVector<Scalar> residual(const ExtendedStepFn<Scalar>& base_step,
                              Scalar dt, const ExtendedPoint<Scalar>& zeta_n,
                              const DefectVector<Scalar>& mu) {
  DefectVector<Scalar> f = defect(base_step(dt, shift(zeta_n, mu)));
  f.mu1 += 2 * mu.mu1;
  f.mu2 += 2 * mu.mu2;
  return f;
}

/// Multiplier, the base step evaluated at the accepted shifted point, and
/// solver telemetry.  step_at_mu is exactly Phi_dt(zeta_n + A^T mu); the
/// caller finishes the step by shifting it once more, with no extra
/// evaluation of the base step.
template <typename Scalar>
struct ProjectionResult {
  DefectVector<Scalar> mu;
  ExtendedPoint<Scalar> step_at_mu;
  SolverStats<Scalar> stats;
};

namespace detail {

template <typename Scalar>
ExtendedPoint<Scalar> shift_flat(const ExtendedPoint<Scalar>& zeta,
                                 const Vector<Scalar>& mu) {
  const Eigen::Index d = zeta.dim();
  return {zeta.q + mu.head(d), zeta.x - mu.head(d), zeta.p + mu.tail(d),
          zeta.y - mu.tail(d)};
}

template <typename Scalar>
Vector<Scalar> residual_flat(const ExtendedPoint<Scalar>& phi,
                             const Vector<Scalar>& mu) {
  const Eigen::Index d = phi.dim();
  Vector<Scalar> f(2 * d);
  f.head(d) = phi.q - phi.x + 2 * mu.head(d);
  f.tail(d) = phi.p - phi.y + 2 * mu.tail(d);
  return f;
}

}  // namespace detail

/// Solves f(mu) = 0 for the projection multiplier, starting from mu = 0.
///
/// Both solvers compute the candidate update delta = mu^(k+1) - mu^(k)
/// and stop as soon as |delta| < tolerance, returning mu^(k) together
/// with the base-step evaluation made at it.  The simplified Newton
/// update is delta = -f/4 (the dt = 0 Jacobian of f is 4I); Broyden
/// maintains the 2d x 2d inverse-Jacobian approximation through rank-one
/// Sherman-Morrison updates from J0 = 4I, so its first iterate coincides
/// with simplified Newton's.
///
/// Hitting max_iterations is reported through converged = false rather
/// than an error; the best iterate is still returned so long runs can
/// proceed and flag the event.
template <typename Scalar>
ProjectionResult<Scalar> solve_projection(const ExtendedStepFn<Scalar>& base_step,
                                          Scalar dt,
                                          const ExtendedPoint<Scalar>& zeta_n,
                                          const SolverConfig& cfg) {
  using Vec = Vector<Scalar>;
  if (!(cfg.tolerance > 0))
    throw std::invalid_argument("solve_projection: tolerance must be > 0");
  if (cfg.max_iterations < 1)
    throw std::invalid_argument("solve_projection: max_iterations must be >= 1");

  const Eigen::Index d = zeta_n.dim();
  const bool use_broyden = cfg.method == ProjectionMethod::broyden;

  Vec mu = Vec::Zero(2 * d);
  ExtendedPoint<Scalar> phi = base_step(dt, zeta_n);
  Vec f = detail::residual_flat(phi, mu);
  if (!f.allFinite())
    throw numerical_error("solve_projection: non-finite residual");

  Matrix<Scalar> inv_jac;
  if (use_broyden)
    inv_jac = Scalar(0.25) *
              Matrix<Scalar>::Identity(2 * d, 2 * d);

  SolverStats<Scalar> stats;
  int moves = 0;
  for (;;) {
    const Vec delta = use_broyden ? Vec(-(inv_jac * f)) : Vec(-f / 4);
    const Scalar delta_norm = delta.norm();
    if (delta_norm < Scalar(cfg.tolerance)) {
      stats.converged = true;
      stats.final_update_norm = delta_norm;
      stats.iterations = moves + 1;  // counts the accepted update as well
      break;
    }
    if (moves >= cfg.max_iterations) {
      stats.converged = false;
      stats.final_update_norm = delta_norm;
      stats.iterations = moves;
      break;
    }
    mu += delta;
    ++moves;
    const Vec f_prev = f;
    phi = base_step(dt, detail::shift_flat(zeta_n, mu));
    f = detail::residual_flat(phi, mu);
    if (!f.allFinite())
      throw numerical_error("solve_projection: non-finite residual");
    if (use_broyden) {
      const Vec df = f - f_prev;
      const Vec bdf = inv_jac * df;
      const Scalar denom = delta.dot(bdf);
      // A vanishing denominator would blow up the rank-one update; keep
      // the previous approximation for this iteration instead.
      if (std::abs(denom) >= Scalar(1e-30))
        inv_jac += (delta - bdf) * (delta.transpose() * inv_jac) / denom;
    }
  }

  return {{mu.head(d), mu.tail(d)}, std::move(phi), stats};
}

template <typename Scalar>
ProjectionResult<Scalar> simplified_newton(const ExtendedStepFn<Scalar>& base_step,
                                           Scalar dt,
                                           const ExtendedPoint<Scalar>& zeta_n,
                                           SolverConfig cfg) {
  cfg.method = ProjectionMethod::simplified_newton;
  return solve_projection(base_step, dt, zeta_n, cfg);
}

template <typename Scalar>
ProjectionResult<Scalar> broyden(const ExtendedStepFn<Scalar>& base_step,
                                 Scalar dt, const ExtendedPoint<Scalar>& zeta_n,
                                 SolverConfig cfg) {
  cfg.method = ProjectionMethod::broyden;
  return solve_projection(base_step, dt, zeta_n, cfg);
}

/// One-step result in the original phase space.  defect_norm is the copy
/// discrepancy of the extended point after the closing shift; for a
/// converged projection it is bounded by 4 * tolerance up to rounding.
template <typename Scalar>
struct StepResult {
  PhasePoint<Scalar> z;
  SolverStats<Scalar> stats;
  Scalar defect_norm = 0;
};

/// The projected step: embed, pre-shift by A^T mu, run the explicit base
/// step, post-shift by the same A^T mu, restrict.  mu always restarts at
/// zero (a warm start from the previous step would break the symmetry of
/// the resulting map).
template <typename Scalar>
StepResult<Scalar> semiexplicit_step(const ExtendedStepFn<Scalar>& base_step,
                                     Scalar dt, const PhasePoint<Scalar>& z,
                                     const SolverConfig& cfg) {
  ProjectionResult<Scalar> pr =
      solve_projection(base_step, dt, embed(z), cfg);
  const ExtendedPoint<Scalar> zeta_next = shift(pr.step_at_mu, pr.mu);
  const Scalar dnorm = defect(zeta_next).norm();
  if (pr.stats.converged) {
    const Scalar scale = Scalar(1) + to_flat(zeta_next).template lpNorm<Eigen::Infinity>();
    if (dnorm > 4 * Scalar(cfg.tolerance) + Scalar(1e-12) * scale)
      throw numerical_error(
          "semiexplicit_step: post-shift defect exceeds the solver bound");
  }
  return {average_restrict(zeta_next), pr.stats, dnorm};
}

}  // namespace sympx

#endif  // SYMPX_PROJECTION_HPP
