// Problem definition interface: energy, its two partial gradients, and
// named conserved quantities.
#ifndef SYMPX_MODEL_HPP
#define SYMPX_MODEL_HPP

#include "sympx/types.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace sympx {

/// A Hamiltonian system on T*R^d.  Gradients are hand-coded analytic
/// expressions (the inner integration loop evaluates them constantly);
/// check_gradients() guards them against the energy function.
template <typename Scalar>
struct HamiltonianModel {
  using Vec = Vector<Scalar>;
  using EnergyFn = std::function<Scalar(const Vec&, const Vec&)>;
  using GradientFn = std::function<Vec(const Vec&, const Vec&)>;

  Eigen::Index dim = 0;
  EnergyFn energy;
  GradientFn grad_q;  // partial derivative w.r.t. the first argument set
  GradientFn grad_p;  // partial derivative w.r.t. the second argument set

  /// Conserved quantities other than the energy itself.
  std::vector<std::pair<std::string, EnergyFn>> named_invariants;
};

/// Max componentwise relative mismatch between the analytic gradients and
/// central finite differences of the energy with step h, measured as
/// |analytic - numeric| / (1 + |analytic|).
template <typename Scalar>
Scalar check_gradients(const HamiltonianModel<Scalar>& model,
                       const PhasePoint<Scalar>& z, Scalar h) {
  if (!(h > Scalar(0))) throw std::invalid_argument("check_gradients: h <= 0");
  const Vector<Scalar> gq = model.grad_q(z.q, z.p);
  const Vector<Scalar> gp = model.grad_p(z.q, z.p);
  Scalar worst = Scalar(0);
  Vector<Scalar> qp = z.q, qm = z.q, pp = z.p, pm = z.p;
  for (Eigen::Index i = 0; i < model.dim; ++i) {
    qp(i) += h;
    qm(i) -= h;
    const Scalar dq = (model.energy(qp, z.p) - model.energy(qm, z.p)) / (2 * h);
    qp(i) = z.q(i);
    qm(i) = z.q(i);
    worst = std::max(worst, std::abs(gq(i) - dq) / (1 + std::abs(gq(i))));

    pp(i) += h;
    pm(i) -= h;
    const Scalar dp = (model.energy(z.q, pp) - model.energy(z.q, pm)) / (2 * h);
    pp(i) = z.p(i);
    pm(i) = z.p(i);
    worst = std::max(worst, std::abs(gp(i) - dp) / (1 + std::abs(gp(i))));
  }
  return worst;
}

}  // namespace sympx

#endif  // SYMPX_MODEL_HPP
