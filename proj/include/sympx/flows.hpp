// Exactly solvable split flows on the doubled phase space and the
// explicit base steps built from them.
#ifndef SYMPX_FLOWS_HPP
#define SYMPX_FLOWS_HPP

#include "sympx/model.hpp"

#include <cmath>
#include <functional>

namespace sympx {

/// Flow of H(q, y): freezes (q, y), advances (x, p) linearly with the
/// gradients evaluated at (q, y).
template <typename Scalar>
ExtendedPoint<Scalar> flow_a(const HamiltonianModel<Scalar>& model, Scalar t,
                             const ExtendedPoint<Scalar>& zeta) {
  return {zeta.q, zeta.x + t * model.grad_p(zeta.q, zeta.y),
          zeta.p - t * model.grad_q(zeta.q, zeta.y), zeta.y};
}

/// Flow of H(x, p): mirror of flow_a with the roles of (q, y) and (x, p)
/// swapped.
template <typename Scalar>
ExtendedPoint<Scalar> flow_b(const HamiltonianModel<Scalar>& model, Scalar t,
                             const ExtendedPoint<Scalar>& zeta) {
  return {zeta.q + t * model.grad_p(zeta.x, zeta.p), zeta.x, zeta.p,
          zeta.y - t * model.grad_q(zeta.x, zeta.p)};
}

/// Flow of the copy-coupling term (omega/2)(|x - q|^2 + |y - p|^2): the
/// sums q + x and p + y are constant while the differences (q - x, p - y)
/// rotate by the angle 2*omega*t.  Written as a half-difference update so
/// the sums are conserved bitwise and t = 0 is the exact identity.
template <typename Scalar>
ExtendedPoint<Scalar> flow_c(Scalar omega, Scalar t,
                             const ExtendedPoint<Scalar>& zeta) {
  const Scalar theta = 2 * omega * t;
  const Scalar cm1 = std::cos(theta) - 1, s = std::sin(theta);
  Vector<Scalar> u = zeta.q - zeta.x;
  Vector<Scalar> v = zeta.p - zeta.y;
  Vector<Scalar> du = Scalar(0.5) * (cm1 * u + s * v);
  Vector<Scalar> dv = Scalar(0.5) * (cm1 * v - s * u);
  return {zeta.q + du, zeta.x - du, zeta.p + dv, zeta.y - dv};
}

/// Strang splitting A(dt/2) B(dt) A(dt/2); second order, symmetric.
template <typename Scalar>
ExtendedPoint<Scalar> strang_step(const HamiltonianModel<Scalar>& model,
                                  Scalar dt, const ExtendedPoint<Scalar>& zeta) {
  ExtendedPoint<Scalar> z = flow_a(model, dt / 2, zeta);
  z = flow_b(model, dt, z);
  return flow_a(model, dt / 2, z);
}

/// Five-map step A(dt/2) B(dt/2) C(dt) B(dt/2) A(dt/2) with the
/// copy-coupling rotation in the middle; second order, symmetric.
template <typename Scalar>
ExtendedPoint<Scalar> tao_step(const HamiltonianModel<Scalar>& model,
                               Scalar omega, Scalar dt,
                               const ExtendedPoint<Scalar>& zeta) {
  ExtendedPoint<Scalar> z = flow_a(model, dt / 2, zeta);
  z = flow_b(model, dt / 2, z);
  z = flow_c(omega, dt, z);
  z = flow_b(model, dt / 2, z);
  return flow_a(model, dt / 2, z);
}

/// A one-step map on the extended phase space with the step size passed
/// per call, so composition schemes can rescale freely.
template <typename Scalar>
using ExtendedStepFn =
    std::function<ExtendedPoint<Scalar>(Scalar, const ExtendedPoint<Scalar>&)>;

template <typename Scalar>
ExtendedStepFn<Scalar> make_strang_step(HamiltonianModel<Scalar> model) {
  return [model = std::move(model)](Scalar dt, const ExtendedPoint<Scalar>& z) {
    return strang_step(model, dt, z);
  };
}

template <typename Scalar>
ExtendedStepFn<Scalar> make_tao_step(HamiltonianModel<Scalar> model,
                                     Scalar omega) {
  return [model = std::move(model), omega](Scalar dt,
                                           const ExtendedPoint<Scalar>& z) {
    return tao_step(model, omega, dt, z);
  };
}

}  // namespace sympx

#endif  // SYMPX_FLOWS_HPP
