// Classical RK4 reference integrator with a step-halving convergence
// check; the independent baseline for local-error and drift comparisons.
#ifndef SYMPX_REFERENCE_HPP
#define SYMPX_REFERENCE_HPP

#include "sympx/irk.hpp"

namespace sympx {

/// Fixed-step classical RK4 applied to the canonical equations.
template <typename Scalar>
PhasePoint<Scalar> rk4_integrate(const HamiltonianModel<Scalar>& model,
                                 const PhasePoint<Scalar>& z0, Scalar T,
                                 long nsteps) {
  using Vec = Vector<Scalar>;
  if (nsteps < 1) throw std::invalid_argument("rk4_integrate: nsteps < 1");
  const Scalar h = T / Scalar(nsteps);
  Vec z = to_flat(z0);
  for (long k = 0; k < nsteps; ++k) {
    const Vec k1 = detail::hamiltonian_field(model, z);
    const Vec k2 = detail::hamiltonian_field(model, Vec(z + (h / 2) * k1));
    const Vec k3 = detail::hamiltonian_field(model, Vec(z + (h / 2) * k2));
    const Vec k4 = detail::hamiltonian_field(model, Vec(z + h * k3));
    z += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return phase_from_flat(z);
}

/// RK4 with the number of steps doubled until successive answers agree to
/// within tol.  Throws numerical_error if the halving never settles.
template <typename Scalar>
PhasePoint<Scalar> reference_oracle(const HamiltonianModel<Scalar>& model,
                                    const PhasePoint<Scalar>& z0, Scalar T,
                                    Scalar tol) {
  if (!(tol > 0)) throw std::invalid_argument("reference_oracle: tol <= 0");
  if (T == Scalar(0)) return z0;

  long n = std::max<long>(16, static_cast<long>(std::ceil(std::abs(T) / 0.01)));
  PhasePoint<Scalar> coarse = rk4_integrate(model, z0, T, n);
  for (int round = 0; round < 24; ++round) {
    n *= 2;
    PhasePoint<Scalar> fine = rk4_integrate(model, z0, T, n);
    const Scalar diff = (to_flat(fine) - to_flat(coarse)).norm();
    if (!std::isfinite(diff))
      throw numerical_error("reference_oracle: integration diverged");
    if (diff < tol) return fine;
    coarse = std::move(fine);
  }
  throw numerical_error("reference_oracle: step halving did not converge");
}

}  // namespace sympx

#endif  // SYMPX_REFERENCE_HPP
