// The shipped benchmark Hamiltonians: a 1-d exactly solvable quartic, the
// discrete nonlinear Schroedinger lattice, and the planar point-vortex
// system in canonical coordinates.
#ifndef SYMPX_MODELS_HPP
#define SYMPX_MODELS_HPP

#include "sympx/model.hpp"

#include <cmath>
#include <numbers>

namespace sympx {

/// H(q, p) = (q^2 + 1)(p^2 + 1)/2 on T*R.  Non-separable but exactly
/// solvable, which makes it the standard order-study problem.
template <typename Scalar>
HamiltonianModel<Scalar> quartic_exact_model() {
  using Vec = Vector<Scalar>;
  HamiltonianModel<Scalar> m;
  m.dim = 1;
  m.energy = [](const Vec& q, const Vec& p) {
    return Scalar(0.5) * (q(0) * q(0) + 1) * (p(0) * p(0) + 1);
  };
  m.grad_q = [](const Vec& q, const Vec& p) {
    Vec g(1);
    g(0) = q(0) * (p(0) * p(0) + 1);
    return g;
  };
  m.grad_p = [](const Vec& q, const Vec& p) {
    Vec g(1);
    g(0) = p(0) * (q(0) * q(0) + 1);
    return g;
  };
  return m;
}

/// Finite-dimensional nonlinear Schroedinger lattice with N sites:
///   H = 1/4 sum_i (q_i^2 + p_i^2)^2
///       - sum_{i>=2} (p_{i-1}^2 p_i^2 + q_{i-1}^2 q_i^2 - q_{i-1}^2 p_i^2
///                     - p_{i-1}^2 q_i^2 + 4 p_{i-1} p_i q_{i-1} q_i).
/// Carries the total mass I = sum_i (q_i^2 + p_i^2) as a named invariant.
template <typename Scalar>
HamiltonianModel<Scalar> nls_model(Eigen::Index n_sites) {
  using Vec = Vector<Scalar>;
  if (n_sites < 2)
    throw std::invalid_argument("nls_model: need at least 2 lattice sites");

  HamiltonianModel<Scalar> m;
  m.dim = n_sites;
  m.energy = [n_sites](const Vec& q, const Vec& p) {
    Scalar h = 0;
    for (Eigen::Index i = 0; i < n_sites; ++i) {
      const Scalar r2 = q(i) * q(i) + p(i) * p(i);
      h += Scalar(0.25) * r2 * r2;
    }
    for (Eigen::Index i = 1; i < n_sites; ++i) {
      h -= p(i - 1) * p(i - 1) * p(i) * p(i) + q(i - 1) * q(i - 1) * q(i) * q(i)
           - q(i - 1) * q(i - 1) * p(i) * p(i) - p(i - 1) * p(i - 1) * q(i) * q(i)
           + 4 * p(i - 1) * p(i) * q(i - 1) * q(i);
    }
    return h;
  };
  m.grad_q = [n_sites](const Vec& q, const Vec& p) {
    Vec g(n_sites);
    for (Eigen::Index j = 0; j < n_sites; ++j) {
      Scalar v = (q(j) * q(j) + p(j) * p(j)) * q(j);
      if (j >= 1)
        v -= 2 * q(j - 1) * q(j - 1) * q(j) - 2 * p(j - 1) * p(j - 1) * q(j)
             + 4 * p(j - 1) * p(j) * q(j - 1);
      if (j + 1 < n_sites)
        v -= 2 * q(j) * q(j + 1) * q(j + 1) - 2 * q(j) * p(j + 1) * p(j + 1)
             + 4 * p(j) * p(j + 1) * q(j + 1);
      g(j) = v;
    }
    return g;
  };
  m.grad_p = [n_sites](const Vec& q, const Vec& p) {
    Vec g(n_sites);
    for (Eigen::Index j = 0; j < n_sites; ++j) {
      Scalar v = (q(j) * q(j) + p(j) * p(j)) * p(j);
      if (j >= 1)
        v -= 2 * p(j - 1) * p(j - 1) * p(j) - 2 * q(j - 1) * q(j - 1) * p(j)
             + 4 * p(j - 1) * q(j - 1) * q(j);
      if (j + 1 < n_sites)
        v -= 2 * p(j) * p(j + 1) * p(j + 1) - 2 * p(j) * q(j + 1) * q(j + 1)
             + 4 * p(j + 1) * q(j) * q(j + 1);
      g(j) = v;
    }
    return g;
  };
  m.named_invariants.emplace_back(
      "total_mass", [](const Vec& q, const Vec& p) -> Scalar {
        return q.squaredNorm() + p.squaredNorm();
      });
  return m;
}

/// N point vortices in the plane: centers (x_i, y_i), circulations
/// gamma_i != 0.
template <typename Scalar>
struct VortexConfig {
  Vector<Scalar> x, y, gamma;

  Eigen::Index size() const { return gamma.size(); }

  void validate() const {
    if (x.size() != y.size() || x.size() != gamma.size())
      throw std::invalid_argument("VortexConfig: mismatched vector lengths");
    if (x.size() < 2)
      throw std::invalid_argument("VortexConfig: need at least 2 vortices");
    for (Eigen::Index i = 0; i < gamma.size(); ++i)
      if (gamma(i) == Scalar(0))
        throw std::invalid_argument("VortexConfig: zero circulation");
    for (Eigen::Index i = 0; i < x.size(); ++i)
      for (Eigen::Index j = i + 1; j < x.size(); ++j) {
        const Scalar dx = x(i) - x(j), dy = y(i) - y(j);
        if (dx == Scalar(0) && dy == Scalar(0))
          throw std::invalid_argument("VortexConfig: coincident vortices");
      }
  }
};

/// Canonical coordinates q_i = sqrt|gamma_i| x_i, p_i = sqrt|gamma_i|
/// sgn(gamma_i) y_i.
template <typename Scalar>
PhasePoint<Scalar> vortex_to_canonical(const VortexConfig<Scalar>& cfg) {
  cfg.validate();
  const Eigen::Index n = cfg.size();
  Vector<Scalar> q(n), p(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar root = std::sqrt(std::abs(cfg.gamma(i)));
    const Scalar sign = cfg.gamma(i) > Scalar(0) ? Scalar(1) : Scalar(-1);
    q(i) = root * cfg.x(i);
    p(i) = root * sign * cfg.y(i);
  }
  return {q, p};
}

/// Inverse of vortex_to_canonical; exact up to rounding.
template <typename Scalar>
std::pair<Vector<Scalar>, Vector<Scalar>> canonical_to_vortex(
    const PhasePoint<Scalar>& z, const Vector<Scalar>& gamma) {
  if (z.dim() != gamma.size())
    throw std::invalid_argument("canonical_to_vortex: dimension mismatch");
  const Eigen::Index n = gamma.size();
  Vector<Scalar> x(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (gamma(i) == Scalar(0))
      throw std::invalid_argument("canonical_to_vortex: zero circulation");
    const Scalar root = std::sqrt(std::abs(gamma(i)));
    const Scalar sign = gamma(i) > Scalar(0) ? Scalar(1) : Scalar(-1);
    x(i) = z.q(i) / root;
    y(i) = sign * z.p(i) / root;
  }
  return {x, y};
}

namespace detail {

// Distance below which the log potential is treated as a collision.
inline constexpr double kVortexCollisionCutoff = 1e-12;

template <typename Scalar>
void canonical_to_positions(const Vector<Scalar>& q, const Vector<Scalar>& p,
                            const Vector<Scalar>& inv_root,
                            const Vector<Scalar>& sign, Vector<Scalar>& x,
                            Vector<Scalar>& y) {
  x = q.cwiseProduct(inv_root);
  y = p.cwiseProduct(inv_root).cwiseProduct(sign);
}

}  // namespace detail

/// Vortex interaction energy -(1/4pi) sum_{i != j} gamma_i gamma_j
/// log|z_i - z_j| expressed in canonical (q, p) coordinates, with the
/// linear impulse (Q, P) and the angular impulse exposed as invariants.
/// Any evaluation with a pairwise distance below 1e-12 throws
/// numerical_error: the potential is singular there and integrating
/// through a collision produces garbage silently otherwise.
template <typename Scalar>
HamiltonianModel<Scalar> vortex_model(const VortexConfig<Scalar>& cfg) {
  using Vec = Vector<Scalar>;
  cfg.validate();
  const Eigen::Index n = cfg.size();

  Vec gamma = cfg.gamma;
  Vec root(n), inv_root(n), sign(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    root(i) = std::sqrt(std::abs(gamma(i)));
    inv_root(i) = Scalar(1) / root(i);
    sign(i) = gamma(i) > Scalar(0) ? Scalar(1) : Scalar(-1);
  }

  constexpr Scalar cutoff2 = Scalar(detail::kVortexCollisionCutoff) *
                             Scalar(detail::kVortexCollisionCutoff);

  HamiltonianModel<Scalar> m;
  m.dim = n;
  m.energy = [n, gamma, inv_root, sign](const Vec& q, const Vec& p) {
    Vec x, y;
    detail::canonical_to_positions(q, p, inv_root, sign, x, y);
    Scalar h = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const Scalar dx = x(i) - x(j), dy = y(i) - y(j);
        const Scalar r2 = dx * dx + dy * dy;
        if (r2 < cutoff2)
          throw numerical_error("vortex_model: near-collision of vortices");
        h += gamma(i) * gamma(j) * std::log(r2);
      }
    // log(r2)/2 = log(r); each unordered pair counted twice in the sum
    // over i != j, hence the net prefactor -1/(4 pi).
    return -h / (Scalar(4) * std::numbers::pi_v<Scalar>);
  };
  m.grad_q = [n, gamma, root, inv_root, sign](const Vec& q, const Vec& p) {
    Vec x, y;
    detail::canonical_to_positions(q, p, inv_root, sign, x, y);
    Vec g = Vec::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      Scalar acc = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (i == k) continue;
        const Scalar dx = x(k) - x(i), dy = y(k) - y(i);
        const Scalar r2 = dx * dx + dy * dy;
        if (r2 < cutoff2)
          throw numerical_error("vortex_model: near-collision of vortices");
        acc += gamma(i) * dx / r2;
      }
      g(k) = -gamma(k) * inv_root(k) * acc /
             (Scalar(2) * std::numbers::pi_v<Scalar>);
    }
    return g;
  };
  m.grad_p = [n, gamma, inv_root, sign](const Vec& q, const Vec& p) {
    Vec x, y;
    detail::canonical_to_positions(q, p, inv_root, sign, x, y);
    Vec g = Vec::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      Scalar acc = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (i == k) continue;
        const Scalar dx = x(k) - x(i), dy = y(k) - y(i);
        const Scalar r2 = dx * dx + dy * dy;
        if (r2 < cutoff2)
          throw numerical_error("vortex_model: near-collision of vortices");
        acc += gamma(i) * dy / r2;
      }
      g(k) = -sign(k) * gamma(k) * inv_root(k) * acc /
             (Scalar(2) * std::numbers::pi_v<Scalar>);
    }
    return g;
  };

  m.named_invariants.emplace_back("Q", [root, sign](const Vec& q,
                                                    const Vec& p) -> Scalar {
    (void)p;
    return (sign.cwiseProduct(root).cwiseProduct(q)).sum();
  });
  m.named_invariants.emplace_back("P", [root](const Vec& q,
                                              const Vec& p) -> Scalar {
    (void)q;
    return (root.cwiseProduct(p)).sum();
  });
  m.named_invariants.emplace_back(
      "I_angular", [sign](const Vec& q, const Vec& p) -> Scalar {
        return (sign.array() * (q.array().square() + p.array().square())).sum();
      });
  return m;
}

}  // namespace sympx

#endif  // SYMPX_MODELS_HPP
