// Palindromic composition schemes that raise the order of a symmetric
// base step: Triple Jump, Suzuki's fractal, and Yoshida's 7-stage
// 6th-order sequence.
#ifndef SYMPX_COMPOSITION_HPP
#define SYMPX_COMPOSITION_HPP

#include "sympx/flows.hpp"

#include <cmath>
#include <vector>

namespace sympx {

/// Ordered stage scalings gamma_i applied to a symmetric base step.
/// Invariants: coefficients sum to 1 and form a palindrome.
struct CompositionScheme {
  std::vector<double> coefficients;
  int claimed_order = 2;
};

namespace detail {

inline void require_even_order(int n, const char* who) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument(std::string(who) +
                                ": order must be an even integer >= 4");
}

// Expands an order-(n-2) coefficient list through one branching level.
inline std::vector<double> expand(const std::vector<double>& inner,
                                  const std::vector<double>& gammas) {
  std::vector<double> out;
  out.reserve(inner.size() * gammas.size());
  for (double g : gammas)
    for (double c : inner) out.push_back(g * c);
  return out;
}

}  // namespace detail

/// Triple Jump: gamma_1 = gamma_3 = 1/(2 - 2^{1/(n-1)}) and
/// gamma_2 = -2^{1/(n-1)}/(2 - 2^{1/(n-1)}), applied recursively from the
/// order-2 base.  Flattened length 3^{(n-2)/2}.
inline CompositionScheme triple_jump(int order) {
  detail::require_even_order(order, "triple_jump");
  std::vector<double> coeffs{1.0};
  for (int m = 4; m <= order; m += 2) {
    const double r = std::pow(2.0, 1.0 / (m - 1));
    const double g1 = 1.0 / (2.0 - r);
    coeffs = detail::expand(coeffs, {g1, -r * g1, g1});
  }
  return {std::move(coeffs), order};
}

/// Suzuki fractal: four outer stages 1/(4 - 4^{1/(n-1)}) around a central
/// -4^{1/(n-1)}/(4 - 4^{1/(n-1)}).  Flattened length 5^{(n-2)/2}.
inline CompositionScheme suzuki(int order) {
  detail::require_even_order(order, "suzuki");
  std::vector<double> coeffs{1.0};
  for (int m = 4; m <= order; m += 2) {
    const double r = std::pow(4.0, 1.0 / (m - 1));
    const double g1 = 1.0 / (4.0 - r);
    coeffs = detail::expand(coeffs, {g1, g1, -r * g1, g1, g1});
  }
  return {std::move(coeffs), order};
}

/// Yoshida's 7-stage 6th-order composition, solution A of Yoshida (1990).
/// The central weight is defined by w0 = 1 - 2(w1 + w2 + w3), which pins
/// the coefficient sum to 1 exactly.
inline CompositionScheme yoshida6() {
  constexpr double w1 = -1.17767998417887100694641568;
  constexpr double w2 = 0.23557321335935813368479318;
  constexpr double w3 = 0.78451361047755726381949763;
  constexpr double w0 = 1.0 - 2.0 * (w1 + w2 + w3);
  return {{w3, w2, w1, w0, w1, w2, w3}, 6};
}

/// Runs the base step once per stage with step gamma_i * dt.  Symmetric
/// whenever the base step is symmetric and the scheme palindromic.
template <typename Scalar>
ExtendedStepFn<Scalar> compose(ExtendedStepFn<Scalar> base,
                               CompositionScheme scheme) {
  if (scheme.coefficients.size() == 1 && scheme.coefficients[0] == 1.0)
    return base;
  return [base = std::move(base), scheme = std::move(scheme)](
             Scalar dt, const ExtendedPoint<Scalar>& zeta) {
    ExtendedPoint<Scalar> z = zeta;
    for (double g : scheme.coefficients) z = base(Scalar(g) * dt, z);
    return z;
  };
}

/// Composed Strang sequence with adjacent A half-steps merged: the A-flow
/// freezes its own arguments, so A(s) then A(t) equals A(s + t) up to
/// rounding.  Changes rounding behaviour only; off by default in the
/// harness.
template <typename Scalar>
ExtendedStepFn<Scalar> make_fused_strang(HamiltonianModel<Scalar> model,
                                         CompositionScheme scheme) {
  return [model = std::move(model), scheme = std::move(scheme)](
             Scalar dt, const ExtendedPoint<Scalar>& zeta) {
    const auto& g = scheme.coefficients;
    ExtendedPoint<Scalar> z = flow_a(model, Scalar(g.front()) * dt / 2, zeta);
    for (std::size_t i = 0; i < g.size(); ++i) {
      z = flow_b(model, Scalar(g[i]) * dt, z);
      const double trailing =
          i + 1 < g.size() ? (g[i] + g[i + 1]) / 2 : g[i] / 2;
      z = flow_a(model, Scalar(trailing) * dt, z);
    }
    return z;
  };
}

}  // namespace sympx

#endif  // SYMPX_COMPOSITION_HPP
