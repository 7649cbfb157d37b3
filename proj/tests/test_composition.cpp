#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sympx/composition.hpp"
#include "sympx/models.hpp"
#include "testutil.hpp"

using namespace sympx;

namespace {

void check_scheme_shape(const CompositionScheme& s, std::size_t len) {
  REQUIRE(s.coefficients.size() == len);
  double sum = 0;
  for (double c : s.coefficients) sum += c;
  CHECK(std::abs(sum - 1.0) <= 1e-13);
  for (std::size_t i = 0; i < len; ++i)
    CHECK(s.coefficients[i] == doctest::Approx(s.coefficients[len - 1 - i])
                                   .epsilon(1e-15));
}

}  // namespace

TEST_CASE("triple jump coefficients") {
  const auto s4 = triple_jump(4);
  check_scheme_shape(s4, 3);
  CHECK(s4.coefficients[0] ==
        doctest::Approx(1.3512071919596578).epsilon(1e-15));
  CHECK(s4.coefficients[1] ==
        doctest::Approx(-1.7024143839193153).epsilon(1e-15));
  CHECK(s4.claimed_order == 4);

  const auto s6 = triple_jump(6);
  check_scheme_shape(s6, 9);
  // spot values from an independent expansion of the recursion
  CHECK(s6.coefficients[0] ==
        doctest::Approx(1.5872249277222432).epsilon(1e-14));
  CHECK(s6.coefficients[4] ==
        doctest::Approx(2.2971418107909303).epsilon(1e-14));

  check_scheme_shape(triple_jump(8), 27);
}

TEST_CASE("suzuki coefficients") {
  const auto s4 = suzuki(4);
  check_scheme_shape(s4, 5);
  CHECK(s4.coefficients[0] ==
        doctest::Approx(0.4144907717943757).epsilon(1e-15));
  CHECK(s4.coefficients[1] ==
        doctest::Approx(0.4144907717943757).epsilon(1e-15));
  CHECK(s4.coefficients[2] ==
        doctest::Approx(-0.6579630871775028).epsilon(1e-15));

  check_scheme_shape(suzuki(6), 25);
}

TEST_CASE("yoshida6 coefficients") {
  const auto s = yoshida6();
  check_scheme_shape(s, 7);
  CHECK(s.claimed_order == 6);
  double sum = 0;
  for (double c : s.coefficients) sum += c;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("invalid composition orders are rejected") {
  CHECK_THROWS_AS(triple_jump(2), std::invalid_argument);
  CHECK_THROWS_AS(triple_jump(5), std::invalid_argument);
  CHECK_THROWS_AS(suzuki(3), std::invalid_argument);
  CHECK_THROWS_AS(suzuki(0), std::invalid_argument);
}

TEST_CASE("compose with the trivial scheme is the base step") {
  const auto m = quartic_exact_model<double>();
  auto base = make_strang_step(m);
  auto composed = compose(base, CompositionScheme{{1.0}, 2});
  std::mt19937_64 rng(41);
  const auto zeta = testutil::random_extended_point(rng, 1);
  CHECK((to_flat(composed(0.02, zeta)) - to_flat(base(0.02, zeta)))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("composed steps are symmetric and symplectic") {
  const auto nls = nls_model<double>(3);
  auto tj4 = compose(make_strang_step(nls), triple_jump(4));
  std::mt19937_64 rng(43);
  for (int k = 0; k < 8; ++k) {
    const auto zeta = testutil::random_extended_point(rng, 3);
    const auto fwd = tj4(0.02, zeta);
    CHECK((to_flat(tj4(-0.02, fwd)) - to_flat(zeta)).cwiseAbs().maxCoeff() <
          1e-12);
  }
  for (int k = 0; k < 3; ++k) {
    const auto zeta = testutil::random_extended_point(rng, 3);
    const auto J = testutil::fd_jacobian(
        [&](const Eigen::VectorXd& v) { return to_flat(tj4(0.01, from_flat(v))); },
        to_flat(zeta));
    CHECK(testutil::symplectic_residual(J) < 1e-6);
  }
}

TEST_CASE("triple-jump-4 over Strang has fifth-order local error") {
  const auto quartic = quartic_exact_model<double>();
  auto tj4 = compose(make_strang_step(quartic), triple_jump(4));
  const auto zeta = embed(PhasePoint<double>{
      Eigen::VectorXd::Constant(1, -3.0), Eigen::VectorXd::Zero(1)});

  auto local_err = [&](double dt) {
    const auto stepped = to_flat(tj4(dt, zeta));
    const auto oracle = testutil::rk4_extended(quartic, to_flat(zeta), dt, 400);
    return (stepped - oracle).norm();
  };
  const double e1 = local_err(0.02);
  const double e2 = local_err(0.01);
  // halving dt shrinks a dt^5 local error by 32
  CHECK(e1 / e2 > 20.0);
  CHECK(e1 / e2 < 45.0);
}

TEST_CASE("fused Strang composition matches the unfused one") {
  const auto nls = nls_model<double>(3);
  const auto scheme = triple_jump(4);
  auto plain = compose(make_strang_step(nls), scheme);
  auto fused = make_fused_strang(nls, scheme);
  std::mt19937_64 rng(47);
  for (int k = 0; k < 10; ++k) {
    const auto zeta = testutil::random_extended_point(rng, 3);
    CHECK((to_flat(plain(0.02, zeta)) - to_flat(fused(0.02, zeta)))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}
