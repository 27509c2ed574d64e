#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ckn/conformal_invariant.hpp"
#include "ckn/fields.hpp"

using namespace ckn;

TEST_CASE("invariant_coeffs: closed values, defining system, guards") {
  // gamma = 0
  const InvariantCoeffs c0 = invariant_coeffs(0.0, 7.0, 4);
  CHECK(c0.beta == doctest::Approx(-(4.0 - 1.0) / (7.0 - 4.0)).epsilon(1e-15));
  CHECK(c0.theta == doctest::Approx((7.0 - 2.0) / (4.0 * 3.0)).epsilon(1e-15));

  // gamma = -2 special case stays finite for n > d
  CHECK_NOTHROW(invariant_coeffs(-2.0, 6.5, 4));

  // all three defining equations hold
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const int d = 3 + static_cast<int>(rng.next_u64() % 3);
    const double n = d + rng.uniform(0.5, 5.0);
    const double gamma = rng.uniform(-3.0, 3.0);
    if (std::abs(4.0 * (d - 1.0) - 2.0 * gamma * (n - d)) < 0.1) continue;
    const InvariantCoeffs c = invariant_coeffs(gamma, n, d);
    for (double r : c.residuals) CHECK(std::abs(r) < 1e-12);
  }

  // pole and n = d rejection
  CHECK_THROWS_AS(invariant_coeffs(2.0 * 3.0 / (7.0 - 4.0), 7.0, 4), PoleError);
  CHECK_THROWS_AS(invariant_coeffs(1.0, 4.0, 4), DegenerateParams);
  CHECK_THROWS_AS(invariant_coeffs(1.0, 3.5, 4), DegenerateParams);
}

TEST_CASE("S_gamma0 is constant on the three models") {
  const CknParams p = derive(0.0, 0.5, 4);  // gamma0 = -3
  REQUIRE(p.gamma0.has_value());
  CHECK(*p.gamma0 == doctest::Approx(-3.0).epsilon(1e-13));
  const double target = 0.25 * p.n * (p.n - 2.0) * sq(p.alpha);

  const ModelSpace euc = make_space(ModelKind::EuclideanCKN, p);
  const ModelSpace sph = make_space(ModelKind::SphericalCKN, p);
  const ModelSpace hyp = make_space(ModelKind::HyperbolicCKN, p);
  for (const Vec& x : seeded_cartesian_points(4, 3, 6, 0.6, 1.6)) {
    CHECK(std::abs(s_gamma(euc, *p.gamma0, x)) < 1e-7);
    CHECK(s_gamma(sph, *p.gamma0, x) == doctest::Approx(target).epsilon(1e-8));
  }
  for (const Vec& x : seeded_cartesian_points(4, 5, 6, 0.3, 0.7)) {
    CHECK(s_gamma(hyp, *p.gamma0, x) == doctest::Approx(-target).epsilon(1e-8));
  }
}

TEST_CASE("S_gamma0 constants do not depend on the curvature-margin sign") {
  const CknParams p = derive(-2.0, -1.5, 4);  // b_dgz = -4 < 0, alpha = 1, n = 8
  REQUIRE(p.gamma0.has_value());
  const double target = 0.25 * p.n * (p.n - 2.0) * sq(p.alpha);
  const ModelSpace euc = make_space(ModelKind::EuclideanCKN, p);
  const ModelSpace sph = make_space(ModelKind::SphericalCKN, p);
  for (const Vec& x : seeded_cartesian_points(4, 9, 4, 0.6, 1.4)) {
    CHECK(std::abs(s_gamma(euc, *p.gamma0, x)) < 1e-7);
    CHECK(s_gamma(sph, *p.gamma0, x) == doctest::Approx(target).epsilon(1e-8));
  }
}

TEST_CASE("transformation law on seeded conformal factors") {
  for (int d : {3, 4}) {
    for (double gap : {1.0, 3.0}) {
      const double n = d + gap;
      const CknParams params = derive(0.0, 1.0 - d / n, d);
      const WeightedSpace space =
          as_weighted_space(make_space(ModelKind::EuclideanCKN, params));
      const auto tau = seeded_cartesian_scalar(d, 11, 0, 0.3);
      for (const Vec& x : seeded_cartesian_points(d, 13, 3, 0.6, 1.4)) {
        CHECK(transformation_law_residual(space, 0.7, tau, x) < 1e-6);
        CHECK(yamabe_residual(space, 0.7, tau, x) < 1e-6);
      }
      // tau constant: pure scaling
      const ScalarFn tconst = [](const Vec&) { return 0.4; };
      const Vec x0 = seeded_cartesian_points(d, 17, 1, 0.8, 1.2)[0];
      CHECK(transformation_law_residual(space, 0.7, tconst, x0) < 1e-10);
      // tau = 0: both sides equal S_gamma itself
      const ScalarFn tzero = [](const Vec&) { return 0.0; };
      CHECK(transformation_law_residual(space, 0.7, tzero, x0) < 1e-12);
    }
  }
}

TEST_CASE("weighted-space view matches the model fields") {
  const CknParams p = derive(0.0, 0.5, 4);
  const ModelSpace sph = make_space(ModelKind::SphericalCKN, p);
  const WeightedSpace w = as_weighted_space(sph);
  const Vec x{0.8, -0.2, 0.5, 0.3};
  CHECK((w.metric_lower(x) - sph.metric_lower(x)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(w.weight(x) == doctest::Approx(sph.weight(x)));
  CHECK(w.n == doctest::Approx(p.n));
}
