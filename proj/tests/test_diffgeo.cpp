#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ckn/diffgeo.hpp"
#include "ckn/fields.hpp"

using namespace ckn;

namespace {

double rel(double x, double y) {
  return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

TEST_CASE("fd_gradient and fd_hessian on reference fields") {
  ScalarField lin{ScalarField::Domain::Free,
                  [](const Vec& x) { return 2.0 * x[0] - 0.5 * x[1] + 3.0 * x[2] + 1.0; }};
  const Vec p{0.4, -0.7, 1.2};
  const Vec g = fd_gradient(lin, p);
  CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(g[1] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(g[2] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fd_hessian(lin, p).mat().cwiseAbs().maxCoeff() < 1e-10);

  ScalarField quad{ScalarField::Domain::Free, [](const Vec& x) {
                     double s = 0.0;
                     for (double xi : x) s += xi * xi;
                     return s;
                   }};
  const Eigen::MatrixXd h = fd_hessian(quad, p).mat();
  CHECK((h - 2.0 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);

  // trigonometric field vs its analytic derivatives
  ScalarField trig{ScalarField::Domain::Free, [](const Vec& x) {
                     return std::sin(0.8 * x[0] + 0.3 * x[1]) * std::cos(0.5 * x[2]);
                   }};
  const Vec gt = fd_gradient(trig, p);
  const double c = std::cos(0.8 * p[0] + 0.3 * p[1]) * std::cos(0.5 * p[2]);
  CHECK(gt[0] == doctest::Approx(0.8 * c).epsilon(1e-8));
  CHECK(gt[1] == doctest::Approx(0.3 * c).epsilon(1e-8));
}

TEST_CASE("domain guards raise BoundaryError near the puncture and the sphere") {
  ScalarField f{ScalarField::Domain::CartesianPunctured, [](const Vec& x) { return x[0]; }};
  CHECK_THROWS_AS(fd_gradient(f, {1e-4, 0.0, 0.0}), BoundaryError);
  ScalarField g{ScalarField::Domain::BallPunctured, [](const Vec& x) { return x[0]; }};
  CHECK_THROWS_AS(fd_gradient(g, {0.999, 0.0, 0.0}), BoundaryError);
  CHECK_NOTHROW(fd_gradient(g, {0.5, 0.0, 0.0}));
}

TEST_CASE("SymMatrix enforces symmetry and exposes eigenvalues") {
  Eigen::MatrixXd m(2, 2);
  m << 2.0, 0.5, 0.5, 1.0;
  const SymMatrix s(m);
  CHECK(s.positive_definite());
  CHECK(s.min_eigenvalue() == doctest::Approx(1.5 - std::sqrt(0.5)).epsilon(1e-12));
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 0.4, -0.4, 1.0;
  CHECK_THROWS_AS(SymMatrix{bad}, Error);
}

TEST_CASE("flat metric: Christoffels vanish, Laplacian matches") {
  const int d = 3;
  const MetricFn flat = [d](const Vec&) { return Eigen::MatrixXd::Identity(d, d).eval(); };
  const Vec p{0.3, 0.9, -0.4};
  for (const auto& gam : fd_christoffel(flat, p)) {
    CHECK(gam.cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(fd_ricci(flat, p).cwiseAbs().maxCoeff() < 1e-9);
  const ScalarFn f = [](const Vec& x) { return x[0] * x[0] + 2.0 * x[1] * x[1] - x[2]; };
  CHECK(fd_laplace_beltrami(flat, f, p) == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("round sphere curvature from the stereographic conformal factor") {
  for (int d : {3, 4}) {
    const MetricFn round = [d](const Vec& x) {
      double r2 = 0.0;
      for (double xi : x) r2 += xi * xi;
      const double c = 2.0 / (1.0 + r2);
      return (c * c * Eigen::MatrixXd::Identity(d, d)).eval();
    };
    for (const Vec& p : seeded_cartesian_points(d, 3, 4, 0.2, 1.4)) {
      const Eigen::MatrixXd ric = fd_ricci(round, p);
      const Eigen::MatrixXd expected = (d - 1.0) * round(p);
      CHECK((ric - expected).cwiseAbs().maxCoeff() < 1e-7);
      CHECK(rel(fd_scalar_curvature(round, p), d * (d - 1.0)) < 1e-8);
    }
  }
}

TEST_CASE("conformal transformation formulas against FD oracles") {
  const int d = 3;
  const std::uint64_t seed = 2025;
  for (int cs = 0; cs < 3; ++cs) {
    const MetricFn g = seeded_cartesian_metric(d, seed, cs);
    const auto tau = seeded_cartesian_scalar(d, seed + 1, cs, 0.35);
    const auto psi = seeded_cartesian_scalar(d, seed + 2, cs, 0.6);
    const MetricFn h = [&](const Vec& x) { return (g(x) * std::exp(-2.0 * tau(x))).eval(); };
    for (const Vec& p : seeded_cartesian_points(d, seed + 3 + cs, 4, 0.4, 1.5)) {
      const double c = std::exp(tau(p));
      const Eigen::MatrixXd gp = g(p);
      const Eigen::MatrixXd hp = h(p);

      const double lap_g = fd_laplace_beltrami(g, psi, p);
      const double gam_tp = fd_gamma_pair(g, tau, psi, p);
      CHECK(rel(conformal_laplacian(lap_g, gam_tp, c, d),
                fd_laplace_beltrami(h, psi, p)) < 1e-6);

      const Eigen::MatrixXd hess_g = fd_metric_hessian(g, psi, p);
      const SymMatrix hess_formula = conformal_hessian(
          hess_g, fd_gradient_raw(psi, p), fd_gradient_raw(tau, p), gam_tp, gp);
      const Eigen::MatrixXd hess_oracle = fd_metric_hessian(h, psi, p);
      CHECK((hess_formula.mat() - hess_oracle).cwiseAbs().maxCoeff() /
                std::max(1.0, hess_oracle.cwiseAbs().maxCoeff()) <
            1e-6);

      const ScalarFn gamma_psi = [&](const Vec& x) { return fd_gamma_pair(g, psi, psi, x); };
      const double hs_formula = conformal_hessian_hs_norm(
          hs_norm_sq(hess_g, gp), fd_gamma_pair(g, tau, gamma_psi, p), gamma_psi(p),
          fd_gamma_pair(g, tau, tau, p), gam_tp, lap_g, c, d);
      CHECK(rel(hs_formula, hs_norm_sq(hess_oracle, hp)) < 1e-6);

      const SymMatrix ric_formula = conformal_ricci(
          fd_ricci(g, p), fd_laplace_beltrami(g, tau, p), fd_metric_hessian(g, tau, p),
          fd_gradient_raw(tau, p), fd_gamma_pair(g, tau, tau, p), gp, d);
      const Eigen::MatrixXd ric_oracle = fd_ricci(h, p);
      CHECK((ric_formula.mat() - ric_oracle).cwiseAbs().maxCoeff() /
                std::max(1.0, ric_oracle.cwiseAbs().maxCoeff()) <
            1e-5);

      const double sc_formula = conformal_scalar(
          fd_scalar_curvature(g, p), fd_laplace_beltrami(g, tau, p),
          fd_gamma_pair(g, tau, tau, p), c, d);
      CHECK(rel(sc_formula, fd_scalar_curvature(h, p)) < 1e-5);
    }
  }
}

TEST_CASE("conformal formulas: trivial limits") {
  const int d = 4;
  const Eigen::MatrixXd gp = Eigen::MatrixXd::Identity(d, d);
  // tau = 0: everything reduces to the base quantity
  CHECK(conformal_laplacian(3.7, 0.0, 1.0, d) == doctest::Approx(3.7));
  CHECK(conformal_scalar(1.9, 0.0, 0.0, 1.0, d) == doctest::Approx(1.9));
  Eigen::MatrixXd hess(d, d);
  hess.setZero();
  hess(0, 0) = 2.0;
  const Vec zero(static_cast<std::size_t>(d), 0.0);
  const Vec dpsi{1.0, 0.0, 0.0, 0.0};
  CHECK((conformal_hessian(hess, dpsi, zero, 0.0, gp).mat() - hess).cwiseAbs().maxCoeff() <
        1e-15);
  // constant c: Laplacian scales by c^2
  CHECK(conformal_laplacian(3.0, 0.0, 2.0, d) == doctest::Approx(12.0));
  // constant psi: Hessian norm vanishes
  CHECK(conformal_hessian_hs_norm(0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 1.3, d) ==
        doctest::Approx(0.0));
  CHECK_THROWS_AS(conformal_laplacian(1.0, 0.0, 0.0, d), Error);
}
