#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ckn/chart.hpp"
#include "ckn/fields.hpp"
#include "ckn/gamma.hpp"
#include "ckn/quadrature.hpp"

using namespace ckn;

namespace {
const CknParams kParams = derive(0.0, 0.5, 4);  // n = 8, alpha = 1/3
}

TEST_CASE("sphere embedding round-trips and satisfies Gamma identities") {
  for (int d : {3, 4, 5}) {
    Sphere sph(d);
    const auto pts = seeded_cyl_points(d, 5, 10);
    for (const auto& p : pts) {
      const Vec w = sph.embed(p.theta);
      double norm = 0.0;
      for (double wi : w) norm += wi * wi;
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
      const Vec back = sph.angles_from_unit(w);
      for (std::size_t a = 0; a < back.size(); ++a) {
        CHECK(back[a] == doctest::Approx(p.theta[a]).epsilon(1e-12));
      }
      // Gamma(w_i, w_j) = delta_ij - w_i w_j via coordinate partials
      Vec wv;
      Eigen::MatrixXd dw;
      sph.embed_with_partials(p.theta, wv, dw);
      for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
          Vec du(dw.rows() - 1), dv(dw.rows() - 1);
          for (int a = 0; a < d - 1; ++a) {
            du[a] = dw(i, a);
            dv[a] = dw(j, a);
          }
          const double got = sph.gamma_from_partials(p.theta, du, dv);
          const double expected = (i == j ? 1.0 : 0.0) - w[i] * w[j];
          CHECK(got == doctest::Approx(expected).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("AngularPoly matches finite differences for Gamma and Laplacian") {
  const int d = 4;
  Sphere sph(d);
  AngularPoly poly;
  poly.add(0.3, -1, -1).add(0.7, 0).add(-0.4, 1, 2).add(0.2, 3, 3);
  const auto pts = seeded_cyl_points(d, 11, 6);
  for (const auto& p : pts) {
    const Vec w = sph.embed(p.theta);
    // partials vs FD of the embedded evaluation
    const Vec partials = poly.partials(sph, p.theta);
    for (int a = 0; a < d - 1; ++a) {
      const double fd = fd_d1(
          [&](double t) {
            Vec th = p.theta;
            th[a] += t;
            return poly.value(sph, th);
          },
          1e-2);
      CHECK(partials[a] == doctest::Approx(fd).epsilon(1e-10));
    }
    // exact Gamma vs metric pairing of the partials
    CHECK(poly.gamma_with(poly, w) ==
          doctest::Approx(sph.gamma_from_partials(p.theta, partials, partials)).epsilon(1e-11));
    // exact Laplacian vs the FD jet on the cylinder lift
    const CylFn lift = [&](const CylPoint& q) { return poly.value(sph, q.theta); };
    const CylJet jet = fd_cyl_jet(lift, sph, p);
    CHECK(poly.laplacian(w, d) == doctest::Approx(jet.lap_theta).epsilon(1e-9));
  }
}

TEST_CASE("cylindrical chart maps are mutually inverse") {
  for (int d : {3, 4}) {
    const auto points = seeded_cartesian_points(d, 21, 12, 0.3, 3.0);
    for (const Vec& x : points) {
      const CylPoint p = to_cylindrical(x);
      const Vec back = from_cylindrical(p, d);
      for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-13));
      }
    }
    CHECK_THROWS_AS(to_cylindrical(Vec(static_cast<std::size_t>(d), 0.0)), OriginError);
  }
  // |x| = 1 maps to s = 0, |x| = e to s = 1
  CHECK(to_cylindrical({1.0, 0.0, 0.0}).s == doctest::Approx(0.0));
  CHECK(to_cylindrical({0.0, std::exp(1.0), 0.0}).s == doctest::Approx(1.0));
}

TEST_CASE("make_space: unweighted flat case is trivial") {
  const CknParams p0 = derive(0.0, 0.0, 3);
  const ModelSpace space = make_space(ModelKind::EuclideanCKN, p0);
  const Vec x{0.3, -0.8, 1.1};
  CHECK(space.weight(x) == doctest::Approx(0.0));
  CHECK(space.measure_density(x) == doctest::Approx(1.0));
  CHECK((space.metric_lower(x) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-15);
}

TEST_CASE("make_space: spherical density at |x| = 1") {
  const CknParams p0 = derive(0.0, 0.0, 3);  // n = 3
  const ModelSpace space = make_space(ModelKind::SphericalCKN, p0);
  const Vec x{1.0, 0.0, 0.0};
  CHECK(space.conformal_factor(x) == doctest::Approx(1.0));
  CHECK(space.measure_density(x) == doctest::Approx(1.0));  // 2^n/(1+1)^n
}

TEST_CASE("make_space: domain and degeneracy guards") {
  const ModelSpace hyp = make_space(ModelKind::HyperbolicCKN, kParams);
  CHECK_THROWS_AS(hyp.conformal_factor({1.2, 0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(hyp.conformal_factor({1.0, 0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(make_space(ModelKind::SphericalCKN, derive(0.0, 1.0, 4)),
                  DegenerateParams);  // alpha = 0, n = inf
}

TEST_CASE("model triple consistency: measure = e^{-W} volume") {
  for (ModelKind kind :
       {ModelKind::EuclideanCKN, ModelKind::SphericalCKN, ModelKind::HyperbolicCKN}) {
    const ModelSpace space = make_space(kind, kParams);
    const auto pts = seeded_cartesian_points(
        4, 31, 8, kind == ModelKind::HyperbolicCKN ? 0.2 : 0.5,
        kind == ModelKind::HyperbolicCKN ? 0.8 : 2.0);
    for (const Vec& x : pts) {
      CHECK(space.measure_density(x) * std::exp(space.weight(x)) ==
            doctest::Approx(space.volume_density(x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("metric_lower: stated special cases and inverse relation") {
  // alpha = 1 flat model has the identity metric
  const CknParams p1 = derive(0.0, 0.0, 4);
  const ModelSpace euc = make_space(ModelKind::EuclideanCKN, p1);
  const Vec x{0.7, -0.2, 0.4, 1.2};
  CHECK((euc.metric_lower(x) - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

  // cylindrical spherical chart at s = 0 is the product metric
  const CylChart chart(kParams);
  CylPoint origin{0.0, {0.6, 1.1, 2.2}};
  const Eigen::MatrixXd g0 = chart.metric_lower(origin);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
  h(0, 0) = 1.0;
  const Vec gd = chart.sphere().metric_diag(origin.theta);
  for (int a = 0; a < 3; ++a) h(a + 1, a + 1) = gd[a];
  CHECK((g0 - h).cwiseAbs().maxCoeff() < 1e-14);

  // lower metric inverts the upper one on all models
  const ModelSpace sph = make_space(ModelKind::SphericalCKN, kParams);
  for (const Vec& y : seeded_cartesian_points(4, 33, 6, 0.5, 1.8)) {
    const Eigen::MatrixXd prod = sph.metric_lower(y) * sph.metric_upper(y);
    CHECK((prod - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("cylinder factor identities") {
  const CylChart chart(kParams);
  for (double s : {-2.0, -0.5, 0.0, 0.7, 2.3}) {
    CHECK(sq(chart.dphi(s)) ==
          doctest::Approx(sq(kParams.alpha) * (sq(chart.phi(s)) - 1.0)).epsilon(1e-14));
    // pushforward of the radial density at r = e^s
    const double r = std::exp(s);
    const double cart = std::pow(2.0, kParams.n) *
                        std::pow(r, kParams.d - kParams.b * kParams.p) *
                        std::pow(1.0 + std::pow(r, 2.0 * kParams.alpha), -kParams.n);
    CHECK(chart.measure_density_cyl(s) == doctest::Approx(cart).epsilon(1e-13));
  }
  // weight in the chart
  CHECK(chart.weight_cyl(1.3) ==
        doctest::Approx((kParams.n - 4) * std::log(std::cosh(kParams.alpha * 1.3))));
}

TEST_CASE("conformal factors relate the three models pointwise") {
  const ModelSpace euc = make_space(ModelKind::EuclideanCKN, kParams);
  const ModelSpace sph = make_space(ModelKind::SphericalCKN, kParams);
  const ModelSpace hyp = make_space(ModelKind::HyperbolicCKN, kParams);
  for (const Vec& x : seeded_cartesian_points(4, 41, 8, 0.3, 0.8)) {
    const double phi = sph.conformal_factor(x);
    const double psi = hyp.conformal_factor(x);
    CHECK(sph.gamma_coeff(x) == doctest::Approx(sq(phi) * euc.gamma_coeff(x)).epsilon(1e-13));
    CHECK(hyp.gamma_coeff(x) == doctest::Approx(sq(psi) * euc.gamma_coeff(x)).epsilon(1e-13));
    CHECK(sph.measure_density(x) ==
          doctest::Approx(std::pow(phi, -kParams.n) * euc.measure_density(x)).epsilon(1e-13));
    CHECK(hyp.measure_density(x) ==
          doctest::Approx(std::pow(psi, -kParams.n) * euc.measure_density(x)).epsilon(1e-13));
  }
}

TEST_CASE("integration by parts holds on each model") {
  SeparableField u(4), v(4);
  AngularPoly au, av;
  au.add(1.0, -1, -1).add(0.5, 0).add(0.3, 1, 2);
  av.add(1.0, -1, -1).add(-0.4, 1).add(0.25, 0, 0);
  u.add(sprofile_bump(-1.2, 1.1), au);  // support strictly inside s < 0 so the
  v.add(sprofile_bump(-1.1, 0.9), av);  // ball model sees compact support too

  GridOptions opt;
  opt.polar_nodes = 12;
  opt.azimuth_nodes = 24;
  opt.panels_per_unit = 16.0;  // bump profiles are C-infinity but not analytic
  const QuadGrid grid = QuadGrid::over_interval(kParams, -2.35, -0.08, opt);
  for (ModelKind kind :
       {ModelKind::EuclideanCKN, ModelKind::SphericalCKN, ModelKind::HyperbolicCKN}) {
    const Vec ints = grid.integrate_multi(
        2,
        [&](double s, const Vec& theta, std::span<double> vals) {
          const CylPoint pt{s, theta};
          const double c = cyl_factor(kind, kParams, s);
          const double dl = cyl_factor_dlog(kind, kParams, s);
          const double lu =
              c * c * (u.dss(pt) + (2.0 - kParams.n) * dl * u.ds(pt) + u.laplacian_theta(pt));
          vals[0] = -lu * v.value(pt);
          vals[1] = c * c * (u.ds(pt) * v.ds(pt) + u.gamma_theta_pair(v, pt));
        },
        Measure::Custom, [&](double s) { return cyl_measure_density(kind, kParams, s); });
    CHECK(ints[0] == doctest::Approx(ints[1]).epsilon(1e-7));
  }
}
