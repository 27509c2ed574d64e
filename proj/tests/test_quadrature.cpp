#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "ckn/quadrature.hpp"
#include "ckn/verify.hpp"

using namespace ckn;

TEST_CASE("gauss_legendre integrates polynomials exactly") {
  Vec x, w;
  gauss_legendre(12, x, w);
  double m0 = 0.0, m2 = 0.0, m10 = 0.0;
  for (int i = 0; i < 12; ++i) {
    m0 += w[i];
    m2 += w[i] * x[i] * x[i];
    m10 += w[i] * std::pow(x[i], 10);
  }
  CHECK(m0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(m2 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(m10 == doctest::Approx(2.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("polar rules reproduce sin^k moments") {
  // int_0^pi sin^k t dt: 2, pi/2, 4/3, 3 pi/8 for k = 1..4
  const double expected[] = {2.0, kPi / 2.0, 4.0 / 3.0, 3.0 * kPi / 8.0};
  for (int k = 1; k <= 4; ++k) {
    Vec t, w;
    polar_rule(k, 16, t, w);
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) s += w[i];
    CHECK(s == doctest::Approx(expected[k - 1]).epsilon(1e-14));
    // smooth non-symmetric integrand vs a dense midpoint reference
    double got = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) got += w[i] * std::exp(0.7 * std::cos(t[i]));
    double ref = 0.0;
    const int nn = 200000;
    for (int i = 0; i < nn; ++i) {
      const double th = kPi * (i + 0.5) / nn;
      ref += kPi / nn * std::exp(0.7 * std::cos(th)) * std::pow(std::sin(th), k);
    }
    CHECK(got == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("sphere_area closed form and product-rule consistency") {
  CHECK(sphere_area(2) == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
  CHECK(sphere_area(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));
  for (int d : {3, 4, 5, 6}) {
    std::vector<Vec> nodes;
    Vec weights;
    build_sphere_nodes(d, 16, 32, nodes, weights);
    CHECK(pairwise_sum(weights) == doctest::Approx(sphere_area(d)).epsilon(1e-13));
  }
}

TEST_CASE("sphere quadrature: first harmonic vanishes, w1^2 averages to 1/d") {
  for (int d : {3, 4, 5}) {
    std::vector<Vec> nodes;
    Vec weights;
    build_sphere_nodes(d, 16, 32, nodes, weights);
    Sphere sph(d);
    double first = 0.0, second = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Vec w = sph.embed(nodes[i]);
      first += weights[i] * w[0];
      second += weights[i] * w[0] * w[0];
    }
    CHECK(std::abs(first) < 1e-13);
    CHECK(second == doctest::Approx(sphere_area(d) / d).epsilon(1e-13));
  }
}

TEST_CASE("cosh power integrals: closed forms and alpha scaling") {
  CHECK(cosh_power_integral(1.0, 3.0) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(cosh_power_integral(1.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(cosh_power_integral(1.0, 4.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  const double base = cosh_power_integral(0.5, 5.0);
  CHECK(cosh_power_integral(0.25, 5.0) == doctest::Approx(2.0 * base).epsilon(1e-13));
}

TEST_CASE("normalization Z: unweighted values and form agreement") {
  const CknParams p3 = derive(0.0, 0.0, 3);
  CHECK(normalization_z(p3) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-10));
  const CknParams p4 = derive(0.0, 0.0, 4);
  CHECK(normalization_z(p4) == doctest::Approx(8.0 * kPi * kPi / 3.0).epsilon(1e-10));

  Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    const CknParams p = sample_theta(rng, 3 + static_cast<int>(rng.next_u64() % 3));
    const double z = normalization_z(p);
    CHECK(normalization_z_onesided(p) == doctest::Approx(z).epsilon(1e-12));
    CHECK(normalization_z_cartesian(p) == doctest::Approx(z).epsilon(1e-8));
  }
}

TEST_CASE("Z doubles when alpha halves at fixed n") {
  const CknParams p = derive(0.0, 0.5, 4);  // n = 8, alpha = 1/3
  const double z = sphere_area(4) * cosh_power_integral(p.alpha, p.n);
  const double z_half = sphere_area(4) * cosh_power_integral(0.5 * p.alpha, p.n);
  CHECK(z_half == doctest::Approx(2.0 * z).epsilon(1e-12));
}

TEST_CASE("QuadGrid: measure totals, refinement, determinism") {
  const CknParams p = attach_z(derive(0.0, 0.5, 4));
  GridOptions opt;
  opt.polar_nodes = 12;
  opt.azimuth_nodes = 24;
  const QuadGrid grid = QuadGrid::for_params(p, opt);

  const double total = grid.integrate([](double, const Vec&) { return 1.0; }, Measure::MuBar);
  CHECK(total == doctest::Approx(*p.z).epsilon(1e-12));

  const auto f = [&](double s, const Vec& theta) {
    Sphere sph(4);
    return std::exp(0.4 * std::sin(1.3 * s)) * (1.0 + 0.5 * sph.embed(theta)[0]);
  };
  const double c0 = grid.integrate(f, Measure::MuBar);
  const double c1 = grid.refined().integrate(f, Measure::MuBar);
  CHECK(std::abs(c0 - c1) / std::abs(c0) < 1e-10);

  CHECK(std::abs(grid.integrate([](double s, const Vec&) { return std::tanh(s); },
                                Measure::MuBar)) < 1e-12);

  // bit-identical across thread counts
  setenv("CKNLAB_THREADS", "1", 1);
  const double one_thread = grid.integrate(f, Measure::MuBar);
  setenv("CKNLAB_THREADS", "7", 1);
  const double many_threads = grid.integrate(f, Measure::MuBar);
  unsetenv("CKNLAB_THREADS");
  CHECK(one_thread == many_threads);

  // sphere-only integration through the same grid
  Sphere sph(4);
  const double mean_sq = grid.integrate_sphere(
      [&](const Vec& theta) { return sq(sph.embed(theta)[0]); });
  CHECK(mean_sq == doctest::Approx(sphere_area(4) / 4.0).epsilon(1e-13));
}

TEST_CASE("QuadGrid: non-finite node evaluations are reported") {
  const CknParams p = derive(0.0, 0.5, 4);
  GridOptions opt;
  opt.polar_nodes = 8;
  opt.azimuth_nodes = 8;
  const QuadGrid grid = QuadGrid::over_interval(p, -1.0, 1.0, opt);
  CHECK_THROWS_AS(grid.integrate(
                      [](double s, const Vec&) {
                        return s == 0.0 ? 1.0 : std::log(-1.0);  // NaN away from s=0
                      },
                      Measure::MuBar),
                  NonFinite);
}

TEST_CASE("degenerate parameters are rejected") {
  CHECK_THROWS_AS(normalization_z(derive(0.0, 1.0, 4)), DegenerateParams);  // alpha = 0
  CHECK_THROWS_AS(build_grid(derive(0.0, 1.0, 4)), DegenerateParams);
}
