#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ckn/params.hpp"
#include "ckn/quadrature.hpp"
#include "ckn/verify.hpp"

using namespace ckn;

TEST_CASE("derive: unweighted case is the classical Sobolev setup") {
  const CknParams p = derive(0.0, 0.0, 3);
  CHECK(p.p == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(p.n == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(p.alpha == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.b_dgz == doctest::Approx(0.0));
  CHECK(!p.gamma0.has_value());  // n = d
}

TEST_CASE("derive: interior point with all derived quantities") {
  const CknParams p = derive(0.0, 0.5, 4);
  CHECK(p.p == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  CHECK(p.n == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(p.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p.b_dgz == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(p.rho == doctest::Approx(7.0 / 9.0).epsilon(1e-14));
  REQUIRE(p.gamma0.has_value());
  CHECK(*p.gamma0 == doctest::Approx(-3.0).epsilon(1e-13));
  CHECK(std::abs(p.d - p.n * p.alpha - p.p * p.b) < 1e-14);
}

TEST_CASE("derive: Hardy boundary flags n = inf, alpha = 0") {
  for (double a : {-1.0, 0.0, 0.4}) {
    const CknParams p = derive(a, a + 1.0, 4);
    CHECK(p.p == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.alpha == 0.0);
    CHECK(!p.n_finite());
    CHECK(!p.gamma0.has_value());
    CHECK(p.b_dgz == doctest::Approx(2.0));  // limiting value d-2
  }
}

TEST_CASE("derive: rejections") {
  CHECK_THROWS_AS(derive(1.0, 1.0, 4), DegenerateParams);   // a = a_c
  CHECK_THROWS_AS(derive(2.0, 2.0, 4), DegenerateParams);   // a > a_c
  CHECK_THROWS_AS(derive(0.0, 0.5, 2), DegenerateParams);   // d < 3
  CHECK_THROWS_AS(derive(0.0, 1.5, 4), DegenerateParams);    // b > a+1
  CHECK_THROWS_AS(derive(-3.0, -4.1, 4), DegenerateParams);  // a_c - a + b <= 0
}

TEST_CASE("classify: unweighted round-sphere point") {
  const RegionReport r = classify(derive(0.0, 0.0, 3));
  CHECK(r.in_theta);
  CHECK(r.in_fs_by_alpha);  // alpha^2 = 1 = (d-1)/(n-1)
  CHECK(r.in_dgz);          // b_dgz = 0
  CHECK(r.on_sobolev_line);
  CHECK(r.characterizations_agree);
}

TEST_CASE("classify: interior FS point") {
  const RegionReport r = classify(derive(0.0, 0.5, 4));
  CHECK(r.in_theta);
  CHECK(r.in_fs_by_alpha);
  CHECK(r.in_dgz);
  CHECK(r.characterizations_agree);
}

TEST_CASE("classify: the characterizations split at (-2, -1.5, 4)") {
  const CknParams p = derive(-2.0, -1.5, 4);
  CHECK(p.alpha == doctest::Approx(1.0).epsilon(1e-15));
  const RegionReport r = classify(p);
  CHECK(r.in_theta);
  CHECK(r.alpha_le_one);
  CHECK(!r.in_fs_by_alpha);  // alpha^2 = 1 > 3/7
  CHECK(!r.in_fs_by_curve);  // b < b_FS(-2)
  CHECK(!r.characterizations_agree);
}

TEST_CASE("fs_curve values") {
  CHECK(fs_curve(0.0, 4) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(fs_curve(-2.0, 4) == doctest::Approx(std::sqrt(3.0) - 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(fs_curve(1.0, 4), DegenerateParams);
  // monotone vanishing limit toward a_c
  double prev = std::abs(fs_curve(0.9, 4));
  for (double a : {0.99, 0.999, 0.9999}) {
    const double cur = std::abs(fs_curve(a, 4));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("dgz_curve: root, ordering and absence") {
  SUBCASE("passes through b = 0 at a = 0") {
    for (int d : {3, 4, 5}) {
      const auto root = dgz_curve(0.0, d);
      REQUIRE(root.has_value());
      CHECK(std::abs(*root) < 1e-12);
    }
  }
  SUBCASE("root residual and position above the FS curve") {
    const auto root = dgz_curve(-1.0, 4);
    REQUIRE(root.has_value());
    CHECK(std::abs(derive(-1.0, *root, 4).b_dgz) < 1e-12);
    CHECK(*root >= fs_curve(-1.0, 4));
  }
  SUBCASE("absent when the margin never changes sign") {
    CHECK(!dgz_curve(0.5, 4).has_value());  // a > 0: b_dgz > 0 on the whole bracket
  }
}

TEST_CASE("hardy_constant") {
  CHECK(hardy_constant(0.0, 4) == doctest::Approx(1.0));
  CHECK(hardy_constant(0.0, 3) == doctest::Approx(4.0));
  // divergence toward a_c: values blow up smoothly, no crash
  CHECK(hardy_constant(1.0 - 1e-13, 4) > 1e20);
  CHECK(std::isinf(hardy_constant(std::nextafter(1.0, 0.0), 4)) == false);
}

TEST_CASE("sobolev_constant requires Z and flags the outside-FS regime") {
  const CknParams p = derive(0.0, 0.5, 4);
  CHECK_THROWS_AS(sobolev_constant(p), MissingZ);
  const CknParams pz = attach_z(p);
  const SobolevConstant c = sobolev_constant(pz);
  CHECK(c.value > 0.0);
  CHECK(!c.outside_fs);
  const SobolevConstant c2 = sobolev_constant(attach_z(derive(-2.0, -1.5, 4)));
  CHECK(c2.outside_fs);
  CHECK(c2.value > 0.0);
}

TEST_CASE("property sweep: closure identity, alpha forms, region inclusion") {
  for (int d : {3, 4, 5}) {
    Rng rng(2024 + d);
    bool strict_witness = false;
    for (int i = 0; i < 2000; ++i) {
      const CknParams p = sample_theta(rng, d);
      CHECK(std::abs(d - p.n * p.alpha - p.p * p.b) < 1e-12);
      const double alpha2 = (p.a_c - p.a) * (p.a + 1.0 - p.b) / (p.a_c - p.a + p.b);
      CHECK(std::abs(p.alpha - alpha2) < 1e-12);
      CHECK(p.alpha >= 0.0);
      const RegionReport r = classify(p);
      if (r.in_dgz) CHECK(r.in_fs_by_alpha);
      if (r.in_fs_by_alpha && !r.in_dgz) strict_witness = true;
    }
    CHECK(strict_witness);
  }
}

TEST_CASE("params_on_fs_boundary lands exactly on the threshold") {
  for (auto [d, n] : std::vector<std::pair<int, double>>{{3, 5.0}, {4, 7.0}, {5, 8.0}}) {
    const CknParams p = params_on_fs_boundary(d, n);
    CHECK(p.n == doctest::Approx(n).epsilon(1e-12));
    CHECK(sq(p.alpha) * (p.n - 1.0) == doctest::Approx(d - 1.0).epsilon(1e-12));
    CHECK(classify(p).in_theta);
  }
}

TEST_CASE("region_sweep: d = 4 ordering") {
  const auto rows = region_sweep(4, -3.0, 0.8, 150);
  for (const auto& row : rows) {
    if (row.b_dgz.has_value()) {
      CHECK(*row.b_dgz >= row.b_fs - 1e-12);
    }
  }
}
