#pragma once

#include <Eigen/Dense>
#include <memory>

#include "ckn/chart.hpp"
#include "ckn/params.hpp"
#include "ckn/sphere.hpp"

namespace ckn {

/// Field on the cylinder R x S^{d-1}. `value` is mandatory; the optional
/// members carry exact first derivatives for fields that know them
/// (consumers fall back to finite differences when they are empty).
/// `bundle`, when present, produces (value, df/ds, Gamma^theta) in a single
/// evaluation: quadrature sweeps call it once per node.
struct CylField {
  std::function<double(const CylPoint&)> value;
  std::function<double(const CylPoint&)> ds;           // df/ds
  std::function<double(const CylPoint&)> gamma_theta;  // Gamma^theta(f, f)
  std::function<void(const CylPoint&, double&, double&, double&)> bundle;

  double operator()(const CylPoint& p) const { return value(p); }
  bool has_analytic_grad() const { return static_cast<bool>(ds) && static_cast<bool>(gamma_theta); }
};

/// 1-d profile with exact first and second derivatives.
struct SProfile {
  std::function<double(double)> v, d1, d2;
};

SProfile sprofile_const(double c);
SProfile sprofile_sin(double amp, double freq, double phase);
SProfile sprofile_sech_pow(double beta, double kappa);  // sech(beta s)^kappa
SProfile sprofile_tanh(double alpha);
/// C^inf bump supported on [center - halfwidth, center + halfwidth].
SProfile sprofile_bump(double center, double halfwidth);
SProfile sprofile_gaussian(double center, double width);

/**
 * Sum of separable terms  f(s, theta) = sum_k B_k(s) A_k(theta)  with exact
 * s-derivatives and exact angular Gamma/Laplacian through the AngularPoly
 * identities. These fields power every integration-by-parts and deficit
 * computation where finite differences would only add noise.
 */
class SeparableField {
 public:
  explicit SeparableField(int d) : sphere_(d) {}

  SeparableField& add(SProfile prof, AngularPoly ang);

  int ambient_dim() const { return sphere_.ambient_dim(); }
  const Sphere& sphere() const { return sphere_; }

  double value(const CylPoint& p) const;
  double ds(const CylPoint& p) const;
  double dss(const CylPoint& p) const;
  double laplacian_theta(const CylPoint& p) const;
  double gamma_theta(const CylPoint& p) const { return gamma_theta_pair(*this, p); }
  double gamma_theta_pair(const SeparableField& other, const CylPoint& p) const;

  /// (value, d/ds, Gamma^theta) in one sweep with a single sphere embedding.
  void eval_bundle(const CylPoint& p, double& v, double& ds, double& gth) const;

  /// Gamma^theta(ds f, f): angular pairing of the s-derivative with f.
  double gamma_theta_ds_pair(const CylPoint& p) const;

  CylField as_field() const;

 private:
  struct Term {
    SProfile prof;
    AngularPoly ang;
  };
  Sphere sphere_;
  std::vector<Term> terms_;
};

/**
 * Deterministic families used across the test and verification suites.
 * The same (seed, index) always produces the same field.
 */

/// Strictly positive integrable field  v = exp(q(s,theta)) sech(beta s)^kappa
/// with q a low-order trigonometric/harmonic polynomial; carries exact
/// derivatives. Suitable for the one-sided Sobolev/Poincare sweeps.
CylField seeded_positive_field(const CknParams& params, std::uint64_t seed, int index);

/// Smooth bounded test field (no positivity guarantee, no decay envelope)
/// for the Gamma2 machinery; value-only on purpose: consumers differentiate
/// it numerically.
CylField seeded_smooth_field(int d, std::uint64_t seed, int index);

/// Same construction as seeded_smooth_field but returning the structured
/// object (exact derivatives), for tests that cross-check FD against it.
SeparableField seeded_separable_field(int d, std::uint64_t seed, int index);

/// Positive angular-only field exp(eps * harmonic combo) on S^{d-1}.
AngularPoly seeded_harmonic_combo(int d, std::uint64_t seed, int index, double amplitude);

/// Interior sample points. Polar angles are kept `pole_margin` away from the
/// chart poles so that angular stencils stay conditioned; curvature-grade
/// finite differences want a wider margin than plain evaluations.
std::vector<CylPoint> seeded_cyl_points(int d, std::uint64_t seed, int count,
                                        double s_range = 2.0, double pole_margin = 0.35);
std::vector<Vec> seeded_cartesian_points(int d, std::uint64_t seed, int count,
                                         double r_lo = 0.5, double r_hi = 2.0);

/// Smooth Cartesian scalar field: a low-frequency trigonometric polynomial,
/// bounded with bounded derivatives of every order.
std::function<double(const Vec&)> seeded_cartesian_scalar(int d, std::uint64_t seed,
                                                          int index, double amplitude = 0.4);

/// Smooth uniformly positive-definite metric field
/// g(x) = e^{2 sigma(x)} (I + eps S(x)) with trigonometric sigma, S.
std::function<Eigen::MatrixXd(const Vec&)> seeded_cartesian_metric(int d, std::uint64_t seed,
                                                                   int index,
                                                                   double eps = 0.12);

}  // namespace ckn
