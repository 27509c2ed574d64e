#pragma once

#include <Eigen/Dense>

#include "ckn/common.hpp"

namespace ckn {

/**
 * Geometry of the round unit sphere S^{d-1} in iterated polar coordinates
 * t_0, ..., t_{d-2}: the first d-2 angles are polar in [0, pi], the last is
 * azimuthal in [0, 2pi). The embedding into R^d is
 *
 *   w_1 = cos t_0
 *   w_2 = sin t_0 cos t_1
 *   ...
 *   w_d = sin t_0 ... sin t_{d-2}
 *
 * and the round metric is diagonal, G_aa = prod_{c<a} sin^2 t_c.
 *
 * Everything here is exact (no finite differences): the metric, its
 * Christoffel symbols and the Laplacian coefficients are in closed form.
 */
class Sphere {
 public:
  explicit Sphere(int d);

  int ambient_dim() const { return d_; }
  int n_angles() const { return d_ - 1; }

  /// Guard margin (radians) around the coordinate poles t_a in {0, pi} of the
  /// polar angles; evaluations closer than this throw BoundaryError.
  static constexpr double kPoleMargin = 1e-3;

  /// True when every polar angle stays `margin` away from {0, pi}.
  bool interior(const Vec& theta, double margin = kPoleMargin) const;
  void require_interior(const Vec& theta, double margin = kPoleMargin) const;

  /// Embedding w(theta) in R^d.
  Vec embed(const Vec& theta) const;

  /// Embedding and its angular partials, d(w_i)/d(t_a), as a d x (d-1) matrix.
  void embed_with_partials(const Vec& theta, Vec& w, Eigen::MatrixXd& dw) const;

  /// Inverse of the embedding, angles from a unit vector.
  Vec angles_from_unit(const Vec& w) const;

  /// Diagonal round metric entries G_aa(theta).
  Vec metric_diag(const Vec& theta) const;

  /// Carre du champ of two angular-partials vectors: sum_a u_a v_a / G_aa.
  double gamma_from_partials(const Vec& theta, const Vec& du, const Vec& dv) const;

  /// Laplace-Beltrami drift coefficients: Delta f = sum_a (f_aa + c_a f_a)/G_aa
  /// with c_a = (d-2-a) cot t_a for polar angles, 0 for the azimuth.
  Vec laplacian_drift(const Vec& theta) const;

  /// Christoffel symbols of the round metric, Gamma[c](a,b) = Gamma^c_{ab}.
  std::vector<Eigen::MatrixXd> christoffel(const Vec& theta) const;

  /// Surface area of S^{d-1} in ambient dimension d: 2 pi^{d/2} / Gamma(d/2).
  static double area(int d);

 private:
  int d_;
};

/**
 * Exact low-order angular functions: polynomials of degree <= 2 in the
 * ambient coordinate functions w_i restricted to the sphere. For these, the
 * carre du champ and Laplacian close under the classical identities
 *
 *   Gamma(w_i, w_j) = delta_ij - w_i w_j,      Delta w_i = -(d-1) w_i,
 *
 * so values, Gamma pairings and Laplacians are all evaluated exactly.
 * Terms: coefficient * w_i (j < 0) or coefficient * w_i * w_j.
 */
class AngularPoly {
 public:
  struct Term {
    double coeff = 0.0;
    int i = -1;  // -1 means the constant term
    int j = -1;
  };

  AngularPoly() = default;
  explicit AngularPoly(double constant) { add(constant, -1, -1); }

  AngularPoly& add(double coeff, int i, int j = -1);

  double value(const Sphere& sph, const Vec& theta) const;
  double value_at_unit(const Vec& w) const;

  /// Gamma^theta(this, other), exact.
  double gamma_with(const AngularPoly& other, const Vec& w) const;

  /// Delta_theta of this polynomial, exact.
  double laplacian(const Vec& w, int d) const;

  /// Angular partial derivatives d/dt_a via the embedding chain rule.
  Vec partials(const Sphere& sph, const Vec& theta) const;

  bool empty() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  // gradient of one term as a (nonconstant) combination handled termwise
  static double term_value(const Term& t, const Vec& w);
  std::vector<Term> terms_;
};

}  // namespace ckn
