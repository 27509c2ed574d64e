#pragma once

#include <Eigen/Dense>

#include "ckn/params.hpp"
#include "ckn/sphere.hpp"

namespace ckn {

enum class ModelKind { EuclideanCKN, SphericalCKN, HyperbolicCKN };

const char* to_string(ModelKind k);

/// Point in the cylindrical chart (s, theta) in R x S^{d-1},
/// s = log |x|, theta = iterated polar angles of x/|x|.
struct CylPoint {
  double s = 0.0;
  Vec theta;
};

/**
 * One of the three model realizations of the weighted Sobolev family on
 * M = R^d \ {0} (unit ball for the hyperbolic model). All scalar data are
 * stored as closed-form fields of the Cartesian point:
 *
 *   metric (lower indices)   g_ij = |x|^{2(alpha-1)} c(x)^{-2} delta_ij
 *   carre du champ           Gamma(f) = |x|^{2(1-alpha)} c(x)^2 |grad f|^2
 *   reference measure        d mu = measure_density dx
 *   weight                   W with d mu = e^{-W} dV_g
 *
 * where the conformal factor c is 1, (1+|x|^{2 alpha})/2 or
 * (1-|x|^{2 alpha})/2. The stored weight/measure/volume triple is exactly
 * consistent (measure_density = e^{-W} * volume_density); this pins down the
 * additive constant in W.
 */
class ModelSpace {
 public:
  ModelSpace(ModelKind kind, CknParams params);

  ModelKind kind() const { return kind_; }
  const CknParams& params() const { return params_; }
  int dim() const { return params_.d; }

  bool in_domain(const Vec& x, double margin = 0.0) const;
  void require_domain(const Vec& x) const;

  double conformal_factor(const Vec& x) const;
  double weight(const Vec& x) const;
  double measure_density(const Vec& x) const;
  double volume_density(const Vec& x) const;

  /// Isotropic coefficient of the carre du champ: Gamma(f,g) = coeff * grad f . grad g.
  double gamma_coeff(const Vec& x) const;

  Eigen::MatrixXd metric_lower(const Vec& x) const;
  Eigen::MatrixXd metric_upper(const Vec& x) const;

  /// Drift vector V so that L f = gamma_coeff(x) [Delta f + V . grad f].
  Vec drift(const Vec& x) const;

 private:
  ModelKind kind_;
  CknParams params_;
  double weight_exp_;  // alpha (n - d) = d - p b - d alpha, finite on all of Theta
};

ModelSpace make_space(ModelKind kind, const CknParams& params);

/**
 * The spherical model in the cylindrical chart: phi(s) = cosh(alpha s),
 * metric phi^{-2} diag(1, G_theta) (lower indices), weight (n-d) log phi,
 * reference measure phi^{-n} ds dtheta.
 */
class CylChart {
 public:
  explicit CylChart(CknParams params);

  const CknParams& params() const { return params_; }
  const Sphere& sphere() const { return sphere_; }

  double phi(double s) const { return std::cosh(params_.alpha * s); }
  double dphi(double s) const { return params_.alpha * std::sinh(params_.alpha * s); }
  double weight_cyl(double s) const;
  double measure_density_cyl(double s) const { return std::pow(phi(s), -params_.n); }

  Eigen::MatrixXd metric_lower(const CylPoint& p) const;

 private:
  CknParams params_;
  Sphere sphere_;
};

/// Chart maps. to_cylindrical throws OriginError at x = 0; the pair is
/// mutually inverse away from the angular chart poles.
CylPoint to_cylindrical(const Vec& x);
Vec from_cylindrical(const CylPoint& p, int d);

/// Cylinder-side conformal factor of each model against the product metric:
/// e^{-alpha s}, cosh(alpha s), sinh(-alpha s) (the latter positive on s < 0).
double cyl_factor(ModelKind kind, const CknParams& params, double s);
double cyl_factor_dlog(ModelKind kind, const CknParams& params, double s);  // (log c)'

/// Reference measure density of each model in the cylindrical chart,
/// d mu = cyl_measure_density ds dtheta (equals cyl_factor^{-n}).
double cyl_measure_density(ModelKind kind, const CknParams& params, double s);

}  // namespace ckn
