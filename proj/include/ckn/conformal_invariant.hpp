#pragma once

#include "ckn/chart.hpp"
#include "ckn/diffgeo.hpp"

namespace ckn {

/// Coefficients of the generalized-scalar-curvature family
///   S_gamma(mu, Gamma) = theta [ sc_g - gamma Delta_g W + beta Gamma(W) ],
/// together with the residuals of the three defining equations (all three
/// must vanish; the closed forms solve the first and third, the second is
/// implied).
struct InvariantCoeffs {
  double gamma = 0.0;
  double n = 0.0;
  int d = 0;
  double beta = 0.0;
  double theta = 0.0;
  double residuals[3] = {0.0, 0.0, 0.0};
};

InvariantCoeffs invariant_coeffs(double gamma, double n, int d);

/// A weighted manifold handle: lower-index metric field, weight field, and
/// the effective dimension n of its conformal family.
struct WeightedSpace {
  int d = 0;
  double n = 0.0;
  MetricFn metric_lower;
  ScalarFn weight;
};

/// View of a model space as a WeightedSpace (analytic metric/weight fields).
WeightedSpace as_weighted_space(const ModelSpace& space);

/// S_gamma evaluated at p: scalar curvature, metric Laplacian of the weight
/// and Gamma(W) all obtained by finite differences of the stored fields.
double s_gamma(const WeightedSpace& space, double gamma, const Vec& p);
double s_gamma(const ModelSpace& space, double gamma, const Vec& p);

/// Transformation-law residual at p: the triple (c^{-n} mu, c^2 Gamma) with
/// c = e^tau is materialized (metric / c^2, weight + (n-d) tau) and S_gamma
/// of it is compared against
///   c^2 [ S_gamma(mu, Gamma) + (n-2)/2 ( L tau - (n-2)/2 Gamma(tau) ) ].
double transformation_law_residual(const WeightedSpace& space, double gamma,
                                   const ScalarFn& tau, const Vec& p);

/// Yamabe-type reformulation residual: with u = c^{-(n-2)/2},
/// -L u + s u = s~ u^{(n+2)/(n-2)} where s, s~ are S_gamma of the base and
/// transformed triples at p.
double yamabe_residual(const WeightedSpace& space, double gamma, const ScalarFn& tau,
                       const Vec& p);

}  // namespace ckn
