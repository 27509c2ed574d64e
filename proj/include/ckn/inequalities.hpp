#pragma once

#include "ckn/fields.hpp"
#include "ckn/gamma.hpp"
#include "ckn/quadrature.hpp"

namespace ckn {

struct ExtremalSpec {
  enum class Mode { SobolevRadial, SobolevRoundSphere, Poincare, PoincareBoundary };
  Mode mode = Mode::SobolevRadial;
  double lambda = 1.0;
  double mu = 0.0;
  double nu = 0.0;  // boundary Poincare mode only
};

struct DeficitReport {
  enum class Verdict { Equality, Strict, Violated };
  double lhs = 0.0;
  double rhs = 0.0;
  double deficit = 0.0;  // rhs - lhs; the inequality asserts deficit >= 0
  double tolerance = 0.0;
  Verdict verdict = Verdict::Equality;
};

const char* to_string(DeficitReport::Verdict v);

/// Sobolev deficit against the normalized measure mu = mu_bar / Z:
///   deficit = 4/(n(n-2) alpha^2) int Gamma(v) dmu + int v^2 dmu
///             - ( int v^p dmu )^{2/p}.
/// Requires params.z (MissingZ). Non-finite integrand values throw NonFinite.
DeficitReport sobolev_deficit(const CylField& v, const CknParams& params,
                              const QuadGrid& grid, double tolerance = 1e-6);

/// Poincare deficit: 1/(n alpha^2) int Gamma(f) dmu - Var_mu(f).
DeficitReport poincare_deficit(const CylField& f, const CknParams& params,
                               const QuadGrid& grid, double tolerance = 1e-6);

/// The explicit extremal fields of the sharp inequalities. Throws SpecError
/// when a mode constraint is violated (lambda <= |mu|, nu off the boundary
/// case, round sphere requested away from alpha = 1, n = d).
CylField make_extremal(const ExtremalSpec& spec, const CknParams& params);

/// | f Lf - (n/2) Gamma(f) - (n alpha^2 / 2)(1 - f^2) | at p for
/// f = lambda + mu tanh(alpha s); vanishes exactly when lambda^2 - mu^2 = 1.
/// The generator is evaluated by finite differences.
double pointwise_identity_residual(double lambda, double mu, const CknParams& params,
                                   const CylPoint& p);

/// | -4/(n(n-2)alpha^2) L v + v - v^{p-1} | at p for the radial extremal
/// v = (lambda + mu tanh(alpha s))^{-(n-2)/2}.
double euler_lagrange_residual(double lambda, double mu, const CknParams& params,
                               const CylPoint& p);

/// Poincare deficit of the angular witness g = w_1(theta)/cosh(alpha s).
/// Positive strictly inside the symmetric regime alpha^2 (n-1) < d-1, zero on
/// its boundary, negative outside.
DeficitReport symmetry_breaking_witness(const CknParams& params, const QuadGrid& grid,
                                        double tolerance = 1e-6);

struct TransferReport {
  double energy_euclidean = 0.0;
  double energy_spherical = 0.0;  // int Gamma_bar(v) + n(n-2)alpha^2/4 int v^2
  double norm_euclidean = 0.0;    // int f^p dmu_hat
  double norm_spherical = 0.0;    // int v^p dmu_bar
  double mismatch = 0.0;          // max relative mismatch of the two pairs
};

/// Two-sided quadrature of the conformal change of unknown f = phi^{(2-n)/2} v
/// between the Euclidean and spherical models. `v` must carry analytic
/// first-derivative data and decay fast enough that [-s_span, s_span]
/// captures both integrands.
TransferReport conformal_transfer_check(const CylField& v, const CknParams& params,
                                        double s_span = 10.0);

/// Pointwise scalar identities behind the transfer, by finite differences at
/// a Cartesian point: L(log c) - (n-2)/2 Gamma(log c) = +- n alpha^2 / (2 c^2)
/// with c = (1 +- |x|^{2 alpha})/2 on the Euclidean model.
double transfer_identity_residual_spherical(const CknParams& params, const Vec& x);
double transfer_identity_residual_hyperbolic(const CknParams& params, const Vec& x);

/// One-sided check of the hyperbolic-model inequality on a compactly
/// supported field (support in s strictly inside (-inf, 0)): returns
/// deficit = C^{-1}-side combination; >= -tol is the assertion.
DeficitReport hyperbolic_validity_deficit(const CylField& v, const CknParams& params,
                                          double s_lo, double s_hi, double tolerance = 1e-6);

}  // namespace ckn
