#pragma once

#include <Eigen/Dense>

#include "ckn/chart.hpp"
#include "ckn/diffgeo.hpp"
#include "ckn/fields.hpp"
#include "ckn/quadrature.hpp"

namespace ckn {

using CylFn = std::function<double(const CylPoint&)>;

/// Finite-difference jet of a cylinder field at a point: everything the
/// closed-form Gamma_2 expressions consume (derivatives up to second order,
/// one mixed s-theta order, and the sphere Hessian with its Christoffel
/// correction). Steps are fixed; stencils are 4th order with one Richardson
/// extrapolation.
struct CylJet {
  double f = 0.0;
  double fs = 0.0, fss = 0.0;
  Vec ftheta;            // coordinate partials d_a f
  Vec fstheta;           // d_a (d_s f)
  double gamma_theta = 0.0;      // Gamma^theta(f)
  double gamma_theta_fs = 0.0;   // Gamma^theta(d_s f)
  double gamma_theta_fs_f = 0.0; // Gamma^theta(d_s f, f)
  double lap_theta = 0.0;        // Delta_theta f
  Eigen::MatrixXd hess_theta;    // nabla nabla^theta f (lower indices)
  double hess_theta_hs = 0.0;    // ||nabla nabla^theta f||^2
};

CylJet fd_cyl_jet(const CylFn& f, const Sphere& sphere, const CylPoint& p,
                  double h_s = 2e-2, double h_theta = 2e-2);

// ---------------------------------------------------------------------------
// Carre du champ and generator
// ---------------------------------------------------------------------------

/// Cartesian evaluations on a model space (gradients by FD).
double carre_du_champ(const ModelSpace& space, const ScalarFn& f, const ScalarFn& g,
                      const Vec& x);
double generator(const ModelSpace& space, const ScalarFn& f, const Vec& x);

/// Cylinder-side carre du champ / generator of the spherical model:
///   Gamma(f)  = phi^2 [ (d_s f)^2 + Gamma^theta(f) ]
///   L f       = phi^2 [ d_ss f + (2-n)(phi'/phi) d_s f + Delta_theta f ].
double carre_du_champ_cyl(const CknParams& params, const CylFn& f, const CylFn& g,
                          const CylPoint& p);
double generator_cyl(const CknParams& params, const CylFn& f, const CylPoint& p);

/// Generator of any of the three models in the cylindrical chart (conformal
/// factor e^{-alpha s}, cosh(alpha s) or sinh(-alpha s) against the product
/// metric).
double generator_cyl_kind(ModelKind kind, const CknParams& params, const CylFn& f,
                          const CylPoint& p);

// ---------------------------------------------------------------------------
// Gamma_2
// ---------------------------------------------------------------------------

/// Definitional Gamma_2(f) = 1/2 L(Gamma(f)) - Gamma(f, Lf), computed by
/// applying the generator and carre du champ to intermediate fields that are
/// themselves assembled by finite differences.
double gamma2_definitional(const CknParams& params, const CylFn& f, const CylPoint& p);

/// Closed cylindrical form of Gamma_2 (all chart coefficients analytic, f
/// enters through its FD jet only).
double gamma2_closed_cylindrical(const CknParams& params, const CylFn& f, const CylPoint& p);
double gamma2_closed_from_jet(const CknParams& params, const CylJet& jet, double s);

/// Bochner assembly: Ric(L)(grad f, grad f) + ||nabla nabla f||^2, with the
/// Hessian norm produced by the conformal-transformation machinery (base
/// product metric, factor phi). Independent code path from the closed form.
double gamma2_bochner(const CknParams& params, const CylFn& f, const CylPoint& p);

/// | RHS of the radial/angular decomposition - phi^{-4}(Gamma_2 - rho Gamma
/// - (Lf)^2/n) | at p. The first term comes from the decomposition, the
/// second from the closed cylindrical form.
double cd_decomposition_residual(const CknParams& params, const CylFn& f, const CylPoint& p);

// ---------------------------------------------------------------------------
// Curvature-dimension tensor check
// ---------------------------------------------------------------------------

/// Closed forms on the cylinder (lower indices, coordinates (s, theta)):
Eigen::MatrixXd ric_gbar_closed(const CknParams& params, const CylPoint& p);
Eigen::MatrixXd hess_weight_closed(const CknParams& params, const CylPoint& p);
Eigen::MatrixXd ric_lbar_closed(const CknParams& params, const CylPoint& p);

/// FD counterparts assembled from the chart metric H/phi^2 and weight
/// (n-d) log phi.
Eigen::MatrixXd ric_gbar_fd(const CknParams& params, const CylPoint& p);
Eigen::MatrixXd hess_weight_fd(const CknParams& params, const CylPoint& p);

/// CD matrix Ric(L) - rho g - (n-d)^{-1} dW (x) dW (weight term absent when
/// n == d) and the target B_dgz (h - j).
Eigen::MatrixXd cd_matrix_closed(const CknParams& params, const CylPoint& p);
Eigen::MatrixXd cd_matrix_fd(const CknParams& params, const CylPoint& p);
Eigen::MatrixXd cd_target(const CknParams& params, const CylPoint& p);

struct CdReport {
  CknParams params;
  double pointwise_min_eigenvalue = 0.0;  // of the residual matrix, min over samples
  double residual_max = 0.0;              // max |CD matrix - B_dgz (h-j)| entry
  double fd_residual_max = 0.0;           // same with the FD-assembled matrix (if run)
  bool cd_holds = false;
  double integrated_residual = 0.0;       // integrated CD form on a witness-type field
};

struct CdCheckOptions {
  int sample_points = 8;
  std::uint64_t seed = 7;
  bool with_fd_oracle = false;
  bool with_integrated = false;
};

CdReport cd_tensor_check(const CknParams& params, const CdCheckOptions& opt = {});

// ---------------------------------------------------------------------------
// Sphere Gamma_2 integral inequality
// ---------------------------------------------------------------------------

/// Quartic-term constant: the printed closed form and the value re-derived
/// from the underlying (A, B, chi, q, K, m) system with q = 1-n, K = d-2,
/// m = d-1, chi = 3q/(2(m+2)). The two disagree for every d >= 3; both are
/// reported and never silently reconciled.
double sphere_gamma2_constant_printed(int d, double n);
double sphere_gamma2_constant_derived(int d, double n);

struct SphereGamma2Sides {
  double lhs = 0.0;          // int Gamma2^theta(f) f^{1-n}
  double gamma_term = 0.0;   // int Gamma^theta(f) f^{1-n}
  double quartic_term = 0.0; // int Gamma^theta(f)^2 / f^2 f^{1-n}
  double a_printed = 0.0;
  double a_derived = 0.0;
  double rhs_printed = 0.0;  // (d-1) gamma_term + a_printed quartic_term
  double rhs_derived = 0.0;
};

/// Both sides of the angular Gamma_2 inequality for a positive field on
/// S^{d-1}. Integrals are reduced to the sphere (the common cosh-layer
/// factor in s multiplies both sides and is dropped; it diverges for n <= 5).
/// Throws PositivityError when min f <= 0. The generic overload assembles
/// Gamma_2^theta from FD sphere Hessians; the AngularPoly overload evaluates
/// f = exp(P) with exact algebra (the two are cross-checked in the tests).
SphereGamma2Sides sphere_gamma2_inequality(const CknParams& params,
                                           const std::function<double(const Vec&)>& f_theta,
                                           int polar_nodes = 24, int azimuth_nodes = 48);
SphereGamma2Sides sphere_gamma2_inequality(const CknParams& params, const AngularPoly& exponent,
                                           int polar_nodes = 24, int azimuth_nodes = 48);

}  // namespace ckn
