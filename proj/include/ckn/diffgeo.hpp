#pragma once

#include <Eigen/Dense>
#include <functional>

#include "ckn/common.hpp"

namespace ckn {

/// Scalar field handle with a domain tag. Smoothness (C^4 where derivatives
/// are taken) is the caller's contract.
struct ScalarField {
  enum class Domain { Free, CartesianPunctured, BallPunctured, Cylinder };
  Domain domain = Domain::Free;
  std::function<double(const Vec&)> eval;

  double operator()(const Vec& p) const { return eval(p); }
};

/// Symmetric matrix of tensor components at a point, lower-index convention.
/// Symmetry is enforced on construction (inputs are symmetrized; a large
/// asymmetry throws).
class SymMatrix {
 public:
  explicit SymMatrix(const Eigen::MatrixXd& m, double tol = 1e-8);

  const Eigen::MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  int dim() const { return static_cast<int>(m_.rows()); }

  double min_eigenvalue() const;
  bool positive_definite(double tol = 0.0) const;

  /// Largest absolute entry of this - other.
  double max_abs_diff(const SymMatrix& other) const;

 private:
  Eigen::MatrixXd m_;
};

// ---------------------------------------------------------------------------
// Finite differences. All stencils are 4th-order central differences combined
// with one Richardson step (effective order 6). Steps are fixed functions of
// the evaluation point so runs are reproducible bit-for-bit.
// ---------------------------------------------------------------------------

/// First/second derivative of a 1-d restriction g(t) at t = 0, step h.
double fd_d1(const std::function<double(double)>& g, double h);
double fd_d2(const std::function<double(double)>& g, double h);

/// Gradient and Hessian of a field at p. Steps are per-coordinate,
/// scale * max(1, |coordinate|): first derivatives at 1e-3, second
/// derivatives at 1e-2 (at 1e-3 the roundoff floor of a second-difference
/// stencil sits near 5e-9, which would drown the accuracy targets). Throws BoundaryError when the
/// stencil would leave the tagged domain (margin 2h per axis).
Vec fd_gradient(const ScalarField& f, const Vec& p);
SymMatrix fd_hessian(const ScalarField& f, const Vec& p);

// Raw variants without the domain guard; used internally where the caller
// already validated the point.
Vec fd_gradient_raw(const std::function<double(const Vec&)>& f, const Vec& p,
                    double step_scale = 1e-3);
Eigen::MatrixXd fd_hessian_raw(const std::function<double(const Vec&)>& f, const Vec& p,
                               double step_scale = 1e-2);

// ---------------------------------------------------------------------------
// Metric machinery by finite differences. The metric is supplied as a field
// of lower-index component matrices; everything else (Christoffel symbols,
// curvature, Laplace-Beltrami) is assembled from FD derivatives of it.
// ---------------------------------------------------------------------------

using MetricFn = std::function<Eigen::MatrixXd(const Vec&)>;
using ScalarFn = std::function<double(const Vec&)>;

/// Christoffel symbols of the second kind, out[k](i,j) = Gamma^k_{ij}.
std::vector<Eigen::MatrixXd> fd_christoffel(const MetricFn& g, const Vec& p,
                                            double step_scale = 5e-3);

/// Ricci tensor (lower indices) via FD of the Christoffel symbols.
Eigen::MatrixXd fd_ricci(const MetricFn& g, const Vec& p);

double fd_scalar_curvature(const MetricFn& g, const Vec& p);

/// Metric Hessian (nabla nabla^g f)_ij = d_i d_j f - Gamma^k_ij d_k f.
Eigen::MatrixXd fd_metric_hessian(const MetricFn& g, const ScalarFn& f, const Vec& p);

double fd_laplace_beltrami(const MetricFn& g, const ScalarFn& f, const Vec& p);

/// g^{ij} d_i u d_j v.
double fd_gamma_pair(const MetricFn& g, const ScalarFn& u, const ScalarFn& v, const Vec& p);

/// Hilbert-Schmidt norm squared of a lower-index tensor T in metric g:
/// g^{ik} g^{jl} T_ij T_kl.
double hs_norm_sq(const Eigen::MatrixXd& t, const Eigen::MatrixXd& g_lower);

// ---------------------------------------------------------------------------
// Conformal transformation formulas for h^{ij} = c^2 g^{ij} (equivalently
// h_ij = g_ij / c^2), tau = log c, all tensors with lower indices.
// ---------------------------------------------------------------------------

/// Delta_h f = c^2 (Delta_g f - (d-2) Gamma_g(tau, f)).
double conformal_laplacian(double lap_g_f, double gamma_tau_f, double c, int d);

/// (nabla nabla^h psi) = (nabla nabla^g psi) + 2 dpsi (.) dtau - Gamma_g(psi,tau) g,
/// where dpsi, dtau are coordinate partials and (.) the symmetrized product.
SymMatrix conformal_hessian(const Eigen::MatrixXd& hess_g_psi, const Vec& dpsi,
                            const Vec& dtau, double gamma_psi_tau,
                            const Eigen::MatrixXd& g_lower);

/// ||nabla nabla^h psi||_h^2 assembled from base-metric scalars.
double conformal_hessian_hs_norm(double hs_g_psi_sq, double gamma_tau_gamma_psi,
                                 double gamma_psi, double gamma_tau,
                                 double gamma_psi_tau, double lap_g_psi, double c, int d);

/// Ric_h = Ric_g + (Delta_g tau) g + (d-2)(nabla nabla^g tau + dtau (.) dtau - Gamma_g(tau) g).
SymMatrix conformal_ricci(const Eigen::MatrixXd& ric_g, double lap_g_tau,
                          const Eigen::MatrixXd& hess_g_tau, const Vec& dtau,
                          double gamma_tau, const Eigen::MatrixXd& g_lower, int d);

/// sc_h = c^2 [ sc_g + (d-1)(2 Delta_g tau - (d-2) Gamma_g(tau)) ].
double conformal_scalar(double sc_g, double lap_g_tau, double gamma_tau, double c, int d);

}  // namespace ckn
