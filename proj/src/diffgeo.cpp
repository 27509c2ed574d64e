#include "ckn/diffgeo.hpp"

#include <cmath>

namespace ckn {

SymMatrix::SymMatrix(const Eigen::MatrixXd& m, double tol) {
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (asym > tol * scale) {
    throw Error("SymMatrix: input not symmetric within tolerance");
  }
  m_ = 0.5 * (m + m.transpose());
}

double SymMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool SymMatrix::positive_definite(double tol) const { return min_eigenvalue() > tol; }

double SymMatrix::max_abs_diff(const SymMatrix& other) const {
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// 1-d stencils
// ---------------------------------------------------------------------------

namespace {

double d1_order4(const std::function<double(double)>& g, double h) {
  return (-g(2 * h) + 8 * g(h) - 8 * g(-h) + g(-2 * h)) / (12 * h);
}

double d2_order4(const std::function<double(double)>& g, double h) {
  return (-g(2 * h) + 16 * g(h) - 30 * g(0.0) + 16 * g(-h) - g(-2 * h)) / (12 * h * h);
}

}  // namespace

double fd_d1(const std::function<double(double)>& g, double h) {
  return (16.0 * d1_order4(g, 0.5 * h) - d1_order4(g, h)) / 15.0;
}

double fd_d2(const std::function<double(double)>& g, double h) {
  return (16.0 * d2_order4(g, 0.5 * h) - d2_order4(g, h)) / 15.0;
}

namespace {

Vec shifted(const Vec& p, int i, double t) {
  Vec q = p;
  q[i] += t;
  return q;
}

void check_domain_margin(const ScalarField& f, const Vec& p, double step_scale) {
  using D = ScalarField::Domain;
  if (f.domain == D::Free) return;
  double hmax = 0.0, r2 = 0.0;
  for (double pi : p) {
    hmax = std::max(hmax, 1e-3 * std::max(1.0, std::abs(pi)) * step_scale / 1e-3);
    r2 += pi * pi;
  }
  const double reach = 2.0 * hmax * std::sqrt(static_cast<double>(p.size()));
  const double r = std::sqrt(r2);
  if (f.domain == D::CartesianPunctured || f.domain == D::BallPunctured) {
    if (r - reach <= 0.0) throw BoundaryError("fd: stencil reaches the origin");
    if (f.domain == D::BallPunctured && r + reach >= 1.0) {
      throw BoundaryError("fd: stencil reaches the unit sphere");
    }
  } else if (f.domain == D::Cylinder) {
    // p = (s, t_0, ..., t_{d-3}, azimuth); polar angles guarded
    for (std::size_t a = 1; a + 1 < p.size(); ++a) {
      if (p[a] - reach < 1e-3 || p[a] + reach > kPi - 1e-3) {
        throw BoundaryError("fd: stencil reaches an angular chart pole");
      }
    }
  }
}

}  // namespace

Vec fd_gradient_raw(const std::function<double(const Vec&)>& f, const Vec& p,
                    double step_scale) {
  const int d = static_cast<int>(p.size());
  Vec grad(p.size(), 0.0);
  for (int i = 0; i < d; ++i) {
    const double h = step_scale * std::max(1.0, std::abs(p[i]));
    grad[i] = fd_d1([&](double t) { return f(shifted(p, i, t)); }, h);
  }
  return grad;
}

Eigen::MatrixXd fd_hessian_raw(const std::function<double(const Vec&)>& f, const Vec& p,
                               double step_scale) {
  const int d = static_cast<int>(p.size());
  Eigen::MatrixXd hess(d, d);
  for (int i = 0; i < d; ++i) {
    const double hi = step_scale * std::max(1.0, std::abs(p[i]));
    hess(i, i) = fd_d2([&](double t) { return f(shifted(p, i, t)); }, hi);
    for (int j = i + 1; j < d; ++j) {
      const double hj = step_scale * std::max(1.0, std::abs(p[j]));
      const double mixed = fd_d1(
          [&](double t) {
            Vec q = shifted(p, i, t);
            return fd_d1([&](double u) { return f(shifted(q, j, u)); }, hj);
          },
          hi);
      hess(i, j) = mixed;
      hess(j, i) = mixed;
    }
  }
  return hess;
}

Vec fd_gradient(const ScalarField& f, const Vec& p) {
  check_domain_margin(f, p, 1e-3);
  return fd_gradient_raw(f.eval, p);
}

SymMatrix fd_hessian(const ScalarField& f, const Vec& p) {
  check_domain_margin(f, p, 1e-2);
  return SymMatrix(fd_hessian_raw(f.eval, p));
}

// ---------------------------------------------------------------------------
// Metric machinery
// ---------------------------------------------------------------------------

std::vector<Eigen::MatrixXd> fd_christoffel(const MetricFn& g, const Vec& p,
                                            double step_scale) {
  const int d = static_cast<int>(p.size());
  const Eigen::MatrixXd g0 = g(p);
  const Eigen::MatrixXd ginv = g0.inverse();

  // dg[k](i,j) = d_k g_ij; one metric evaluation per stencil offset
  std::vector<Eigen::MatrixXd> dg(d);
  for (int k = 0; k < d; ++k) {
    const double h = step_scale * std::max(1.0, std::abs(p[k]));
    const double offs[6] = {-2 * h, -h, -0.5 * h, 0.5 * h, h, 2 * h};
    Eigen::MatrixXd at[6];
    for (int o = 0; o < 6; ++o) at[o] = g(shifted(p, k, offs[o]));
    const Eigen::MatrixXd c1 = (-at[5] + 8 * at[4] - 8 * at[1] + at[0]) / (12 * h);
    const Eigen::MatrixXd c2 = (-at[4] + 8 * at[3] - 8 * at[2] + at[1]) / (6 * h);
    dg[k] = (16.0 * c2 - c1) / 15.0;
  }

  std::vector<Eigen::MatrixXd> gam(d, Eigen::MatrixXd::Zero(d, d));
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) {
          s += ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        }
        gam[k](i, j) = 0.5 * s;
        gam[k](j, i) = gam[k](i, j);
      }
    }
  }
  return gam;
}

Eigen::MatrixXd fd_ricci(const MetricFn& g, const Vec& p) {
  const int d = static_cast<int>(p.size());
  const std::vector<Eigen::MatrixXd> gam = fd_christoffel(g, p);

  // dgam[m][k](i,j) = d_m Gamma^k_{ij}; outer step larger than the metric
  // step inside fd_christoffel so the nesting stays well conditioned.
  std::vector<std::vector<Eigen::MatrixXd>> dgam(d);
  for (int m = 0; m < d; ++m) {
    const double h = 1.2e-2 * std::max(1.0, std::abs(p[m]));
    dgam[m].assign(d, Eigen::MatrixXd::Zero(d, d));
    // evaluate whole Christoffel arrays at the stencil offsets
    const double offs[6] = {-2 * h, -h, -0.5 * h, 0.5 * h, h, 2 * h};
    std::vector<std::vector<Eigen::MatrixXd>> at(6);
    for (int o = 0; o < 6; ++o) at[o] = fd_christoffel(g, shifted(p, m, offs[o]));
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const auto stencil = [&](int o) { return at[o][k](i, j); };
          const double c1 = (-stencil(5) + 8 * stencil(4) - 8 * stencil(1) + stencil(0)) / (12 * h);
          const double c2 =
              (-stencil(4) + 8 * stencil(3) - 8 * stencil(2) + stencil(1)) / (12 * 0.5 * h);
          dgam[m][k](i, j) = (16.0 * c2 - c1) / 15.0;
        }
      }
    }
  }

  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      double s = 0.0;
      for (int m = 0; m < d; ++m) {
        s += dgam[m][m](i, j) - 0.5 * (dgam[i][m](m, j) + dgam[j][m](m, i));
        for (int nn = 0; nn < d; ++nn) {
          s += gam[m](i, j) * gam[nn](nn, m) - gam[m](i, nn) * gam[nn](m, j);
        }
      }
      ric(i, j) = s;
      ric(j, i) = s;
    }
  }
  return ric;
}

double fd_scalar_curvature(const MetricFn& g, const Vec& p) {
  const Eigen::MatrixXd ric = fd_ricci(g, p);
  const Eigen::MatrixXd ginv = g(p).inverse();
  return (ginv * ric).trace();
}

Eigen::MatrixXd fd_metric_hessian(const MetricFn& g, const ScalarFn& f, const Vec& p) {
  const int d = static_cast<int>(p.size());
  const Eigen::MatrixXd hess = fd_hessian_raw(f, p);
  const Vec grad = fd_gradient_raw(f, p);
  const std::vector<Eigen::MatrixXd> gam = fd_christoffel(g, p);
  Eigen::MatrixXd out = hess;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) out(i, j) -= gam[k](i, j) * grad[k];
    }
  }
  return 0.5 * (out + out.transpose());
}

double fd_laplace_beltrami(const MetricFn& g, const ScalarFn& f, const Vec& p) {
  const Eigen::MatrixXd hess = fd_metric_hessian(g, f, p);
  const Eigen::MatrixXd ginv = g(p).inverse();
  return (ginv * hess).trace();
}

double fd_gamma_pair(const MetricFn& g, const ScalarFn& u, const ScalarFn& v, const Vec& p) {
  const Vec du = fd_gradient_raw(u, p);
  const Vec dv = fd_gradient_raw(v, p);
  const Eigen::MatrixXd ginv = g(p).inverse();
  const int d = static_cast<int>(p.size());
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s += ginv(i, j) * du[i] * dv[j];
  }
  return s;
}

double hs_norm_sq(const Eigen::MatrixXd& t, const Eigen::MatrixXd& g_lower) {
  const Eigen::MatrixXd ginv = g_lower.inverse();
  return (ginv * t * ginv * t.transpose()).trace();
}

// ---------------------------------------------------------------------------
// Conformal formulas
// ---------------------------------------------------------------------------

double conformal_laplacian(double lap_g_f, double gamma_tau_f, double c, int d) {
  if (!(c > 0.0)) throw Error("conformal_laplacian: conformal factor must be positive");
  return c * c * (lap_g_f - (d - 2.0) * gamma_tau_f);
}

namespace {

Eigen::MatrixXd sym_outer(const Vec& u, const Vec& v) {
  const int d = static_cast<int>(u.size());
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = 0.5 * (u[i] * v[j] + v[i] * u[j]);
  }
  return m;
}

}  // namespace

SymMatrix conformal_hessian(const Eigen::MatrixXd& hess_g_psi, const Vec& dpsi,
                            const Vec& dtau, double gamma_psi_tau,
                            const Eigen::MatrixXd& g_lower) {
  return SymMatrix(hess_g_psi + 2.0 * sym_outer(dpsi, dtau) - gamma_psi_tau * g_lower);
}

double conformal_hessian_hs_norm(double hs_g_psi_sq, double gamma_tau_gamma_psi,
                                 double gamma_psi, double gamma_tau,
                                 double gamma_psi_tau, double lap_g_psi, double c, int d) {
  const double c4 = sq(sq(c));
  return c4 * (hs_g_psi_sq + 2.0 * gamma_tau_gamma_psi + 2.0 * gamma_psi * gamma_tau +
               (d - 2.0) * sq(gamma_psi_tau) - 2.0 * lap_g_psi * gamma_psi_tau);
}

SymMatrix conformal_ricci(const Eigen::MatrixXd& ric_g, double lap_g_tau,
                          const Eigen::MatrixXd& hess_g_tau, const Vec& dtau,
                          double gamma_tau, const Eigen::MatrixXd& g_lower, int d) {
  const Eigen::MatrixXd out =
      ric_g + lap_g_tau * g_lower +
      (d - 2.0) * (hess_g_tau + sym_outer(dtau, dtau) - gamma_tau * g_lower);
  return SymMatrix(out);
}

double conformal_scalar(double sc_g, double lap_g_tau, double gamma_tau, double c, int d) {
  return c * c * (sc_g + (d - 1.0) * (2.0 * lap_g_tau - (d - 2.0) * gamma_tau));
}

}  // namespace ckn
