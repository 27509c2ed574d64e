#include "ckn/gamma.hpp"

#include <cmath>

namespace ckn {

namespace {

CylPoint shifted_s(const CylPoint& p, double t) {
  CylPoint q = p;
  q.s += t;
  return q;
}

CylPoint shifted_theta(const CylPoint& p, int a, double t) {
  CylPoint q = p;
  q.theta[a] += t;
  return q;
}

double log_phi_prime(const CknParams& params, double s) {
  return params.alpha * std::tanh(params.alpha * s);
}

/// value, d/ds, d2/ds2, per-angle d and d2 (no mixed terms): enough for the
/// generator and first-order carre du champ of an intermediate field.
struct Jet2 {
  double f = 0.0, fs = 0.0, fss = 0.0;
  Vec ftheta, ftheta2;
};

Jet2 fd_jet2(const CylFn& f, const CylPoint& p, double h_s, double h_theta) {
  Jet2 j;
  j.f = f(p);
  j.fs = fd_d1([&](double t) { return f(shifted_s(p, t)); }, h_s);
  j.fss = fd_d2([&](double t) { return f(shifted_s(p, t)); }, h_s);
  const int m = static_cast<int>(p.theta.size());
  j.ftheta.assign(m, 0.0);
  j.ftheta2.assign(m, 0.0);
  for (int a = 0; a < m; ++a) {
    j.ftheta[a] = fd_d1([&](double t) { return f(shifted_theta(p, a, t)); }, h_theta);
    j.ftheta2[a] = fd_d2([&](double t) { return f(shifted_theta(p, a, t)); }, h_theta);
  }
  return j;
}

double lap_theta_from(const Sphere& sphere, const CylPoint& p, const Vec& ftheta,
                      const Vec& ftheta2) {
  const Vec g = sphere.metric_diag(p.theta);
  const Vec drift = sphere.laplacian_drift(p.theta);
  double s = 0.0;
  for (std::size_t a = 0; a < ftheta.size(); ++a) {
    s += (ftheta2[a] + drift[a] * ftheta[a]) / g[a];
  }
  return s;
}

}  // namespace

CylJet fd_cyl_jet(const CylFn& f, const Sphere& sphere, const CylPoint& p, double h_s,
                  double h_theta) {
  sphere.require_interior(p.theta);
  CylJet jet;
  const int m = sphere.n_angles();
  jet.f = f(p);
  jet.fs = fd_d1([&](double t) { return f(shifted_s(p, t)); }, h_s);
  jet.fss = fd_d2([&](double t) { return f(shifted_s(p, t)); }, h_s);

  jet.ftheta.assign(m, 0.0);
  jet.fstheta.assign(m, 0.0);
  Vec ftheta2(m, 0.0);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(m, m);
  for (int a = 0; a < m; ++a) {
    jet.ftheta[a] = fd_d1([&](double t) { return f(shifted_theta(p, a, t)); }, h_theta);
    second(a, a) = fd_d2([&](double t) { return f(shifted_theta(p, a, t)); }, h_theta);
    ftheta2[a] = second(a, a);
    jet.fstheta[a] = fd_d1(
        [&](double t) {
          const CylPoint q = shifted_theta(p, a, t);
          return fd_d1([&](double u) { return f(shifted_s(q, u)); }, h_s);
        },
        h_theta);
    for (int b = a + 1; b < m; ++b) {
      const double mixed = fd_d1(
          [&](double t) {
            const CylPoint q = shifted_theta(p, a, t);
            return fd_d1([&](double u) { return f(shifted_theta(q, b, u)); }, h_theta);
          },
          h_theta);
      second(a, b) = mixed;
      second(b, a) = mixed;
    }
  }

  const Vec g = sphere.metric_diag(p.theta);
  jet.gamma_theta = jet.gamma_theta_fs = jet.gamma_theta_fs_f = 0.0;
  for (int a = 0; a < m; ++a) {
    jet.gamma_theta += sq(jet.ftheta[a]) / g[a];
    jet.gamma_theta_fs += sq(jet.fstheta[a]) / g[a];
    jet.gamma_theta_fs_f += jet.fstheta[a] * jet.ftheta[a] / g[a];
  }
  jet.lap_theta = lap_theta_from(sphere, p, jet.ftheta, ftheta2);

  // sphere Hessian: coordinate second partials minus the Christoffel term
  const std::vector<Eigen::MatrixXd> gam = sphere.christoffel(p.theta);
  jet.hess_theta = second;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int c = 0; c < m; ++c) jet.hess_theta(a, b) -= gam[c](a, b) * jet.ftheta[c];
    }
  }
  jet.hess_theta_hs = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      jet.hess_theta_hs += sq(jet.hess_theta(a, b)) / (g[a] * g[b]);
    }
  }
  return jet;
}

// ---------------------------------------------------------------------------
// Carre du champ / generator
// ---------------------------------------------------------------------------

double carre_du_champ(const ModelSpace& space, const ScalarFn& f, const ScalarFn& g,
                      const Vec& x) {
  space.require_domain(x);
  const Vec df = fd_gradient_raw(f, x);
  const Vec dg = fd_gradient_raw(g, x);
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) dot += df[i] * dg[i];
  return space.gamma_coeff(x) * dot;
}

double generator(const ModelSpace& space, const ScalarFn& f, const Vec& x) {
  space.require_domain(x);
  const Eigen::MatrixXd hess = fd_hessian_raw(f, x);
  const Vec df = fd_gradient_raw(f, x);
  const Vec v = space.drift(x);
  double lap = hess.trace();
  double drift = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) drift += v[i] * df[i];
  return space.gamma_coeff(x) * (lap + drift);
}

double carre_du_champ_cyl(const CknParams& params, const CylFn& f, const CylFn& g,
                          const CylPoint& p) {
  const Sphere sphere(params.d);
  const Jet2 jf = fd_jet2(f, p, 2e-2, 2e-2);
  const Jet2 jg = fd_jet2(g, p, 2e-2, 2e-2);
  const Vec gd = sphere.metric_diag(p.theta);
  double dot = jf.fs * jg.fs;
  for (std::size_t a = 0; a < gd.size(); ++a) dot += jf.ftheta[a] * jg.ftheta[a] / gd[a];
  return sq(std::cosh(params.alpha * p.s)) * dot;
}

double generator_cyl(const CknParams& params, const CylFn& f, const CylPoint& p) {
  return generator_cyl_kind(ModelKind::SphericalCKN, params, f, p);
}

double generator_cyl_kind(ModelKind kind, const CknParams& params, const CylFn& f,
                          const CylPoint& p) {
  const Sphere sphere(params.d);
  const Jet2 j = fd_jet2(f, p, 2e-2, 2e-2);
  const double lap = lap_theta_from(sphere, p, j.ftheta, j.ftheta2);
  const double c = cyl_factor(kind, params, p.s);
  const double dlog = cyl_factor_dlog(kind, params, p.s);
  return c * c * (j.fss + (2.0 - params.n) * dlog * j.fs + lap);
}

// ---------------------------------------------------------------------------
// Gamma_2
// ---------------------------------------------------------------------------

double gamma2_definitional(const CknParams& params, const CylFn& f, const CylPoint& p) {
  const Sphere sphere(params.d);
  sphere.require_interior(p.theta, 1e-3);
  const double n = params.n;
  const double hi = 1e-2;  // inner steps (first/second derivatives of f)
  const double ho = 4e-2;  // outer steps (derivatives of assembled fields)

  const auto gamma_field = [&](const CylPoint& q) {
    const Jet2 j = fd_jet2(f, q, hi, hi);
    const Vec g = sphere.metric_diag(q.theta);
    double dot = sq(j.fs);
    for (std::size_t a = 0; a < g.size(); ++a) dot += sq(j.ftheta[a]) / g[a];
    return sq(std::cosh(params.alpha * q.s)) * dot;
  };
  const auto l_field = [&](const CylPoint& q) {
    const Jet2 j = fd_jet2(f, q, hi, hi);
    const double lap = lap_theta_from(sphere, q, j.ftheta, j.ftheta2);
    return sq(std::cosh(params.alpha * q.s)) *
           (j.fss + (2.0 - n) * log_phi_prime(params, q.s) * j.fs + lap);
  };

  // 1/2 L(Gamma(f))
  const Jet2 ju = fd_jet2(gamma_field, p, ho, ho);
  const double lap_u = lap_theta_from(sphere, p, ju.ftheta, ju.ftheta2);
  const double phi2 = sq(std::cosh(params.alpha * p.s));
  const double l_of_gamma =
      phi2 * (ju.fss + (2.0 - n) * log_phi_prime(params, p.s) * ju.fs + lap_u);

  // Gamma(f, Lf): first derivatives of Lf (outer), tight derivatives of f
  const Jet2 jf = fd_jet2(f, p, hi, hi);
  Jet2 jw;
  jw.fs = fd_d1([&](double t) { return l_field(shifted_s(p, t)); }, ho);
  const int m = sphere.n_angles();
  jw.ftheta.assign(m, 0.0);
  for (int a = 0; a < m; ++a) {
    jw.ftheta[a] = fd_d1([&](double t) { return l_field(shifted_theta(p, a, t)); }, ho);
  }
  const Vec g = sphere.metric_diag(p.theta);
  double dot = jf.fs * jw.fs;
  for (int a = 0; a < m; ++a) dot += jf.ftheta[a] * jw.ftheta[a] / g[a];
  const double gamma_f_lf = phi2 * dot;

  return 0.5 * l_of_gamma - gamma_f_lf;
}

double gamma2_closed_from_jet(const CknParams& params, const CylJet& jet, double s) {
  const double n = params.n;
  const int d = params.d;
  const double alpha = params.alpha;
  const double phi = std::cosh(alpha * s);
  const double lp = alpha * std::tanh(alpha * s);  // phi'/phi
  const double b_dgz = params.b_dgz;

  const double core =
      sq(jet.fss) + jet.hess_theta_hs + 2.0 * jet.gamma_theta_fs +
      2.0 * lp * jet.fss * jet.fs + 4.0 * lp * jet.gamma_theta_fs_f -
      2.0 * lp * jet.fs * jet.lap_theta +
      sq(jet.fs) * (d * sq(lp) + sq(alpha) * ((d - 1.0) / sq(phi) + (n - d))) +
      jet.gamma_theta * (2.0 * sq(lp) + sq(alpha) * (n - 1.0) / sq(phi) + b_dgz);
  return sq(sq(phi)) * core;
}

double gamma2_closed_cylindrical(const CknParams& params, const CylFn& f, const CylPoint& p) {
  const Sphere sphere(params.d);
  const CylJet jet = fd_cyl_jet(f, sphere, p);
  return gamma2_closed_from_jet(params, jet, p.s);
}

double gamma2_bochner(const CknParams& params, const CylFn& f, const CylPoint& p) {
  const Sphere sphere(params.d);
  const CylJet jet = fd_cyl_jet(f, sphere, p);
  const double n = params.n;
  const int d = params.d;
  const double alpha = params.alpha;
  const double phi = std::cosh(alpha * p.s);
  const double lp = alpha * std::tanh(alpha * p.s);

  // Ric(L)(grad f, grad f): closed coefficients against the jet
  const double ca = sq(alpha) / sq(phi) * (d - 1.0 + sq(phi) * (n - d));
  const double cb = (sq(alpha) * (n - 1.0) + sq(phi) * params.b_dgz) / sq(phi);
  const double ric_term = sq(sq(phi)) * (ca * sq(jet.fs) + cb * jet.gamma_theta);

  // ||nabla nabla f||^2 through the conformal Hessian-norm machinery with
  // base product metric and factor phi
  const double hs_h = sq(jet.fss) + 2.0 * jet.gamma_theta_fs + jet.hess_theta_hs;
  const double gamma_h_f = sq(jet.fs) + jet.gamma_theta;
  const double gamma_tau_gamma_f = lp * (2.0 * jet.fs * jet.fss + 2.0 * jet.gamma_theta_fs_f);
  const double hess_norm = conformal_hessian_hs_norm(
      hs_h, gamma_tau_gamma_f, gamma_h_f, sq(lp), lp * jet.fs, jet.fss + jet.lap_theta, phi, d);

  return ric_term + hess_norm;
}

double cd_decomposition_residual(const CknParams& params, const CylFn& f, const CylPoint& p) {
  const Sphere sphere(params.d);
  const CylJet jet = fd_cyl_jet(f, sphere, p);
  const double n = params.n;
  const double alpha = params.alpha;
  const double phi = std::cosh(alpha * p.s);
  const double lp = alpha * std::tanh(alpha * p.s);

  // decomposition side
  const double radial = jet.fss + 2.0 * lp * jet.fs - jet.lap_theta / (n - 1.0);
  const double gamma_shift =
      jet.gamma_theta_fs + 2.0 * lp * jet.gamma_theta_fs_f + sq(lp) * jet.gamma_theta;
  const double rhs = (n - 1.0) / n * sq(radial) + jet.hess_theta_hs -
                     sq(jet.lap_theta) / (n - 1.0) + 2.0 * gamma_shift +
                     jet.gamma_theta * params.b_dgz;

  // direct side: phi^{-4} (Gamma_2 - rho Gamma - (Lf)^2 / n)
  const double gamma2 = gamma2_closed_from_jet(params, jet, p.s);
  const double gamma = sq(phi) * (sq(jet.fs) + jet.gamma_theta);
  const double lf = sq(phi) * (jet.fss + (2.0 - n) * lp * jet.fs + jet.lap_theta);
  const double lhs = (gamma2 - params.rho * gamma - sq(lf) / n) / sq(sq(phi));

  return std::abs(rhs - lhs);
}

// ---------------------------------------------------------------------------
// CD tensor check
// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXd product_metric(const Sphere& sphere, const CylPoint& p) {
  const int d = sphere.ambient_dim();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  h(0, 0) = 1.0;
  const Vec g = sphere.metric_diag(p.theta);
  for (int a = 0; a < d - 1; ++a) h(a + 1, a + 1) = g[a];
  return h;
}

Eigen::MatrixXd j_matrix(int d) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  j(0, 0) = 1.0;
  return j;
}

Vec cyl_coords(const CylPoint& p) {
  Vec y(p.theta.size() + 1);
  y[0] = p.s;
  for (std::size_t a = 0; a < p.theta.size(); ++a) y[a + 1] = p.theta[a];
  return y;
}

CylPoint from_coords(const Vec& y) {
  CylPoint p;
  p.s = y[0];
  p.theta.assign(y.begin() + 1, y.end());
  return p;
}

}  // namespace

Eigen::MatrixXd ric_gbar_closed(const CknParams& params, const CylPoint& p) {
  const Sphere sphere(params.d);
  const double phi = std::cosh(params.alpha * p.s);
  const double a2 = sq(params.alpha);
  const Eigen::MatrixXd h = product_metric(sphere, p);
  const Eigen::MatrixXd j = j_matrix(params.d);
  const double cj = (params.d - 1.0) * a2 / sq(phi);
  const double chj = ((params.d - 2.0) * (1.0 - a2) * sq(phi) + (params.d - 1.0) * a2) / sq(phi);
  return cj * j + chj * (h - j);
}

Eigen::MatrixXd hess_weight_closed(const CknParams& params, const CylPoint& p) {
  const Sphere sphere(params.d);
  const double phi = std::cosh(params.alpha * p.s);
  const double a2 = sq(params.alpha);
  const double nd = params.n - params.d;
  const Eigen::MatrixXd h = product_metric(sphere, p);
  const Eigen::MatrixXd j = j_matrix(params.d);
  return nd * a2 * j + nd * a2 * (1.0 - sq(phi)) / sq(phi) * (h - j);
}

Eigen::MatrixXd ric_lbar_closed(const CknParams& params, const CylPoint& p) {
  const Sphere sphere(params.d);
  const double phi = std::cosh(params.alpha * p.s);
  const double a2 = sq(params.alpha);
  const Eigen::MatrixXd h = product_metric(sphere, p);
  const Eigen::MatrixXd j = j_matrix(params.d);
  const double cj = a2 / sq(phi) * (params.d - 1.0 + sq(phi) * (params.n - params.d));
  const double chj = (a2 * (params.n - 1.0) + sq(phi) * params.b_dgz) / sq(phi);
  return cj * j + chj * (h - j);
}

Eigen::MatrixXd ric_gbar_fd(const CknParams& params, const CylPoint& p) {
  const Sphere sphere(params.d);
  const MetricFn metric = [&](const Vec& y) -> Eigen::MatrixXd {
    const CylPoint q = from_coords(y);
    return product_metric(sphere, q) / sq(std::cosh(params.alpha * q.s));
  };
  return fd_ricci(metric, cyl_coords(p));
}

Eigen::MatrixXd hess_weight_fd(const CknParams& params, const CylPoint& p) {
  const Sphere sphere(params.d);
  const MetricFn metric = [&](const Vec& y) -> Eigen::MatrixXd {
    const CylPoint q = from_coords(y);
    return product_metric(sphere, q) / sq(std::cosh(params.alpha * q.s));
  };
  const ScalarFn weight = [&](const Vec& y) {
    return (params.n - params.d) * std::log(std::cosh(params.alpha * y[0]));
  };
  return fd_metric_hessian(metric, weight, cyl_coords(p));
}

Eigen::MatrixXd cd_matrix_closed(const CknParams& params, const CylPoint& p) {
  const Sphere sphere(params.d);
  const double phi = std::cosh(params.alpha * p.s);
  const double lp = log_phi_prime(params, p.s);
  const Eigen::MatrixXd h = product_metric(sphere, p);
  const Eigen::MatrixXd j = j_matrix(params.d);
  Eigen::MatrixXd m = ric_lbar_closed(params, p) - params.rho / sq(phi) * h;
  if (params.n > params.d) m -= (params.n - params.d) * sq(lp) * j;
  return m;
}

Eigen::MatrixXd cd_matrix_fd(const CknParams& params, const CylPoint& p) {
  const Sphere sphere(params.d);
  const double phi = std::cosh(params.alpha * p.s);
  Eigen::MatrixXd m = ric_gbar_fd(params, p) + hess_weight_fd(params, p) -
                      params.rho / sq(phi) * product_metric(sphere, p);
  if (params.n > params.d) {
    const ScalarFn weight = [&](const Vec& y) {
      return (params.n - params.d) * std::log(std::cosh(params.alpha * y[0]));
    };
    const Vec dw = fd_gradient_raw(weight, cyl_coords(p));
    const int d = params.d;
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) m(i, k) -= dw[i] * dw[k] / (params.n - params.d);
    }
  }
  return m;
}

Eigen::MatrixXd cd_target(const CknParams& params, const CylPoint& p) {
  const Sphere sphere(params.d);
  const Eigen::MatrixXd h = product_metric(sphere, p);
  return params.b_dgz * (h - j_matrix(params.d));
}

CdReport cd_tensor_check(const CknParams& params, const CdCheckOptions& opt) {
  if (!params.n_finite() || !(params.alpha > 0.0)) {
    throw DegenerateParams("cd_tensor_check: needs finite n and alpha > 0");
  }
  CdReport report;
  report.params = params;

  const auto points = seeded_cyl_points(params.d, opt.seed, opt.sample_points, 1.5, 0.6);
  double min_eig_residual = std::numeric_limits<double>::infinity();
  double min_eig_cd = std::numeric_limits<double>::infinity();
  double res_max = 0.0, fd_res_max = 0.0;
  for (const CylPoint& p : points) {
    const Eigen::MatrixXd target = cd_target(params, p);
    const Eigen::MatrixXd m = cd_matrix_closed(params, p);
    const Eigen::MatrixXd residual = m - target;
    res_max = std::max(res_max, residual.cwiseAbs().maxCoeff());
    min_eig_residual = std::min(min_eig_residual, SymMatrix(residual, 1e-6).min_eigenvalue());
    min_eig_cd = std::min(min_eig_cd, SymMatrix(m, 1e-6).min_eigenvalue());
    if (opt.with_fd_oracle) {
      fd_res_max = std::max(fd_res_max, (cd_matrix_fd(params, p) - target).cwiseAbs().maxCoeff());
    }
  }
  report.pointwise_min_eigenvalue = min_eig_residual;
  report.residual_max = res_max;
  report.fd_residual_max = fd_res_max;
  report.cd_holds = min_eig_cd >= -1e-8;

  if (opt.with_integrated) {
    // f = lambda + mu tanh(alpha s) + nu w_1 / cosh(alpha s): strictly
    // positive, exact jet, exercises both the radial and angular blocks.
    const double lam = 1.2, mu = 0.3, nu = 0.25;
    const QuadGrid grid = QuadGrid::for_params(params, {8, 16, 16, 1.0, 1e-16});
    const Sphere& sphere = grid.sphere();
    const double n = params.n, alpha = params.alpha;
    const auto integrand = [&](double s, const Vec& theta) {
      const double phi = std::cosh(alpha * s);
      const double lp = alpha * std::tanh(alpha * s);
      const Vec w = sphere.embed(theta);
      const double w1 = w[0];
      const double b0 = lam + mu * std::tanh(alpha * s);
      const double b0p = mu * alpha * (1.0 - sq(std::tanh(alpha * s)));
      const double b0pp = -2.0 * sq(alpha) * std::tanh(alpha * s) *
                          (1.0 - sq(std::tanh(alpha * s))) * mu;
      const double c = nu / phi;
      const double cp = -nu * lp / phi;
      const double cpp = nu * sq(alpha) * (sq(phi) - 2.0) / (phi * sq(phi));
      const double f = b0 + c * w1;
      const double fs = b0p + cp * w1;
      const double fss = b0pp + cpp * w1;
      const double gt = sq(c) * (1.0 - sq(w1));
      const double gt_fs_f = cp * c * (1.0 - sq(w1));
      const double gt_fs = sq(cp) * (1.0 - sq(w1));
      const double lap = -(params.d - 1.0) * c * w1;
      const double hsh = sq(c) * sq(w1) * (params.d - 1.0);
      const double radial = fss + 2.0 * lp * fs - lap / (n - 1.0);
      const double q554 = (n - 1.0) / n * sq(radial) + hsh - sq(lap) / (n - 1.0) +
                          2.0 * (gt_fs + 2.0 * lp * gt_fs_f + sq(lp) * gt) +
                          gt * params.b_dgz;
      return sq(sq(phi)) * q554 * std::pow(f, 1.0 - n);
    };
    report.integrated_residual = grid.integrate(integrand, Measure::MuBar);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sphere Gamma_2 inequality
// ---------------------------------------------------------------------------

double sphere_gamma2_constant_printed(int d, double n) {
  return (n - 1.0) * (n * (4.0 * d - 5.0) + 3.0 * (4.0 * d + 7.0)) / (4.0 * sq(d + 1.0));
}

double sphere_gamma2_constant_derived(int d, double n) {
  const double q = 1.0 - n;
  const double m = d - 1.0;
  const double chi = 3.0 * q / (2.0 * (m + 2.0));
  return q * (q - 1.0) / (m - 1.0) - sq(chi) - 2.0 * chi * (q - 1.0) / (m - 1.0);
}

namespace {

/// Exact pointwise data of f = exp(P) on the unit sphere: value, Gamma, and
/// Gamma_2 via Bochner with the Hessian Hilbert-Schmidt norm closed over the
/// coordinate-function identities Gamma(w_i, w_j) = delta_ij - w_i w_j.
struct ExpHarmonicData {
  double f = 0.0, gamma = 0.0, gamma2 = 0.0;
};

ExpHarmonicData exp_harmonic_data(const AngularPoly& poly, const Vec& w, int d) {
  ExpHarmonicData out;
  const double pval = poly.value_at_unit(w);
  out.f = std::exp(pval);

  // ambient gradient coefficients of P and the term decomposition of its
  // sphere Hessian: HessP = a G + sum_ij B_ij grad(w_i) (.) grad(w_j)
  Vec grad(w.size(), 0.0);
  double a = 0.0;
  Eigen::MatrixXd bmat = Eigen::MatrixXd::Zero(d, d);
  for (const auto& t : poly.terms()) {
    if (t.i < 0) continue;
    if (t.j < 0) {
      grad[t.i] += t.coeff;
      a += -t.coeff * w[t.i];
    } else {
      grad[t.i] += t.coeff * w[t.j];
      grad[t.j] += t.coeff * w[t.i];
      a += -2.0 * t.coeff * w[t.i] * w[t.j];
      bmat(t.i, t.j) += t.coeff;
      bmat(t.j, t.i) += t.coeff;
    }
  }
  // C_ij = Gamma(w_i, w_j)
  Eigen::MatrixXd c(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) c(i, j) = (i == j ? 1.0 : 0.0) - w[i] * w[j];
  }
  Eigen::VectorXd gv(d);
  for (int i = 0; i < d; ++i) gv(i) = grad[i];

  const double gamma_p = gv.dot(c * gv);
  out.gamma = sq(out.f) * gamma_p;

  // Hess f = f (HessP + dP (x) dP) = f [ a G + M_ij grad(w_i)(.)grad(w_j) ],
  // M = B + grad gradT; HS norm via the Gram matrix of the generators.
  const Eigen::MatrixXd m = bmat + gv * gv.transpose();
  const Eigen::MatrixXd mc = m * c;
  const double hs =
      sq(out.f) * (a * a * (d - 1.0) + 2.0 * a * mc.trace() + (mc * mc).trace());
  out.gamma2 = (d - 2.0) * out.gamma + hs;
  return out;
}

SphereGamma2Sides assemble_sides(const CknParams& params, double lhs, double gamma_term,
                                 double quartic_term) {
  SphereGamma2Sides out;
  out.lhs = lhs;
  out.gamma_term = gamma_term;
  out.quartic_term = quartic_term;
  out.a_printed = sphere_gamma2_constant_printed(params.d, params.n);
  out.a_derived = sphere_gamma2_constant_derived(params.d, params.n);
  out.rhs_printed = (params.d - 1.0) * gamma_term + out.a_printed * quartic_term;
  out.rhs_derived = (params.d - 1.0) * gamma_term + out.a_derived * quartic_term;
  return out;
}

}  // namespace

SphereGamma2Sides sphere_gamma2_inequality(const CknParams& params, const AngularPoly& exponent,
                                           int polar_nodes, int azimuth_nodes) {
  if (!params.n_finite()) {
    throw DegenerateParams("sphere_gamma2_inequality: needs finite n");
  }
  const int d = params.d;
  const double n = params.n;
  Sphere sphere(d);
  std::vector<Vec> nodes;
  Vec weights;
  build_sphere_nodes(d, polar_nodes, azimuth_nodes, nodes, weights);

  Vec lhs_terms(nodes.size()), gam_terms(nodes.size()), quart_terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Vec w = sphere.embed(nodes[i]);
    const ExpHarmonicData data = exp_harmonic_data(exponent, w, d);
    const double dens = weights[i] * std::pow(data.f, 1.0 - n);
    lhs_terms[i] = dens * data.gamma2;
    gam_terms[i] = dens * data.gamma;
    quart_terms[i] = dens * sq(data.gamma) / sq(data.f);
  }
  return assemble_sides(params, pairwise_sum(lhs_terms), pairwise_sum(gam_terms),
                        pairwise_sum(quart_terms));
}

SphereGamma2Sides sphere_gamma2_inequality(const CknParams& params,
                                           const std::function<double(const Vec&)>& f_theta,
                                           int polar_nodes, int azimuth_nodes) {
  if (!params.n_finite()) {
    throw DegenerateParams("sphere_gamma2_inequality: needs finite n");
  }
  const int d = params.d;
  const double n = params.n;
  const Sphere sphere(d);
  std::vector<Vec> nodes;
  Vec weights;
  build_sphere_nodes(d, polar_nodes, azimuth_nodes, nodes, weights);

  Vec lhs_terms(nodes.size()), gam_terms(nodes.size()), quart_terms(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t i) {
    const Vec& theta = nodes[i];
    const double f = f_theta(theta);
    if (!(f > 0.0)) {
      lhs_terms[i] = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    // angular-only jet at fixed dummy s
    CylPoint p{0.0, theta};
    const CylFn lift = [&](const CylPoint& q) { return f_theta(q.theta); };
    const CylJet jet = fd_cyl_jet(lift, sphere, p, 1e-2, 1e-2);
    const double gamma2_theta = (d - 2.0) * jet.gamma_theta + jet.hess_theta_hs;
    const double dens = weights[i] * std::pow(f, 1.0 - n);
    lhs_terms[i] = dens * gamma2_theta;
    gam_terms[i] = dens * jet.gamma_theta;
    quart_terms[i] = dens * sq(jet.gamma_theta) / sq(f);
  });
  for (double v : lhs_terms) {
    if (std::isnan(v)) throw PositivityError("sphere_gamma2_inequality: min f <= 0");
  }
  return assemble_sides(params, pairwise_sum(lhs_terms), pairwise_sum(gam_terms),
                        pairwise_sum(quart_terms));
}

}  // namespace ckn
