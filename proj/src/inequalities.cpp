#include "ckn/inequalities.hpp"

#include <cmath>

namespace ckn {

namespace {

struct GradData {
  double v = 0.0, ds = 0.0, gamma_theta = 0.0;
};

GradData eval_grad(const CylField& f, const Sphere& sphere, const CylPoint& p) {
  GradData g;
  if (f.bundle) {
    f.bundle(p, g.v, g.ds, g.gamma_theta);
    return g;
  }
  g.v = f.value(p);
  if (f.has_analytic_grad()) {
    g.ds = f.ds(p);
    g.gamma_theta = f.gamma_theta(p);
    return g;
  }
  CylPoint q = p;
  g.ds = fd_d1(
      [&](double t) {
        q.s = p.s + t;
        return f.value(q);
      },
      2e-2);
  q.s = p.s;
  const Vec gd = sphere.metric_diag(p.theta);
  double acc = 0.0;
  for (std::size_t a = 0; a < p.theta.size(); ++a) {
    const double da = fd_d1(
        [&](double t) {
          CylPoint r = p;
          r.theta[a] += t;
          return f.value(r);
        },
        2e-2);
    acc += da * da / gd[a];
  }
  g.gamma_theta = acc;
  return g;
}

DeficitReport::Verdict verdict_of(double deficit, double tol) {
  if (deficit < -tol) return DeficitReport::Verdict::Violated;
  if (deficit > tol) return DeficitReport::Verdict::Strict;
  return DeficitReport::Verdict::Equality;
}

double rel_gap(double x, double y) {
  return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

const char* to_string(DeficitReport::Verdict v) {
  switch (v) {
    case DeficitReport::Verdict::Equality: return "equality";
    case DeficitReport::Verdict::Strict: return "strict";
    case DeficitReport::Verdict::Violated: return "violated";
  }
  return "?";
}

DeficitReport sobolev_deficit(const CylField& v, const CknParams& params,
                              const QuadGrid& grid, double tolerance) {
  if (!params.z.has_value()) throw MissingZ("sobolev_deficit: Z not populated");
  const Sphere& sphere = grid.sphere();
  const double n = params.n, p_exp = params.p, alpha = params.alpha;
  const Vec ints = grid.integrate_multi(
      3,
      [&](double s, const Vec& theta, std::span<double> out) {
        const CylPoint pt{s, theta};
        const GradData g = eval_grad(v, sphere, pt);
        const double phi2 = sq(std::cosh(alpha * s));
        out[0] = std::pow(g.v, p_exp);
        out[1] = sq(g.v);
        out[2] = phi2 * (sq(g.ds) + g.gamma_theta);
      },
      Measure::MuBar);
  const double z = *params.z;
  DeficitReport rep;
  rep.lhs = std::pow(ints[0] / z, 2.0 / p_exp);
  rep.rhs = 4.0 / (n * (n - 2.0) * sq(alpha)) * ints[2] / z + ints[1] / z;
  rep.deficit = rep.rhs - rep.lhs;
  rep.tolerance = tolerance;
  rep.verdict = verdict_of(rep.deficit, tolerance);
  return rep;
}

DeficitReport poincare_deficit(const CylField& f, const CknParams& params,
                               const QuadGrid& grid, double tolerance) {
  if (!params.z.has_value()) throw MissingZ("poincare_deficit: Z not populated");
  const Sphere& sphere = grid.sphere();
  const double n = params.n, alpha = params.alpha;
  const Vec ints = grid.integrate_multi(
      3,
      [&](double s, const Vec& theta, std::span<double> out) {
        const CylPoint pt{s, theta};
        const GradData g = eval_grad(f, sphere, pt);
        const double phi2 = sq(std::cosh(alpha * s));
        out[0] = g.v;
        out[1] = sq(g.v);
        out[2] = phi2 * (sq(g.ds) + g.gamma_theta);
      },
      Measure::MuBar);
  const double z = *params.z;
  DeficitReport rep;
  rep.lhs = ints[1] / z - sq(ints[0] / z);
  rep.rhs = ints[2] / z / (n * sq(alpha));
  rep.deficit = rep.rhs - rep.lhs;
  rep.tolerance = tolerance;
  rep.verdict = verdict_of(rep.deficit, tolerance);
  return rep;
}

CylField make_extremal(const ExtremalSpec& spec, const CknParams& params) {
  const double lam = spec.lambda, mu = spec.mu, nu = spec.nu;
  const double alpha = params.alpha, n = params.n;
  const int d = params.d;
  using Mode = ExtremalSpec::Mode;

  if (spec.mode == Mode::SobolevRadial || spec.mode == Mode::Poincare) {
    if (nu != 0.0) throw SpecError("make_extremal: nu only enters the boundary Poincare mode");
  }
  if (spec.mode == Mode::SobolevRadial || spec.mode == Mode::SobolevRoundSphere) {
    if (!(lam > std::abs(mu))) throw SpecError("make_extremal: need lambda > |mu|");
  }
  if (spec.mode == Mode::PoincareBoundary && nu != 0.0) {
    if (std::abs(sq(alpha) * (n - 1.0) - (d - 1.0)) > 1e-10) {
      throw SpecError("make_extremal: boundary mode requires alpha^2 (n-1) = d-1");
    }
  }
  if (spec.mode == Mode::SobolevRoundSphere) {
    if (std::abs(alpha - 1.0) > 1e-12 || std::abs(n - d) > 1e-12) {
      throw SpecError("make_extremal: round-sphere mode requires alpha = 1, n = d");
    }
  }

  CylField f;
  switch (spec.mode) {
    case Mode::SobolevRadial: {
      const double expo = -(n - 2.0) / 2.0;
      f.value = [=](const CylPoint& p) {
        return std::pow(lam + mu * std::tanh(alpha * p.s), expo);
      };
      f.ds = [=](const CylPoint& p) {
        const double t = std::tanh(alpha * p.s);
        return expo * std::pow(lam + mu * t, expo - 1.0) * mu * alpha * (1.0 - t * t);
      };
      f.gamma_theta = [](const CylPoint&) { return 0.0; };
      break;
    }
    case Mode::Poincare: {
      f.value = [=](const CylPoint& p) { return lam + mu * std::tanh(alpha * p.s); };
      f.ds = [=](const CylPoint& p) {
        return mu * alpha * (1.0 - sq(std::tanh(alpha * p.s)));
      };
      f.gamma_theta = [](const CylPoint&) { return 0.0; };
      break;
    }
    case Mode::PoincareBoundary: {
      auto sphere = std::make_shared<Sphere>(d);
      f.value = [=](const CylPoint& p) {
        const double w1 = sphere->embed(p.theta)[0];
        return lam + mu * std::tanh(alpha * p.s) + nu * w1 / std::cosh(alpha * p.s);
      };
      f.ds = [=](const CylPoint& p) {
        const double w1 = sphere->embed(p.theta)[0];
        const double t = std::tanh(alpha * p.s);
        return mu * alpha * (1.0 - t * t) -
               nu * w1 * alpha * t / std::cosh(alpha * p.s);
      };
      f.gamma_theta = [=](const CylPoint& p) {
        const double w1 = sphere->embed(p.theta)[0];
        return sq(nu / std::cosh(alpha * p.s)) * (1.0 - w1 * w1);
      };
      break;
    }
    case Mode::SobolevRoundSphere: {
      // phi_2 = c1 tanh(s) + c2 w_1 sech(s): a first eigenfunction of the
      // round sphere written in the cylinder chart; |phi_2| <= 1
      const double c1 = 0.6, c2 = 0.8;
      const double expo = -(d - 2.0) / 2.0;
      auto sphere = std::make_shared<Sphere>(d);
      const auto bundle = [=](const CylPoint& p, double& v, double& ds, double& gth) {
        const double w1 = sphere->embed(p.theta)[0];
        const double t = std::tanh(p.s);
        const double sech = 1.0 / std::cosh(p.s);
        const double phi2 = c1 * t + c2 * w1 * sech;
        const double dphi2 = c1 * sq(sech) - c2 * w1 * sech * t;
        const double base = lam + mu * phi2;
        v = std::pow(base, expo);
        const double outer = expo * std::pow(base, expo - 1.0) * mu;
        ds = outer * dphi2;
        gth = sq(outer * c2 * sech) * (1.0 - sq(w1));
      };
      f.bundle = bundle;
      f.value = [bundle](const CylPoint& p) {
        double v, ds, gth;
        bundle(p, v, ds, gth);
        return v;
      };
      f.ds = [bundle](const CylPoint& p) {
        double v, ds, gth;
        bundle(p, v, ds, gth);
        return ds;
      };
      f.gamma_theta = [bundle](const CylPoint& p) {
        double v, ds, gth;
        bundle(p, v, ds, gth);
        return gth;
      };
      break;
    }
  }
  return f;
}

double pointwise_identity_residual(double lambda, double mu, const CknParams& params,
                                   const CylPoint& p) {
  const double alpha = params.alpha, n = params.n;
  const CylFn f = [=](const CylPoint& q) { return lambda + mu * std::tanh(alpha * q.s); };
  const double t = std::tanh(alpha * p.s);
  const double fval = lambda + mu * t;
  const double lf = generator_cyl(params, f, p);
  const double gamma = sq(mu) * sq(alpha) * (1.0 - t * t);  // phi^2 (d_s f)^2, exact
  return std::abs(fval * lf - 0.5 * n * gamma - 0.5 * n * sq(alpha) * (1.0 - sq(fval)));
}

double euler_lagrange_residual(double lambda, double mu, const CknParams& params,
                               const CylPoint& p) {
  if (!(lambda > std::abs(mu))) throw SpecError("euler_lagrange_residual: lambda > |mu|");
  const double alpha = params.alpha, n = params.n, p_exp = params.p;
  const double expo = -(n - 2.0) / 2.0;
  const CylFn v = [=](const CylPoint& q) {
    return std::pow(lambda + mu * std::tanh(alpha * q.s), expo);
  };
  const double lv = generator_cyl(params, v, p);
  const double vval = v(p);
  return std::abs(-4.0 / (n * (n - 2.0) * sq(alpha)) * lv + vval -
                  std::pow(vval, p_exp - 1.0));
}

DeficitReport symmetry_breaking_witness(const CknParams& params, const QuadGrid& grid,
                                        double tolerance) {
  if (!(params.n > params.d) || !(params.alpha > 0.0)) {
    throw DegenerateParams("symmetry_breaking_witness: needs n > d and alpha > 0");
  }
  const double alpha = params.alpha;
  auto sphere = std::make_shared<Sphere>(params.d);
  CylField g;
  g.value = [=](const CylPoint& p) {
    return sphere->embed(p.theta)[0] / std::cosh(alpha * p.s);
  };
  g.ds = [=](const CylPoint& p) {
    const double w1 = sphere->embed(p.theta)[0];
    return -w1 * alpha * std::tanh(alpha * p.s) / std::cosh(alpha * p.s);
  };
  g.gamma_theta = [=](const CylPoint& p) {
    const double w1 = sphere->embed(p.theta)[0];
    return (1.0 - w1 * w1) / sq(std::cosh(alpha * p.s));
  };
  return poincare_deficit(g, params, grid, tolerance);
}

TransferReport conformal_transfer_check(const CylField& v, const CknParams& params,
                                        double s_span) {
  if (!v.has_analytic_grad()) {
    throw SpecError("conformal_transfer_check: field must carry analytic derivatives");
  }
  const double n = params.n, alpha = params.alpha, p_exp = params.p;
  GridOptions opt;
  opt.polar_nodes = 12;
  opt.azimuth_nodes = 24;
  const QuadGrid grid = QuadGrid::over_interval(params, -s_span, s_span, opt);
  const Sphere& sphere = grid.sphere();

  const Vec ints = grid.integrate_multi(
      5,
      [&](double s, const Vec& theta, std::span<double> out) {
        const CylPoint pt{s, theta};
        const GradData g = eval_grad(v, sphere, pt);
        const double phic = 0.5 * (1.0 + std::exp(2.0 * alpha * s));  // (1+r^{2a})/2
        const double dphic = alpha * std::exp(2.0 * alpha * s);
        const double w = std::pow(phic, 0.5 * (2.0 - n));
        const double dw = 0.5 * (2.0 - n) * std::pow(phic, 0.5 * (2.0 - n) - 1.0) * dphic;
        const double fval = w * g.v;
        const double fs = dw * g.v + w * g.ds;
        const double mue = std::exp(n * alpha * s);  // Euclidean measure density
        out[0] = std::exp(-2.0 * alpha * s) * (sq(fs) + sq(w) * g.gamma_theta) * mue;
        out[1] = std::pow(std::abs(fval), p_exp) * mue;
        const double phi = std::cosh(alpha * s);
        const double mus = std::pow(phi, -n);
        out[2] = sq(phi) * (sq(g.ds) + g.gamma_theta) * mus;
        out[3] = sq(g.v) * mus;
        out[4] = std::pow(std::abs(g.v), p_exp) * mus;
      },
      Measure::Lebesgue);

  TransferReport rep;
  rep.energy_euclidean = ints[0];
  rep.energy_spherical = ints[2] + 0.25 * n * (n - 2.0) * sq(alpha) * ints[3];
  rep.norm_euclidean = ints[1];
  rep.norm_spherical = ints[4];
  rep.mismatch = std::max(rel_gap(rep.energy_euclidean, rep.energy_spherical),
                          rel_gap(rep.norm_euclidean, rep.norm_spherical));
  return rep;
}

double transfer_identity_residual_spherical(const CknParams& params, const Vec& x) {
  const ModelSpace space = make_space(ModelKind::EuclideanCKN, params);
  const double alpha = params.alpha, n = params.n;
  const ScalarFn logphi = [=](const Vec& y) {
    double r2 = 0.0;
    for (double yi : y) r2 += yi * yi;
    return std::log(0.5 * (1.0 + std::pow(r2, alpha)));
  };
  const double lv = generator(space, logphi, x);
  const double gv = carre_du_champ(space, logphi, logphi, x);
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double phic = 0.5 * (1.0 + std::pow(r2, alpha));
  return std::abs(lv - 0.5 * (n - 2.0) * gv - 0.5 * n * sq(alpha) / sq(phic));
}

double transfer_identity_residual_hyperbolic(const CknParams& params, const Vec& x) {
  const ModelSpace space = make_space(ModelKind::EuclideanCKN, params);
  const double alpha = params.alpha, n = params.n;
  const ScalarFn logpsi = [=](const Vec& y) {
    double r2 = 0.0;
    for (double yi : y) r2 += yi * yi;
    return std::log(0.5 * (1.0 - std::pow(r2, alpha)));
  };
  const double lv = generator(space, logpsi, x);
  const double gv = carre_du_champ(space, logpsi, logpsi, x);
  double r2 = 0.0;
  for (double xi : x) r2 += xi * xi;
  const double psic = 0.5 * (1.0 - std::pow(r2, alpha));
  return std::abs(lv - 0.5 * (n - 2.0) * gv + 0.5 * n * sq(alpha) / sq(psic));
}

DeficitReport hyperbolic_validity_deficit(const CylField& v, const CknParams& params,
                                          double s_lo, double s_hi, double tolerance) {
  if (!(s_hi < 0.0)) throw DomainError("hyperbolic_validity_deficit: support must lie in s < 0");
  if (!params.z.has_value()) throw MissingZ("hyperbolic_validity_deficit: Z not populated");
  const double n = params.n, alpha = params.alpha, p_exp = params.p;
  GridOptions opt;
  opt.polar_nodes = 12;
  opt.azimuth_nodes = 24;
  const QuadGrid grid = QuadGrid::over_interval(params, s_lo, s_hi, opt);
  const Sphere& sphere = grid.sphere();
  const auto density = [&](double s) { return std::pow(std::sinh(-alpha * s), -n); };
  const Vec ints = grid.integrate_multi(
      3,
      [&](double s, const Vec& theta, std::span<double> out) {
        const CylPoint pt{s, theta};
        const GradData g = eval_grad(v, sphere, pt);
        const double c2 = sq(std::sinh(-alpha * s));
        out[0] = c2 * (sq(g.ds) + g.gamma_theta);
        out[1] = sq(g.v);
        out[2] = std::pow(std::abs(g.v), p_exp);
      },
      Measure::Custom, density);

  const double c_opt =
      4.0 / (n * (n - 2.0) * sq(alpha) * std::pow(*params.z, 2.0 / n));
  DeficitReport rep;
  rep.lhs = std::pow(ints[2], 2.0 / p_exp);
  rep.rhs = c_opt * (ints[0] - 0.25 * n * (n - 2.0) * sq(alpha) * ints[1]);
  rep.deficit = rep.rhs - rep.lhs;
  rep.tolerance = tolerance;
  rep.verdict = verdict_of(rep.deficit, tolerance);
  return rep;
}

}  // namespace ckn
