#include "ckn/quadrature.hpp"

#include <cmath>
#include <numeric>

namespace ckn {

void gauss_legendre(int n, Vec& nodes, Vec& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, then Newton on P_n; the derivative used for
    // the weight is re-evaluated at the converged node.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      if (converged) break;
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) converged = true;  // one more pass updates pp
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

void polar_rule(int k, int n, Vec& theta, Vec& weights) {
  theta.assign(n, 0.0);
  weights.assign(n, 0.0);
  if (k % 2 == 1) {
    // int f(arccos x) (1-x^2)^{(k-1)/2} dx with a polynomial weight: plain
    // Gauss-Legendre, weight folded into the node weights.
    Vec x, w;
    gauss_legendre(n, x, w);
    for (int i = 0; i < n; ++i) {
      theta[i] = std::acos(x[n - 1 - i]);  // increasing theta
      weights[i] = w[n - 1 - i] * std::pow(1.0 - sq(x[n - 1 - i]), 0.5 * (k - 1));
    }
  } else {
    // even k: Gauss-Chebyshev of the second kind handles sqrt(1-x^2);
    // the remaining (1-x^2)^{(k-2)/2} factor is polynomial.
    for (int i = 0; i < n; ++i) {
      const double t = (i + 1.0) * kPi / (n + 1.0);
      theta[i] = t;
      const double s2 = sq(std::sin(t));
      weights[i] = kPi / (n + 1.0) * s2 * std::pow(s2, 0.5 * (k - 2));
    }
  }
}

double sphere_area(int d) {
  if (d < 1) throw DegenerateParams("sphere_area: d >= 1");
  return Sphere::area(d);
}

// ---------------------------------------------------------------------------
// QuadGrid
// ---------------------------------------------------------------------------

QuadGrid::QuadGrid(CknParams params, GridOptions opt)
    : params_(std::move(params)), opt_(opt), sphere_(params_.d) {}

QuadGrid QuadGrid::for_params(const CknParams& params, const GridOptions& opt) {
  if (!params.n_finite() || !(params.alpha > 0.0)) {
    throw DegenerateParams("QuadGrid: needs finite n and alpha > 0");
  }
  QuadGrid grid(params, opt);
  // cosh(alpha S)^{-(n-2)} < tail_tol  (n - 2 >= 1 on Theta with d >= 3)
  const double nm2 = std::max(params.n - 2.0, 1.0);
  const double target = std::pow(opt.tail_tol, -1.0 / nm2);
  const double smax = std::acosh(std::max(target, 2.0)) / params.alpha + 1.0 / params.alpha;
  grid.build_s(-smax, smax);
  grid.build_angular();
  return grid;
}

QuadGrid QuadGrid::over_interval(const CknParams& params, double s_lo, double s_hi,
                                 const GridOptions& opt) {
  if (!(s_lo < s_hi)) throw DegenerateParams("QuadGrid: empty s-interval");
  QuadGrid grid(params, opt);
  grid.build_s(s_lo, s_hi);
  grid.build_angular();
  return grid;
}

QuadGrid QuadGrid::refined() const {
  GridOptions opt = opt_;
  opt.polar_nodes *= 2;
  opt.azimuth_nodes *= 2;
  opt.panels_per_unit *= 2.0;
  QuadGrid grid(params_, opt);
  grid.build_s(s_lo_, s_hi_);
  grid.build_angular();
  return grid;
}

void QuadGrid::build_s(double s_lo, double s_hi) {
  s_lo_ = s_lo;
  s_hi_ = s_hi;
  const double alpha = params_.alpha > 0.0 ? params_.alpha : 1.0;
  const double width = 1.0 / (alpha * opt_.panels_per_unit);
  const int panels = std::max(1, static_cast<int>(std::ceil((s_hi - s_lo) / width)));
  Vec x, w;
  gauss_legendre(opt_.panel_nodes, x, w);
  s_nodes_.reserve(static_cast<std::size_t>(panels) * opt_.panel_nodes);
  s_weights_.reserve(s_nodes_.capacity());
  for (int pnl = 0; pnl < panels; ++pnl) {
    const double a = s_lo + (s_hi - s_lo) * pnl / panels;
    const double b = s_lo + (s_hi - s_lo) * (pnl + 1) / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < opt_.panel_nodes; ++i) {
      s_nodes_.push_back(mid + half * x[i]);
      s_weights_.push_back(half * w[i]);
    }
  }
  resolution_ = "s:" + std::to_string(panels) + "x" + std::to_string(opt_.panel_nodes) +
                ",polar:" + std::to_string(opt_.polar_nodes) +
                ",azimuth:" + std::to_string(opt_.azimuth_nodes);
}

void build_sphere_nodes(int d, int polar_nodes, int azimuth_nodes, std::vector<Vec>& out_nodes,
                        Vec& out_weights) {
  const int n_polar = d - 2;
  std::vector<Vec> nodes(n_polar), weights(n_polar);
  for (int a = 0; a < n_polar; ++a) {
    polar_rule(d - 2 - a, polar_nodes, nodes[a], weights[a]);
  }
  std::size_t total = static_cast<std::size_t>(azimuth_nodes);
  for (int a = 0; a < n_polar; ++a) total *= nodes[a].size();
  out_nodes.clear();
  out_weights.clear();
  out_nodes.reserve(total);
  out_weights.reserve(total);

  Vec theta(static_cast<std::size_t>(d - 1), 0.0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double wt = 1.0;
    for (int a = 0; a < n_polar; ++a) {
      const std::size_t m = nodes[a].size();
      const std::size_t i = rem % m;
      rem /= m;
      theta[a] = nodes[a][i];
      wt *= weights[a][i];
    }
    theta[d - 2] = 2.0 * kPi * static_cast<double>(rem) / azimuth_nodes;
    wt *= 2.0 * kPi / azimuth_nodes;
    out_nodes.push_back(theta);
    out_weights.push_back(wt);
  }
}

void QuadGrid::build_angular() {
  build_sphere_nodes(params_.d, opt_.polar_nodes, opt_.azimuth_nodes, theta_nodes_,
                     theta_weights_);
}

double QuadGrid::density_at(double s, Measure m,
                            const std::function<double(double)>& density) const {
  switch (m) {
    case Measure::MuBar: return std::pow(std::cosh(params_.alpha * s), -params_.n);
    case Measure::Volume: return std::pow(std::cosh(params_.alpha * s), -double(params_.d));
    case Measure::Lebesgue: return 1.0;
    case Measure::Custom: return density(s);
  }
  return 0.0;
}

double QuadGrid::integrate(const std::function<double(double, const Vec&)>& f,
                           Measure measure,
                           const std::function<double(double)>& density) const {
  const Vec out = integrate_multi(
      1,
      [&](double s, const Vec& th, std::span<double> v) { v[0] = f(s, th); },
      measure, density);
  return out[0];
}

Vec QuadGrid::integrate_multi(
    int k, const std::function<void(double, const Vec&, std::span<double>)>& f,
    Measure measure, const std::function<double(double)>& density) const {
  const std::size_t ns = s_nodes_.size();
  const std::size_t na = theta_weights_.size();
  // per-s-slice partial sums, computed independently (parallel-safe) and
  // reduced with a fixed pairwise tree
  std::vector<Vec> slice(ns, Vec(static_cast<std::size_t>(k), 0.0));
  std::vector<char> bad(ns, 0);

  parallel_for(ns, [&](std::size_t is) {
    const double s = s_nodes_[is];
    const double dens = s_weights_[is] * density_at(s, measure, density);
    Vec vals(static_cast<std::size_t>(k), 0.0);
    Vec acc(static_cast<std::size_t>(k), 0.0);
    for (std::size_t ia = 0; ia < na; ++ia) {
      f(s, theta_nodes_[ia], vals);
      const double w = theta_weights_[ia] * dens;
      for (int c = 0; c < k; ++c) {
        const double term = w * vals[static_cast<std::size_t>(c)];
        if (!std::isfinite(term)) {
          bad[is] = 1;
          return;
        }
        acc[static_cast<std::size_t>(c)] += term;
      }
    }
    slice[is] = acc;
  });

  for (std::size_t is = 0; is < ns; ++is) {
    if (bad[is]) throw NonFinite("integrate: non-finite node evaluation");
  }

  Vec result(static_cast<std::size_t>(k), 0.0);
  Vec column(ns, 0.0);
  for (int c = 0; c < k; ++c) {
    for (std::size_t is = 0; is < ns; ++is) column[is] = slice[is][static_cast<std::size_t>(c)];
    result[static_cast<std::size_t>(c)] = pairwise_sum(column);
  }
  return result;
}

double QuadGrid::integrate_sphere(const std::function<double(const Vec&)>& f) const {
  Vec terms(theta_weights_.size(), 0.0);
  for (std::size_t ia = 0; ia < theta_weights_.size(); ++ia) {
    terms[ia] = theta_weights_[ia] * f(theta_nodes_[ia]);
    if (!std::isfinite(terms[ia])) throw NonFinite("integrate_sphere: non-finite node");
  }
  return pairwise_sum(terms);
}

QuadGrid build_grid(const CknParams& params, double tail_tol) {
  GridOptions opt;
  opt.tail_tol = tail_tol;
  return QuadGrid::for_params(params, opt);
}

// ---------------------------------------------------------------------------
// 1-d normalization integrals
// ---------------------------------------------------------------------------

namespace {

/// Panel Gauss-Legendre of f over [lo, hi], fixed 32-node panels.
double panel_integral(const std::function<double(double)>& f, double lo, double hi,
                      int panels) {
  Vec x, w;
  gauss_legendre(32, x, w);
  Vec sums(static_cast<std::size_t>(panels), 0.0);
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels;
    const double b = lo + (hi - lo) * (p + 1) / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 32; ++i) s += half * w[i] * f(mid + half * x[i]);
    sums[static_cast<std::size_t>(p)] = s;
  }
  return pairwise_sum(sums);
}

}  // namespace

double cosh_power_integral(double alpha, double n) {
  if (!(alpha > 0.0) || !(n > 1.0)) {
    throw DegenerateParams("cosh_power_integral: needs alpha > 0, n > 1");
  }
  const double tmax = (std::log(2.0) + 40.0 * std::log(10.0) / n) / alpha + 2.0 / alpha;
  const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * tmax * alpha)));
  return panel_integral([&](double t) { return std::pow(std::cosh(alpha * t), -n); },
                        -tmax, tmax, panels);
}

double normalization_z(const CknParams& params) {
  if (!params.n_finite() || !(params.alpha > 0.0) || !(params.n > 1.0)) {
    throw DegenerateParams("normalization_z: needs alpha > 0 and finite n > 1");
  }
  return sphere_area(params.d) * cosh_power_integral(params.alpha, params.n);
}

double normalization_z_onesided(const CknParams& params) {
  if (!params.n_finite() || !(params.alpha > 0.0) || !(params.n > 1.0)) {
    throw DegenerateParams("normalization_z_onesided: needs alpha > 0 and finite n > 1");
  }
  const double half = 0.5 * cosh_power_integral(1.0, params.n);  // int_0^inf cosh^{-n}
  return 2.0 / params.alpha * sphere_area(params.d) * half;
}

double normalization_z_cartesian(const CknParams& params) {
  if (!params.n_finite() || !(params.alpha > 0.0)) {
    throw DegenerateParams("normalization_z_cartesian: needs alpha > 0 and finite n");
  }
  const double expo = params.d - 1.0 - params.b * params.p;  // = n alpha - 1
  const double na = params.n * params.alpha;
  const auto integrand = [&](double r) {
    return std::pow(2.0, params.n) * std::pow(r, expo) *
           std::pow(1.0 + std::pow(r, 2.0 * params.alpha), -params.n);
  };
  // geometric panels: the integrand decays like r^{+-(n alpha)-1} at both ends
  const double decades = 40.0 / na + 1.0;
  const double r_lo = std::pow(10.0, -decades), r_hi = std::pow(10.0, decades);
  double total = 0.0;
  double lo = r_lo;
  std::vector<double> parts;
  while (lo < r_hi) {
    const double hi = std::min(lo * 2.0, r_hi);
    parts.push_back(panel_integral(integrand, lo, hi, 1));
    lo = hi;
  }
  total = pairwise_sum(parts);
  return sphere_area(params.d) * total;
}

CknParams attach_z(const CknParams& params) { return with_z(params, normalization_z(params)); }

}  // namespace ckn
