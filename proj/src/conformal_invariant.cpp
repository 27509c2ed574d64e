#include "ckn/conformal_invariant.hpp"

#include <cmath>
#include <memory>

namespace ckn {

InvariantCoeffs invariant_coeffs(double gamma, double n, int d) {
  if (!(n > d)) throw DegenerateParams("invariant_coeffs: requires n > d");
  const double pole = 4.0 * (d - 1.0) - 2.0 * gamma * (n - d);
  if (std::abs(pole) < 1e-12) throw PoleError("invariant_coeffs: theta pole 4(d-1) = 2 gamma (n-d)");
  InvariantCoeffs c;
  c.gamma = gamma;
  c.n = n;
  c.d = d;
  c.beta = (gamma * (n - 2.0 * d + 2.0) - 2.0 * (d - 1.0)) / (2.0 * (n - d));
  c.theta = (n - 2.0) / pole;
  // defining system, re-evaluated
  c.residuals[0] = c.theta * (2.0 * (d - 1.0) - gamma * (n - d)) - 0.5 * (n - 2.0);
  c.residuals[1] = c.theta * (c.beta * sq(n - d) - (d - 1.0) * (d - 2.0) +
                              gamma * (d - 2.0) * (n - d)) +
                   0.25 * sq(n - 2.0);
  c.residuals[2] = c.theta * (gamma * (d - 2.0) + 2.0 * c.beta * (n - d)) + 0.5 * (n - 2.0);
  return c;
}

WeightedSpace as_weighted_space(const ModelSpace& space) {
  WeightedSpace w;
  w.d = space.dim();
  w.n = space.params().n;
  auto copy = std::make_shared<ModelSpace>(space);
  w.metric_lower = [copy](const Vec& x) { return copy->metric_lower(x); };
  w.weight = [copy](const Vec& x) { return copy->weight(x); };
  return w;
}

double s_gamma(const WeightedSpace& space, double gamma, const Vec& p) {
  const InvariantCoeffs c = invariant_coeffs(gamma, space.n, space.d);
  const double sc = fd_scalar_curvature(space.metric_lower, p);
  const double lap_w = fd_laplace_beltrami(space.metric_lower, space.weight, p);
  const double gam_w = fd_gamma_pair(space.metric_lower, space.weight, space.weight, p);
  return c.theta * (sc - gamma * lap_w + c.beta * gam_w);
}

double s_gamma(const ModelSpace& space, double gamma, const Vec& p) {
  space.require_domain(p);
  return s_gamma(as_weighted_space(space), gamma, p);
}

namespace {

WeightedSpace transformed(const WeightedSpace& space, const ScalarFn& tau) {
  WeightedSpace t;
  t.d = space.d;
  t.n = space.n;
  const MetricFn base_metric = space.metric_lower;
  const ScalarFn base_weight = space.weight;
  const double nd = space.n - space.d;
  t.metric_lower = [base_metric, tau](const Vec& x) -> Eigen::MatrixXd {
    return base_metric(x) * std::exp(-2.0 * tau(x));
  };
  t.weight = [base_weight, tau, nd](const Vec& x) { return base_weight(x) + nd * tau(x); };
  return t;
}

double generator_of(const WeightedSpace& space, const ScalarFn& f, const Vec& p) {
  return fd_laplace_beltrami(space.metric_lower, f, p) -
         fd_gamma_pair(space.metric_lower, space.weight, f, p);
}

}  // namespace

double transformation_law_residual(const WeightedSpace& space, double gamma,
                                   const ScalarFn& tau, const Vec& p) {
  const double n = space.n;
  const double lhs = s_gamma(transformed(space, tau), gamma, p);
  const double s_base = s_gamma(space, gamma, p);
  const double l_tau = generator_of(space, tau, p);
  const double gam_tau = fd_gamma_pair(space.metric_lower, tau, tau, p);
  const double c2 = std::exp(2.0 * tau(p));
  const double rhs = c2 * (s_base + 0.5 * (n - 2.0) * (l_tau - 0.5 * (n - 2.0) * gam_tau));
  return std::abs(lhs - rhs);
}

double yamabe_residual(const WeightedSpace& space, double gamma, const ScalarFn& tau,
                       const Vec& p) {
  const double n = space.n;
  const ScalarFn u = [tau, n](const Vec& x) { return std::exp(-0.5 * (n - 2.0) * tau(x)); };
  const double lu = generator_of(space, u, p);
  const double s_base = s_gamma(space, gamma, p);
  const double s_tilde = s_gamma(transformed(space, tau), gamma, p);
  const double uval = u(p);
  return std::abs(-lu + s_base * uval - s_tilde * std::pow(uval, (n + 2.0) / (n - 2.0)));
}

}  // namespace ckn
