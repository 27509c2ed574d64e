#include "ckn/chart.hpp"

#include <cmath>

namespace ckn {

namespace {

double norm(const Vec& x) {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return std::sqrt(s);
}

}  // namespace

const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::EuclideanCKN: return "euclidean";
    case ModelKind::SphericalCKN: return "spherical";
    case ModelKind::HyperbolicCKN: return "hyperbolic";
  }
  return "?";
}

ModelSpace::ModelSpace(ModelKind kind, CknParams params)
    : kind_(kind), params_(std::move(params)) {
  weight_exp_ = params_.d - params_.p * params_.b - params_.d * params_.alpha;
  if (kind_ != ModelKind::EuclideanCKN) {
    if (!(params_.alpha > 0.0) || !params_.n_finite()) {
      throw DegenerateParams("ModelSpace: spherical/hyperbolic models need alpha > 0 and finite n");
    }
  }
}

ModelSpace make_space(ModelKind kind, const CknParams& params) {
  return ModelSpace(kind, params);
}

bool ModelSpace::in_domain(const Vec& x, double margin) const {
  const double r = norm(x);
  if (!(r > margin)) return false;
  if (kind_ == ModelKind::HyperbolicCKN && !(r < 1.0 - margin)) return false;
  return true;
}

void ModelSpace::require_domain(const Vec& x) const {
  if (!in_domain(x)) {
    throw DomainError("ModelSpace: point outside the punctured domain");
  }
}

double ModelSpace::conformal_factor(const Vec& x) const {
  require_domain(x);
  const double r = norm(x);
  switch (kind_) {
    case ModelKind::EuclideanCKN: return 1.0;
    case ModelKind::SphericalCKN: return 0.5 * (1.0 + std::pow(r, 2.0 * params_.alpha));
    case ModelKind::HyperbolicCKN: return 0.5 * (1.0 - std::pow(r, 2.0 * params_.alpha));
  }
  return 0.0;
}

double ModelSpace::weight(const Vec& x) const {
  require_domain(x);
  const double r = norm(x);
  if (kind_ == ModelKind::EuclideanCKN) {
    return -weight_exp_ * std::log(r);
  }
  // (n - d) log( c(x) / r^alpha ); the r^alpha normalization makes the
  // measure = e^{-W} * volume identity exact.
  const double nd = params_.n - params_.d;
  const double as = params_.alpha * std::log(r);
  if (kind_ == ModelKind::SphericalCKN) {
    return nd * std::log(std::cosh(as));
  }
  return nd * std::log(std::sinh(-as));  // positive: r < 1
}

double ModelSpace::measure_density(const Vec& x) const {
  require_domain(x);
  const double r = norm(x);
  const double base = std::pow(r, -params_.b * params_.p);
  if (kind_ == ModelKind::EuclideanCKN) return base;
  return base * std::pow(conformal_factor(x), -params_.n);
}

double ModelSpace::volume_density(const Vec& x) const {
  require_domain(x);
  const double r = norm(x);
  const double base = std::pow(r, params_.d * (params_.alpha - 1.0));
  if (kind_ == ModelKind::EuclideanCKN) return base;
  return base * std::pow(conformal_factor(x), -static_cast<double>(params_.d));
}

double ModelSpace::gamma_coeff(const Vec& x) const {
  require_domain(x);
  const double r = norm(x);
  const double c = conformal_factor(x);
  return std::pow(r, 2.0 * (1.0 - params_.alpha)) * c * c;
}

Eigen::MatrixXd ModelSpace::metric_lower(const Vec& x) const {
  const double coeff = 1.0 / gamma_coeff(x);
  return coeff * Eigen::MatrixXd::Identity(params_.d, params_.d);
}

Eigen::MatrixXd ModelSpace::metric_upper(const Vec& x) const {
  return gamma_coeff(x) * Eigen::MatrixXd::Identity(params_.d, params_.d);
}

Vec ModelSpace::drift(const Vec& x) const {
  require_domain(x);
  const double r2 = sq(norm(x));
  const double r2a = std::pow(r2, params_.alpha);  // |x|^{2 alpha}
  double coeff = -2.0 * params_.a / r2;
  if (kind_ == ModelKind::SphericalCKN) {
    coeff -= (params_.n - 2.0) * 2.0 * params_.alpha * r2a / (r2 * (1.0 + r2a));
  } else if (kind_ == ModelKind::HyperbolicCKN) {
    coeff += (params_.n - 2.0) * 2.0 * params_.alpha * r2a / (r2 * (1.0 - r2a));
  }
  Vec v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = coeff * x[i];
  return v;
}

// ---------------------------------------------------------------------------

CylChart::CylChart(CknParams params) : params_(std::move(params)), sphere_(params_.d) {
  if (!(params_.alpha > 0.0) || !params_.n_finite()) {
    throw DegenerateParams("CylChart: needs alpha > 0 and finite n");
  }
}

double CylChart::weight_cyl(double s) const {
  return (params_.n - params_.d) * std::log(phi(s));
}

Eigen::MatrixXd CylChart::metric_lower(const CylPoint& p) const {
  const int d = params_.d;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  const double ip2 = 1.0 / sq(phi(p.s));
  g(0, 0) = ip2;
  const Vec gtheta = sphere_.metric_diag(p.theta);
  for (int a = 0; a < d - 1; ++a) g(a + 1, a + 1) = gtheta[a] * ip2;
  return g;
}

CylPoint to_cylindrical(const Vec& x) {
  const double r = norm(x);
  if (!(r > 0.0)) throw OriginError("to_cylindrical: x = 0");
  Vec unit(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) unit[i] = x[i] / r;
  Sphere sph(static_cast<int>(x.size()));
  return CylPoint{std::log(r), sph.angles_from_unit(unit)};
}

Vec from_cylindrical(const CylPoint& p, int d) {
  Sphere sph(d);
  Vec w = sph.embed(p.theta);
  const double r = std::exp(p.s);
  for (double& wi : w) wi *= r;
  return w;
}

double cyl_factor(ModelKind kind, const CknParams& params, double s) {
  const double as = params.alpha * s;
  switch (kind) {
    case ModelKind::EuclideanCKN: return std::exp(-as);
    case ModelKind::SphericalCKN: return std::cosh(as);
    case ModelKind::HyperbolicCKN: return std::sinh(-as);
  }
  return 0.0;
}

double cyl_factor_dlog(ModelKind kind, const CknParams& params, double s) {
  const double as = params.alpha * s;
  switch (kind) {
    case ModelKind::EuclideanCKN: return -params.alpha;
    case ModelKind::SphericalCKN: return params.alpha * std::tanh(as);
    case ModelKind::HyperbolicCKN: return -params.alpha / std::tanh(-as);
  }
  return 0.0;
}

double cyl_measure_density(ModelKind kind, const CknParams& params, double s) {
  return std::pow(cyl_factor(kind, params, s), -params.n);
}

}  // namespace ckn
