#include "ckn/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace ckn {

Sphere::Sphere(int d) : d_(d) {
  if (d < 2) throw DegenerateParams("Sphere: need ambient dimension >= 2");
}

bool Sphere::interior(const Vec& theta, double margin) const {
  if (static_cast<int>(theta.size()) != n_angles()) return false;
  for (int a = 0; a + 1 < n_angles(); ++a) {  // polar angles only
    if (theta[a] < margin || theta[a] > kPi - margin) return false;
  }
  return true;
}

void Sphere::require_interior(const Vec& theta, double margin) const {
  if (!interior(theta, margin)) {
    throw BoundaryError("Sphere: point within pole margin of the polar chart");
  }
}

Vec Sphere::embed(const Vec& theta) const {
  Vec w(static_cast<std::size_t>(d_), 0.0);
  double sines = 1.0;
  for (int a = 0; a < n_angles(); ++a) {
    w[a] = sines * std::cos(theta[a]);
    sines *= std::sin(theta[a]);
  }
  w[d_ - 1] = sines;
  return w;
}

void Sphere::embed_with_partials(const Vec& theta, Vec& w, Eigen::MatrixXd& dw) const {
  w = embed(theta);
  dw = Eigen::MatrixXd::Zero(d_, n_angles());
  for (int i = 0; i < d_; ++i) {
    const int top = std::min(i, n_angles() - 1);
    for (int a = 0; a <= top; ++a) {
      if (a < i) {
        dw(i, a) = w[i] / std::tan(theta[a]);
      } else {
        // a == i <= d-2: w_i = S_i cos t_i
        double sines = 1.0;
        for (int c = 0; c < a; ++c) sines *= std::sin(theta[c]);
        dw(i, a) = -sines * std::sin(theta[a]);
      }
    }
  }
}

Vec Sphere::angles_from_unit(const Vec& w) const {
  Vec theta(static_cast<std::size_t>(n_angles()), 0.0);
  double rem = 1.0;
  for (int a = 0; a + 1 < n_angles(); ++a) {
    const double c = std::clamp(rem > 0.0 ? w[a] / rem : 1.0, -1.0, 1.0);
    theta[a] = std::acos(c);
    rem *= std::sin(theta[a]);
  }
  double az = std::atan2(w[d_ - 1], w[d_ - 2]);
  if (az < 0.0) az += 2.0 * kPi;
  theta[n_angles() - 1] = az;
  return theta;
}

Vec Sphere::metric_diag(const Vec& theta) const {
  Vec g(static_cast<std::size_t>(n_angles()), 1.0);
  double acc = 1.0;
  for (int a = 1; a < n_angles(); ++a) {
    acc *= sq(std::sin(theta[a - 1]));
    g[a] = acc;
  }
  return g;
}

double Sphere::gamma_from_partials(const Vec& theta, const Vec& du, const Vec& dv) const {
  const Vec g = metric_diag(theta);
  double s = 0.0;
  for (int a = 0; a < n_angles(); ++a) s += du[a] * dv[a] / g[a];
  return s;
}

Vec Sphere::laplacian_drift(const Vec& theta) const {
  Vec c(static_cast<std::size_t>(n_angles()), 0.0);
  for (int a = 0; a + 1 < n_angles(); ++a) {
    c[a] = (d_ - 2 - a) / std::tan(theta[a]);
  }
  return c;
}

std::vector<Eigen::MatrixXd> Sphere::christoffel(const Vec& theta) const {
  const int m = n_angles();
  const Vec g = metric_diag(theta);
  std::vector<Eigen::MatrixXd> gam(m, Eigen::MatrixXd::Zero(m, m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < a; ++b) {
      const double cot = 1.0 / std::tan(theta[b]);
      gam[a](a, b) = cot;  // Gamma^a_{ab}, b < a
      gam[a](b, a) = cot;
      gam[b](a, a) = -cot * g[a] / g[b];  // Gamma^b_{aa}
    }
  }
  return gam;
}

double Sphere::area(int d) {
  return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

// ---------------------------------------------------------------------------
// AngularPoly
// ---------------------------------------------------------------------------

AngularPoly& AngularPoly::add(double coeff, int i, int j) {
  if (j >= 0 && i < 0) std::swap(i, j);
  terms_.push_back({coeff, i, j});
  return *this;
}

double AngularPoly::term_value(const Term& t, const Vec& w) {
  double v = t.coeff;
  if (t.i >= 0) v *= w[t.i];
  if (t.j >= 0) v *= w[t.j];
  return v;
}

double AngularPoly::value_at_unit(const Vec& w) const {
  double s = 0.0;
  for (const Term& t : terms_) s += term_value(t, w);
  return s;
}

double AngularPoly::value(const Sphere& sph, const Vec& theta) const {
  return value_at_unit(sph.embed(theta));
}

namespace {

// Gamma(w_i, w_j) = delta_ij - w_i w_j on the unit sphere.
double gamma_ww(int i, int j, const Vec& w) {
  return (i == j ? 1.0 : 0.0) - w[i] * w[j];
}

// Gamma between two monomials in the coordinate functions.
double gamma_terms(const AngularPoly::Term& s, const AngularPoly::Term& t, const Vec& w) {
  if (s.i < 0 || t.i < 0) return 0.0;  // constants
  const double c = s.coeff * t.coeff;
  if (s.j < 0 && t.j < 0) return c * gamma_ww(s.i, t.i, w);
  if (s.j < 0) {
    return c * (w[t.i] * gamma_ww(s.i, t.j, w) + w[t.j] * gamma_ww(s.i, t.i, w));
  }
  if (t.j < 0) {
    return c * (w[s.i] * gamma_ww(s.j, t.i, w) + w[s.j] * gamma_ww(s.i, t.i, w));
  }
  return c * (w[s.i] * w[t.i] * gamma_ww(s.j, t.j, w) + w[s.i] * w[t.j] * gamma_ww(s.j, t.i, w) +
              w[s.j] * w[t.i] * gamma_ww(s.i, t.j, w) + w[s.j] * w[t.j] * gamma_ww(s.i, t.i, w));
}

}  // namespace

double AngularPoly::gamma_with(const AngularPoly& other, const Vec& w) const {
  double s = 0.0;
  for (const Term& a : terms_) {
    for (const Term& b : other.terms_) s += gamma_terms(a, b, w);
  }
  return s;
}

double AngularPoly::laplacian(const Vec& w, int d) const {
  double s = 0.0;
  for (const Term& t : terms_) {
    if (t.i < 0) continue;
    if (t.j < 0) {
      s += -(d - 1.0) * term_value(t, w);
    } else {
      // Delta(w_i w_j) = -2(d-1) w_i w_j + 2 (delta_ij - w_i w_j)
      s += -2.0 * (d - 1.0) * term_value(t, w) +
           2.0 * t.coeff * gamma_ww(t.i, t.j, w);
    }
  }
  return s;
}

Vec AngularPoly::partials(const Sphere& sph, const Vec& theta) const {
  Vec w;
  Eigen::MatrixXd dw;
  sph.embed_with_partials(theta, w, dw);
  const int d = sph.ambient_dim();
  // ambient polynomial gradient
  Vec grad(static_cast<std::size_t>(d), 0.0);
  for (const Term& t : terms_) {
    if (t.i < 0) continue;
    if (t.j < 0) {
      grad[t.i] += t.coeff;
    } else {
      grad[t.i] += t.coeff * w[t.j];
      grad[t.j] += t.coeff * w[t.i];
    }
  }
  Vec out(static_cast<std::size_t>(sph.n_angles()), 0.0);
  for (int a = 0; a < sph.n_angles(); ++a) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += grad[i] * dw(i, a);
    out[a] = s;
  }
  return out;
}

}  // namespace ckn
