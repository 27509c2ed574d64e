#include "ckn/params.hpp"

#include <cmath>
#include <sstream>

namespace ckn {

namespace {

std::string describe(double a, double b, int d) {
  std::ostringstream os;
  os << "(a=" << a << ", b=" << b << ", d=" << d << ")";
  return os.str();
}

}  // namespace

CknParams derive(double a, double b, int d) {
  if (d < 3) {
    throw DegenerateParams("derive: need d >= 3, got d=" + std::to_string(d));
  }
  const double a_c = 0.5 * (d - 2);
  if (a >= a_c) {
    throw DegenerateParams("derive: a >= a_c, inequality fails " + describe(a, b, d));
  }
  if (a_c - a + b <= 0.0) {
    throw DegenerateParams("derive: a_c - a + b <= 0, p undefined " + describe(a, b, d));
  }
  if (b > a + 1.0) {
    throw DegenerateParams("derive: b > a + 1, outside admissible band " + describe(a, b, d));
  }

  CknParams q;
  q.a = a;
  q.b = b;
  q.d = d;
  q.a_c = a_c;
  q.p = d / (a_c - a + b);

  const bool hardy = (b == a + 1.0);
  q.n = hardy ? std::numeric_limits<double>::infinity() : d / (1.0 + a - b);
  q.alpha = hardy ? 0.0 : 1.0 + a - 0.5 * q.p * b;

  // (n-2) alpha^2 == alpha (d-2-2a) exactly; this form stays finite on the
  // Hardy boundary where n = inf, alpha = 0.
  const double n2a2 = q.alpha * (d - 2.0 - 2.0 * a);
  q.b_dgz = (d - 2.0) - n2a2;
  q.rho = n2a2 + sq(q.alpha);

  if (!hardy && q.alpha > 0.0 && q.n > d) {
    q.gamma0 = -2.0 * (d - 1.0) * q.b_dgz / (sq(q.alpha) * (q.n - d) * (q.n - 2.0));
  }
  return q;
}

CknParams with_z(const CknParams& p, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw NonFinite("with_z: normalization must be finite positive");
  }
  CknParams q = p;
  q.z = z;
  return q;
}

RegionReport classify(const CknParams& p) {
  RegionReport r;
  r.in_theta = (p.a <= p.b) && (p.b <= p.a + 1.0) && (p.a < p.a_c);
  r.on_hardy_boundary = (p.b == p.a + 1.0);
  r.on_sobolev_line = (p.b == p.a);

  // alpha^2 <= (d-1)/(n-1); on the Hardy boundary both sides vanish.
  const double fs_bound =
      p.n_finite() ? (p.d - 1.0) / (p.n - 1.0) : 0.0;
  r.in_fs_by_alpha = sq(p.alpha) <= fs_bound + 1e-15;

  const double bfs = fs_curve(p.a, p.d);
  r.in_fs_by_curve = (p.b > 0.0) ? true : (p.b >= bfs - 1e-15);
  r.in_fs_by_curve_agate = (p.a > 0.0) ? true : (p.b >= bfs - 1e-15);

  r.alpha_le_one = p.alpha <= 1.0 + 1e-15;
  r.in_dgz = p.b_dgz >= -1e-15;
  r.characterizations_agree =
      (r.in_fs_by_alpha == r.in_fs_by_curve) && (r.in_fs_by_curve == r.alpha_le_one);
  return r;
}

double fs_curve(double a, int d) {
  const double a_c = 0.5 * (d - 2);
  if (a >= a_c) {
    throw DegenerateParams("fs_curve: a >= a_c");
  }
  const double u = a_c - a;
  return d * u / (2.0 * std::sqrt(u * u + d - 1.0)) - u;
}

std::optional<double> dgz_curve(double a, int d) {
  const double a_c = 0.5 * (d - 2);
  if (a >= a_c) {
    throw DegenerateParams("dgz_curve: a >= a_c");
  }
  const auto margin = [&](double b) { return derive(a, b, d).b_dgz; };

  double lo = a, hi = a + 1.0;
  double flo = margin(lo), fhi = margin(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) return std::nullopt;

  // Bisection; 80 halvings of a unit bracket land far below the 1e-12
  // residual target for this smooth, monotone-in-b margin.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = margin(mid);
    if (std::abs(fm) < 1e-13) return mid;
    if (flo * fm <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

double hardy_constant(double a, int d) {
  const double a_c = 0.5 * (d - 2);
  if (a >= a_c) {
    throw DegenerateParams("hardy_constant: a >= a_c");
  }
  const double denom = d - 2.0 - 2.0 * a;
  const double c = 2.0 / denom;
  return c * c;  // overflows to +inf as a -> a_c, reported as such
}

SobolevConstant sobolev_constant(const CknParams& p) {
  if (!p.z.has_value()) {
    throw MissingZ("sobolev_constant: normalization Z not populated");
  }
  if (!p.n_finite() || p.n <= 2.0 || p.alpha <= 0.0) {
    throw DegenerateParams("sobolev_constant: needs finite n > 2 and alpha > 0");
  }
  SobolevConstant out;
  out.value = 4.0 / (p.n * (p.n - 2.0) * sq(p.alpha) * std::pow(*p.z, 2.0 / p.n));
  out.outside_fs = sq(p.alpha) > (p.d - 1.0) / (p.n - 1.0) + 1e-15;
  return out;
}

std::vector<RegionRow> region_sweep(int d, double a_min, double a_max, int steps) {
  const double a_c = 0.5 * (d - 2);
  if (steps < 2 || !(a_min < a_max) || a_max >= a_c) {
    throw DegenerateParams("region_sweep: bad range");
  }
  std::vector<RegionRow> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    RegionRow row;
    row.a = a_min + (a_max - a_min) * i / (steps - 1);
    row.b_fs = fs_curve(row.a, d);
    row.b_dgz = dgz_curve(row.a, d);
    rows.push_back(row);
  }
  return rows;
}

CknParams params_on_fs_boundary(int d, double n) {
  if (n <= d) {
    throw DegenerateParams("params_on_fs_boundary: need n > d");
  }
  const double a_c = 0.5 * (d - 2);
  const double alpha = std::sqrt((d - 1.0) / (n - 1.0));
  // alpha = (a_c - a)(d/n) / (a_c + 1 - d/n) once b = a + 1 - d/n.
  const double a = a_c - alpha * (a_c + 1.0 - d / n) * n / d;
  const double b = a + 1.0 - d / n;
  return derive(a, b, d);
}

}  // namespace ckn
