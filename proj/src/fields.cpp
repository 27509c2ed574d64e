#include "ckn/fields.hpp"

#include <cmath>

namespace ckn {

SProfile sprofile_const(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

SProfile sprofile_sin(double amp, double freq, double phase) {
  return {[=](double s) { return amp * std::sin(freq * s + phase); },
          [=](double s) { return amp * freq * std::cos(freq * s + phase); },
          [=](double s) { return -amp * freq * freq * std::sin(freq * s + phase); }};
}

SProfile sprofile_sech_pow(double beta, double kappa) {
  const auto v = [=](double s) { return std::pow(1.0 / std::cosh(beta * s), kappa); };
  return {v,
          [=](double s) { return -kappa * beta * std::tanh(beta * s) * v(s); },
          [=](double s) {
            const double t = std::tanh(beta * s);
            return kappa * beta * beta * v(s) * (kappa * t * t - (1.0 - t * t));
          }};
}

SProfile sprofile_tanh(double alpha) {
  return {[=](double s) { return std::tanh(alpha * s); },
          [=](double s) { return alpha * (1.0 - sq(std::tanh(alpha * s))); },
          [=](double s) {
            const double t = std::tanh(alpha * s);
            return -2.0 * alpha * alpha * t * (1.0 - t * t);
          }};
}

SProfile sprofile_bump(double center, double halfwidth) {
  const auto v = [=](double s) {
    const double u = (s - center) / halfwidth;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u * u));
  };
  return {v,
          [=](double s) {
            const double u = (s - center) / halfwidth;
            if (std::abs(u) >= 1.0) return 0.0;
            const double q = 1.0 - u * u;
            return v(s) * (-2.0 * u / (q * q)) / halfwidth;
          },
          [=](double s) {
            const double u = (s - center) / halfwidth;
            if (std::abs(u) >= 1.0) return 0.0;
            const double q = 1.0 - u * u;
            const double g = -2.0 * u / (q * q);          // dlog(v)/du
            const double dg = (-2.0 * q - 8.0 * u * u) / (q * q * q);
            return v(s) * (g * g + dg) / (halfwidth * halfwidth);
          }};
}

SProfile sprofile_gaussian(double center, double width) {
  return {[=](double s) {
            const double u = (s - center) / width;
            return std::exp(-0.5 * u * u);
          },
          [=](double s) {
            const double u = (s - center) / width;
            return -u / width * std::exp(-0.5 * u * u);
          },
          [=](double s) {
            const double u = (s - center) / width;
            return (u * u - 1.0) / (width * width) * std::exp(-0.5 * u * u);
          }};
}

// ---------------------------------------------------------------------------

SeparableField& SeparableField::add(SProfile prof, AngularPoly ang) {
  terms_.push_back({std::move(prof), std::move(ang)});
  return *this;
}

double SeparableField::value(const CylPoint& p) const {
  const Vec w = sphere_.embed(p.theta);
  double s = 0.0;
  for (const Term& t : terms_) s += t.prof.v(p.s) * t.ang.value_at_unit(w);
  return s;
}

double SeparableField::ds(const CylPoint& p) const {
  const Vec w = sphere_.embed(p.theta);
  double s = 0.0;
  for (const Term& t : terms_) s += t.prof.d1(p.s) * t.ang.value_at_unit(w);
  return s;
}

double SeparableField::dss(const CylPoint& p) const {
  const Vec w = sphere_.embed(p.theta);
  double s = 0.0;
  for (const Term& t : terms_) s += t.prof.d2(p.s) * t.ang.value_at_unit(w);
  return s;
}

double SeparableField::laplacian_theta(const CylPoint& p) const {
  const Vec w = sphere_.embed(p.theta);
  double s = 0.0;
  for (const Term& t : terms_) {
    s += t.prof.v(p.s) * t.ang.laplacian(w, sphere_.ambient_dim());
  }
  return s;
}

double SeparableField::gamma_theta_pair(const SeparableField& other, const CylPoint& p) const {
  const Vec w = sphere_.embed(p.theta);
  double s = 0.0;
  for (const Term& a : terms_) {
    for (const Term& b : other.terms_) {
      s += a.prof.v(p.s) * b.prof.v(p.s) * a.ang.gamma_with(b.ang, w);
    }
  }
  return s;
}

double SeparableField::gamma_theta_ds_pair(const CylPoint& p) const {
  const Vec w = sphere_.embed(p.theta);
  double s = 0.0;
  for (const Term& a : terms_) {
    for (const Term& b : terms_) {
      s += a.prof.d1(p.s) * b.prof.v(p.s) * a.ang.gamma_with(b.ang, w);
    }
  }
  return s;
}

void SeparableField::eval_bundle(const CylPoint& p, double& v, double& ds, double& gth) const {
  const Vec w = sphere_.embed(p.theta);
  const std::size_t m = terms_.size();
  // angular values once, profile arithmetic per term
  Vec ang(m), prof(m), dprof(m);
  for (std::size_t k = 0; k < m; ++k) {
    ang[k] = terms_[k].ang.value_at_unit(w);
    prof[k] = terms_[k].prof.v(p.s);
    dprof[k] = terms_[k].prof.d1(p.s);
  }
  v = 0.0;
  ds = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    v += prof[k] * ang[k];
    ds += dprof[k] * ang[k];
  }
  gth = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    gth += sq(prof[k]) * terms_[k].ang.gamma_with(terms_[k].ang, w);
    for (std::size_t l = k + 1; l < m; ++l) {
      gth += 2.0 * prof[k] * prof[l] * terms_[k].ang.gamma_with(terms_[l].ang, w);
    }
  }
}

CylField SeparableField::as_field() const {
  auto self = std::make_shared<SeparableField>(*this);
  CylField f;
  f.value = [self](const CylPoint& p) { return self->value(p); };
  f.ds = [self](const CylPoint& p) { return self->ds(p); };
  f.gamma_theta = [self](const CylPoint& p) { return self->gamma_theta(p); };
  return f;
}

// ---------------------------------------------------------------------------
// Seeded families
// ---------------------------------------------------------------------------

namespace {

AngularPoly random_angular(Rng& rng, int d, double amplitude) {
  AngularPoly a;
  a.add(rng.uniform(-amplitude, amplitude), -1, -1);
  a.add(rng.uniform(-amplitude, amplitude), rng.uniform_int(0, d - 1));
  a.add(rng.uniform(-amplitude, amplitude), rng.uniform_int(0, d - 1),
        rng.uniform_int(0, d - 1));
  return a;
}

SeparableField random_separable(Rng& rng, int d, double amplitude) {
  SeparableField f(d);
  f.add(sprofile_sin(rng.uniform(0.3, 1.0) * amplitude, rng.uniform(0.4, 1.2),
                     rng.uniform(0.0, 2.0 * kPi)),
        random_angular(rng, d, 1.0));
  f.add(sprofile_sech_pow(rng.uniform(0.4, 0.9), rng.uniform(1.0, 2.0)),
        random_angular(rng, d, amplitude));
  return f;
}

}  // namespace

CylField seeded_positive_field(const CknParams& params, std::uint64_t seed, int index) {
  Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(index) * 97ULL + 11ULL);
  const int d = params.d;
  auto q = std::make_shared<SeparableField>(random_separable(rng, d, 0.5));
  const double beta = rng.uniform(0.3, 0.8) * std::max(params.alpha, 0.2);
  const double kappa = rng.uniform(0.5, 2.0);
  auto sech = sprofile_sech_pow(beta, kappa);

  CylField f;
  f.value = [q, sech](const CylPoint& p) { return std::exp(q->value(p)) * sech.v(p.s); };
  f.ds = [q, sech](const CylPoint& p) {
    return std::exp(q->value(p)) * (q->ds(p) * sech.v(p.s) + sech.d1(p.s));
  };
  f.gamma_theta = [q, sech](const CylPoint& p) {
    const double v = std::exp(q->value(p)) * sech.v(p.s);
    return v * v * q->gamma_theta(p);
  };
  f.bundle = [q, sech](const CylPoint& p, double& v, double& ds, double& gth) {
    double qv, qds, qgth;
    q->eval_bundle(p, qv, qds, qgth);
    const double e = std::exp(qv);
    const double sv = sech.v(p.s);
    v = e * sv;
    ds = e * (qds * sv + sech.d1(p.s));
    gth = v * v * qgth;
  };
  return f;
}

CylField seeded_smooth_field(int d, std::uint64_t seed, int index) {
  SeparableField f = seeded_separable_field(d, seed, index);
  CylField out;
  auto self = std::make_shared<SeparableField>(std::move(f));
  out.value = [self](const CylPoint& p) { return self->value(p); };
  return out;
}

SeparableField seeded_separable_field(int d, std::uint64_t seed, int index) {
  Rng rng(seed * 2000003ULL + static_cast<std::uint64_t>(index) * 101ULL + 7ULL);
  SeparableField f = random_separable(rng, d, 0.6);
  f.add(sprofile_const(rng.uniform(0.5, 1.5)), AngularPoly(1.0));
  return f;
}

AngularPoly seeded_harmonic_combo(int d, std::uint64_t seed, int index, double amplitude) {
  Rng rng(seed * 3000017ULL + static_cast<std::uint64_t>(index) * 131ULL + 3ULL);
  AngularPoly a;
  for (int i = 0; i < d; ++i) {
    a.add(rng.uniform(-amplitude, amplitude), i);
  }
  a.add(rng.uniform(-amplitude, amplitude), rng.uniform_int(0, d - 1),
        rng.uniform_int(0, d - 1));
  return a;
}

std::vector<CylPoint> seeded_cyl_points(int d, std::uint64_t seed, int count, double s_range,
                                        double pole_margin) {
  Rng rng(seed * 4000037ULL + 13ULL);
  std::vector<CylPoint> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    CylPoint p;
    p.s = rng.uniform(-s_range, s_range);
    p.theta.resize(static_cast<std::size_t>(d - 1));
    for (int a = 0; a + 1 < d - 1; ++a) {
      p.theta[a] = rng.uniform(pole_margin, kPi - pole_margin);
    }
    p.theta[d - 2] = rng.uniform(0.0, 2.0 * kPi);
    pts.push_back(std::move(p));
  }
  return pts;
}

std::function<double(const Vec&)> seeded_cartesian_scalar(int d, std::uint64_t seed, int index,
                                                          double amplitude) {
  Rng rng(seed * 6000101ULL + static_cast<std::uint64_t>(index) * 149ULL + 17ULL);
  struct Mode {
    Vec freq;
    double amp, phase;
  };
  auto modes = std::make_shared<std::vector<Mode>>();
  for (int k = 0; k < 3; ++k) {
    Mode m;
    m.freq.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) m.freq[i] = rng.uniform(-0.8, 0.8);
    m.amp = rng.uniform(0.2, 1.0) * amplitude;
    m.phase = rng.uniform(0.0, 2.0 * kPi);
    modes->push_back(std::move(m));
  }
  return [modes](const Vec& x) {
    double s = 0.0;
    for (const auto& m : *modes) {
      double arg = m.phase;
      for (std::size_t i = 0; i < x.size(); ++i) arg += m.freq[i] * x[i];
      s += m.amp * std::sin(arg);
    }
    return s;
  };
}

std::function<Eigen::MatrixXd(const Vec&)> seeded_cartesian_metric(int d, std::uint64_t seed,
                                                                   int index, double eps) {
  auto sigma = seeded_cartesian_scalar(d, seed ^ 0x5bf0a8ULL, index, 0.3);
  auto entries = std::make_shared<std::vector<std::function<double(const Vec&)>>>();
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      entries->push_back(
          seeded_cartesian_scalar(d, seed * 31ULL + 7ULL * i + j, index, 0.3));
    }
  }
  return [d, eps, sigma, entries](const Vec& x) -> Eigen::MatrixXd {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
    std::size_t k = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j, ++k) {
        s(i, j) = (*entries)[k](x);
        s(j, i) = s(i, j);
      }
    }
    const double scale = std::exp(2.0 * sigma(x));
    return scale * (Eigen::MatrixXd::Identity(d, d) + eps * s);
  };
}

std::vector<Vec> seeded_cartesian_points(int d, std::uint64_t seed, int count, double r_lo,
                                         double r_hi) {
  Rng rng(seed * 5000011ULL + 29ULL);
  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(count));
  Sphere sph(d);
  while (static_cast<int>(pts.size()) < count) {
    Vec theta(static_cast<std::size_t>(d - 1));
    for (int a = 0; a + 1 < d - 1; ++a) theta[a] = rng.uniform(0.35, kPi - 0.35);
    theta[d - 2] = rng.uniform(0.0, 2.0 * kPi);
    const double r = rng.uniform(r_lo, r_hi);
    Vec x = sph.embed(theta);
    for (double& xi : x) xi *= r;
    pts.push_back(std::move(x));
  }
  return pts;
}

}  // namespace ckn
