#pragma once

#include <cmath>
#include <optional>

#include "ckn/common.hpp"

namespace ckn {

/**
 * Parameter record of a weighted Sobolev (Caffarelli-Kohn-Nirenberg type)
 * model, holding the pair (a, b) in dimension d together with every derived
 * quantity used downstream:
 *
 *   a_c    = (d-2)/2                         (critical weight)
 *   p      = d / (a_c - a + b)               (critical exponent)
 *   n      = d / (1 + a - b)                 (intrinsic dimension, +inf on b = a+1)
 *   alpha  = 1 + a - p*b/2                   (conformal exponent)
 *   b_dgz  = (d-2) - (n-2)*alpha^2           (pointwise curvature margin)
 *   rho    = alpha^2 * (n-1)                 (curvature lower bound)
 *   gamma0 = -2(d-1)*b_dgz / (alpha^2 (n-d)(n-2))   (only when n > d, alpha > 0)
 *
 * On the Hardy boundary b = a+1 (alpha = 0, n = +inf) the finite limits
 * b_dgz = d-2 and rho = 0 are stored; operations that need finite n must
 * check n_finite() and reject flagged records with typed errors.
 */
struct CknParams {
  double a = 0.0;
  double b = 0.0;
  int d = 0;

  double a_c = 0.0;
  double p = 0.0;
  double n = 0.0;  // +inf when b == a+1
  double alpha = 0.0;
  double b_dgz = 0.0;
  double rho = 0.0;
  std::optional<double> gamma0;
  std::optional<double> z;  // normalization, filled by quadrature::normalization_z

  bool n_finite() const { return std::isfinite(n); }
};

/// Region classification. The three Felli-Schneider characterizations are
/// evaluated independently and never reconciled: `characterizations_agree`
/// records whether they coincide at this point (they do not everywhere).
/// The canonical in-FS verdict is `in_fs_by_alpha`.
struct RegionReport {
  bool in_theta = false;
  bool on_hardy_boundary = false;  // b == a+1
  bool on_sobolev_line = false;    // b == a
  bool in_fs_by_alpha = false;     // alpha^2 <= (d-1)/(n-1)
  bool in_fs_by_curve = false;     // b >= b_FS(a), gated by b <= 0
  bool in_fs_by_curve_agate = false;  // alternate gate: a <= 0 (diagnostic)
  bool alpha_le_one = false;
  bool in_dgz = false;  // b_dgz >= 0
  bool characterizations_agree = false;
};

/// Derives the full parameter record.
/// Preconditions: d >= 3, a < a_c, a_c - a + b > 0, b <= a + 1.
/// Throws DegenerateParams otherwise.
CknParams derive(double a, double b, int d);

/// Returns a copy of `p` with `z` set.
CknParams with_z(const CknParams& p, double z);

RegionReport classify(const CknParams& p);

/// The symmetry-breaking threshold curve
///   b_FS(a) = d(a_c - a) / (2 sqrt((a_c - a)^2 + d - 1)) - (a_c - a).
double fs_curve(double a, int d);

/// Root b* of b_dgz(a, .) = 0 in [a, a+1], located by bracketed bisection to
/// |b_dgz| < 1e-12. Absent when the margin does not change sign on the
/// bracket (then b_dgz > 0 throughout and the whole segment is admissible).
std::optional<double> dgz_curve(double a, int d);

/// Optimal constant of the limiting Hardy inequality, (2/(d-2-2a))^2.
/// Returns +inf (no throw) as a -> a_c from below would overflow.
double hardy_constant(double a, int d);

struct SobolevConstant {
  double value = 0.0;
  bool outside_fs = false;  // warning: alpha^2 > (d-1)/(n-1), value still valid algebra
};

/// Optimal Sobolev constant 4 / (n(n-2) alpha^2 Z^{2/n}).
/// Requires z populated (MissingZ), finite n > 2 and alpha > 0
/// (DegenerateParams). Attaches an `outside_fs` warning instead of failing.
SobolevConstant sobolev_constant(const CknParams& p);

/// One row of the region sweep used for the d-fixed region figure.
struct RegionRow {
  double a = 0.0;
  double b_fs = 0.0;
  std::optional<double> b_dgz;
};

std::vector<RegionRow> region_sweep(int d, double a_min, double a_max, int steps);

/// Solves for (a, b) with the given d and intrinsic dimension n such that
/// alpha^2 (n-1) = d-1 exactly (the boundary where angular symmetry breaking
/// sets in). Used by tests and the witness sweeps.
CknParams params_on_fs_boundary(int d, double n);

}  // namespace ckn
