#pragma once

#include <optional>
#include <string>

#include "ckn/chart.hpp"
#include "ckn/params.hpp"
#include "ckn/sphere.hpp"

namespace ckn {

/// Gauss-Legendre rule on [-1, 1] (Newton iteration on the Legendre
/// recurrence; nodes to machine precision).
void gauss_legendre(int n, Vec& nodes, Vec& weights);

/// Quadrature rule in the polar angle t for integrals
///   int_0^pi f(t) sin^k(t) dt  ~=  sum w_i f(t_i),
/// exact-to-roundoff for smooth f: Gauss-Legendre in cos t with the sin^k
/// Jacobian folded in for odd k, Gauss-Chebyshev (second kind) for even k.
void polar_rule(int k, int n, Vec& theta, Vec& weights);

double sphere_area(int d);

/// Product nodes/weights over S^{d-1} (polar rules x azimuth trapezoid),
/// shared by QuadGrid and the sphere-only integrals.
void build_sphere_nodes(int d, int polar_nodes, int azimuth_nodes,
                        std::vector<Vec>& nodes, Vec& weights);

struct GridOptions {
  int polar_nodes = 16;
  int azimuth_nodes = 32;
  int panel_nodes = 32;          // Gauss-Legendre nodes per s-panel
  double panels_per_unit = 1.0;  // panels of width (1/alpha)/panels_per_unit
  double tail_tol = 1e-16;       // cosh(alpha S)^{-(n-2)} < tail_tol picks S_max
};

/// Reference measure selector for cylinder integrals.
enum class Measure {
  MuBar,     // phi^{-n} ds dtheta
  Volume,    // phi^{-d} ds dtheta
  Lebesgue,  // ds dtheta
  Custom,    // caller-provided density(s)
};

/**
 * Product quadrature grid on [s_lo, s_hi] x S^{d-1}: panel Gauss-Legendre in
 * s, the sin^k polar rules and a periodic trapezoid in the azimuth. Weights
 * are all positive; doubling the resolution leaves smooth integrals invariant
 * to ~1e-10, which is the primary accuracy diagnostic.
 */
class QuadGrid {
 public:
  /// cosh-decay grid: symmetric in s, S_max from the tail bound.
  static QuadGrid for_params(const CknParams& params, const GridOptions& opt = {});

  /// Grid over an explicit s-interval (used for compactly supported or
  /// Gaussian-windowed integrands).
  static QuadGrid over_interval(const CknParams& params, double s_lo, double s_hi,
                                const GridOptions& opt = {});

  /// Same grid at doubled resolution (s panels halved in width, angular
  /// node counts doubled).
  QuadGrid refined() const;

  const CknParams& params() const { return params_; }
  const Sphere& sphere() const { return sphere_; }
  const Vec& s_nodes() const { return s_nodes_; }
  const Vec& s_weights() const { return s_weights_; }
  std::size_t angular_count() const { return theta_weights_.size(); }
  const Vec& theta_node(std::size_t i) const { return theta_nodes_[i]; }
  double theta_weight(std::size_t i) const { return theta_weights_[i]; }
  const std::string& resolution() const { return resolution_; }

  /// Integral of f(s, theta) against the chosen density. Evaluations run in
  /// parallel over s-slices; the reduction tree is fixed, so the result is
  /// bit-identical regardless of thread count. Throws NonFinite if any node
  /// evaluates to a non-finite value.
  double integrate(const std::function<double(double, const Vec&)>& f, Measure measure,
                   const std::function<double(double)>& density = {}) const;

  /// K simultaneous integrals sharing one field evaluation per node.
  Vec integrate_multi(int k,
                      const std::function<void(double, const Vec&, std::span<double>)>& f,
                      Measure measure,
                      const std::function<double(double)>& density = {}) const;

  /// Integral over S^{d-1} alone of an angular function.
  double integrate_sphere(const std::function<double(const Vec&)>& f) const;

 private:
  QuadGrid(CknParams params, GridOptions opt);
  void build_angular();
  void build_s(double s_lo, double s_hi);
  double density_at(double s, Measure m,
                    const std::function<double(double)>& density) const;

  CknParams params_;
  GridOptions opt_;
  Sphere sphere_;
  double s_lo_ = 0.0, s_hi_ = 0.0;
  Vec s_nodes_, s_weights_;
  std::vector<Vec> theta_nodes_;
  Vec theta_weights_;
  std::string resolution_;
};

/// Default grid factory: S_max from the cosh tail bound, 32-node panels of
/// width 1/alpha. Requires finite n and alpha > 0.
QuadGrid build_grid(const CknParams& params, double tail_tol = 1e-16);

/// int_R cosh(alpha t)^{-n} dt by panel Gauss-Legendre.
double cosh_power_integral(double alpha, double n);

/// Normalization Z = |S^{d-1}| int_R cosh(alpha t)^{-n} dt.
double normalization_z(const CknParams& params);

/// The same constant in the equivalent one-sided form
/// (2/alpha) |S^{d-1}| int_0^inf cosh(t)^{-n} dt.
double normalization_z_onesided(const CknParams& params);

/// The same constant once more from the radial integral in r = |x|,
/// |S^{d-1}| int_0^inf 2^n r^{d-1-bp} (1+r^{2 alpha})^{-n} dr, evaluated on
/// geometrically spaced panels in r (no logarithmic substitution).
double normalization_z_cartesian(const CknParams& params);

/// Copy of `params` with z attached from normalization_z.
CknParams attach_z(const CknParams& params);

}  // namespace ckn
