#pragma once

#include <functional>
#include <vector>

#include "diamond/charts.hpp"
#include "diamond/lie.hpp"
#include "diamond/polyexp.hpp"
#include "diamond/reps.hpp"

namespace diamond::fourier {

/// Uniform periodic axis: n points min + i*spacing, i = 0..n-1.
struct Axis {
  double min = 0.0;
  double spacing = 1.0;
  std::size_t n = 0;

  double at(std::size_t i) const { return min + spacing * static_cast<double>(i); }
  double max_abs() const;

  /// [-half_width, half_width) with n points.
  static Axis symmetric(double half_width, std::size_t n);
  /// [lo, hi) with n points.
  static Axis periodic(double lo, double hi, std::size_t n);
};

/// Complex samples on axis1 x axis2, row-major in axis1 (index i1 * n2 + i2).
/// axis1 is p before the partial transform and x after it; axis2 is q.
struct Grid2D {
  Axis axis1;
  Axis axis2;
  std::vector<Complex> values;

  static Grid2D zeros(const Axis& a1, const Axis& a2);
  static Grid2D sample(const Axis& a1, const Axis& a2,
                       const std::function<Complex(double, double)>& f);

  Complex& operator()(std::size_t i1, std::size_t i2) { return values[i1 * axis2.n + i2]; }
  const Complex& operator()(std::size_t i1, std::size_t i2) const { return values[i1 * axis2.n + i2]; }

  /// sqrt(sum |f|^2 d1 d2).
  double l2_norm() const;
  double max_abs() const;
};

Grid2D operator-(const Grid2D& a, const Grid2D& b);
/// |a - b|_2 / |b|_2, or |a - b|_2 when b vanishes.
double l2_rel_err(const Grid2D& a, const Grid2D& b);
double max_abs_err(const Grid2D& a, const Grid2D& b);

/// Spectral mixed derivative d^n1/d(axis1) d^n2/d(axis2).
Grid2D derivative(const Grid2D& f, unsigned n1, unsigned n2);

/// Multiply pointwise by m(axis1, axis2).
Grid2D multiply(const Grid2D& f, const std::function<Complex(double, double)>& m);

inline constexpr double kDefaultDecayTolerance = 1e-12;

/// F_p(f)(x,q) = (2 pi)^{-1/2} int exp(-i p x) f(p,q) dp on a symmetric
/// p-axis with a power-of-two count >= 64; the x-axis is symmetric with
/// spacing 2 pi / (n dp). Throws std::invalid_argument if |f| on the p
/// boundary exceeds decay_tol * max|f|.
Grid2D partial_fourier(const Grid2D& f, double decay_tol = kDefaultDecayTolerance);
/// Exact discrete inverse of partial_fourier.
Grid2D inverse_partial_fourier(const Grid2D& fhat, double decay_tol = kDefaultDecayTolerance);

/// Binomial P^r(symbol, f): exact derivatives of the symbol, spectral
/// derivatives of f. r in 1..6. Throws std::invalid_argument when f is
/// under-resolved (spectral tail above resolution_tol).
Grid2D brute_Pr_grid(const PolyExp& symbol, const Grid2D& f, unsigned r,
                     double resolution_tol = 1e-10);

/// Every chart Hamiltonian has the shape (d + kappa e^q) p + mu e^{-q} + lambda e^q + c0.
struct HamiltonianShape {
  double d = 0.0;
  double kappa = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double c0 = 0.0;
};

HamiltonianShape hamiltonian_shape(const LieElement& A, const DarbouxChart& chart);

/// Closed form of P^k(A~, g), k >= 2:
///   mixed(q) d_q d_p^{k-1} g + pure(p,q) d_p^k g,
/// mixed = (-1)^{k-1} k kappa e^q,  pure = mu e^{-q} + (-1)^k (lambda + kappa p) e^q.
struct SeriesTermRule {
  ChartKind kind;
  unsigned k;
  HamiltonianShape shape;

  double mixed(double q) const;
  double pure(double p, double q) const;
};

/// Throws std::invalid_argument for k < 2.
SeriesTermRule series_term_rule(const LieElement& A, const DarbouxChart& chart, unsigned k);

/// Evaluates a rule on a (p,q) grid with spectral derivatives of g.
Grid2D apply_rule(const SeriesTermRule& rule, const Grid2D& g);

struct SeriesOptions {
  unsigned order = 20;
  double truncation_tol = 1e-4;
};

/// (L/2)^{R+1} / (R+1)! for the largest |x| on the grid.
double nominal_truncation_bound(double max_abs_x, unsigned order);

/// i F_p( sum_{r<=R} (1/r!) (1/(2i))^r P^r(A~, F_p^{-1} fhat) ) evaluated
/// in the x-domain via the term rules and p <-> i d_x, d_p <-> i x.
/// Throws std::invalid_argument if R < 4 or the nominal bound exceeds
/// options.truncation_tol.
Grid2D ell_series(const LieElement& A, const DarbouxChart& chart, const Grid2D& fhat,
                  const SeriesOptions& options = {});

/// Closed-form right-hand side
///   (d + kappa e^s)(d_q/2 - d_x) f + i (mu e^{-s} + lambda e^s + c0) f,  s = q - x/2,
/// with spectral d_q, d_x. add_half_divergence adds (kappa/2) e^s f.
Grid2D ell_closed_form(const LieElement& A, const DarbouxChart& chart, const Grid2D& fhat,
                       bool add_half_divergence = false);

/// Pointwise Lagrange-remainder bound on |ell_closed_form(+half divergence) -
/// ell_series| integrated in L2.
double series_truncation_bound_l2(const LieElement& A, const DarbouxChart& chart,
                                  const Grid2D& fhat, unsigned order);

/// amp * exp(-(a1-c1)^2/(2 w1^2) - (a2-c2)^2/(2 w2^2)) * exp(i (k1 a1 + k2 a2)).
struct GaussianSpec {
  Complex amp = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double w1 = 1.0;
  double w2 = 1.0;
  double k1 = 0.0;
  double k2 = 0.0;

  Complex operator()(double a1, double a2) const;
  /// Analytic d^n1/da1 d^n2/da2; requires k1 == k2 == 0.
  Complex derivative(unsigned n1, unsigned n2, double a1, double a2) const;
};

struct Theorem44Report {
  double l2_rel_err = 0.0;       // series vs closed form
  double max_err = 0.0;
  double l2_rel_err_half_divergence = 0.0;  // series vs closed form + (kappa/2) e^s f
  double truncation_bound = 0.0;  // nominal (L/2)^{R+1}/(R+1)!
  double truncation_bound_l2 = 0.0;
  double err_l2_abs_half_divergence = 0.0;
  bool within_bound = false;
};

Theorem44Report verify_theorem44(const LieElement& A, const DarbouxChart& chart,
                                 const GaussianSpec& f, const Axis& x_axis, const Axis& q_axis,
                                 const SeriesOptions& options = {});

struct Remark45Report {
  double l2_rel_err = 0.0;
  double max_err = 0.0;
  std::size_t fibers = 0;
  std::size_t points = 0;
};

/// Samples g(s,t) on the (x,q) grid (spacing dx = 2 dq required), evaluates the
/// closed form there, and compares it on whole t-fibers with
/// apply_op(ell_hat(A), g(., t)). Throws std::invalid_argument on a
/// spacing mismatch or fibers shorter than 8 points.
Remark45Report verify_remark45(const LieElement& A, const DarbouxChart& chart,
                               const std::function<Complex(double, double)>& g_st,
                               const Axis& x_axis, const Axis& q_axis,
                               const std::vector<double>& fiber_ts = {-1.0, -0.5, 0.0, 0.5, 1.0});

struct SchwartzReport {
  double integral_rel_err = 0.0;  // |int u*v - int uv| / |int uv|
  double conjugation_max_err = 0.0;  // max |conj(u)*conj(v) - conj(v*u)| / max|v*u|
  double last_term_rel = 0.0;     // size of the order-R term relative to the product
};

/// Truncated star product of two Gaussians on a (p,q) grid with analytic derivatives.
Grid2D star_gaussians(const GaussianSpec& u, const GaussianSpec& v, const Axis& p_axis,
                      const Axis& q_axis, unsigned order, bool conjugate_inputs = false);

/// Throws std::invalid_argument if the order-R term is not below truncation_tol.
SchwartzReport schwartz_star_properties(const GaussianSpec& u, const GaussianSpec& v,
                                        const Axis& p_axis, const Axis& q_axis,
                                        unsigned order = 20, double truncation_tol = 1e-10);

}  // namespace diamond::fourier
