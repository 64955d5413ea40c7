#pragma once

#include <algorithm>
#include <functional>
#include <ostream>
#include <utility>
#include <vector>

#include "diamond/charts.hpp"
#include "diamond/lie.hpp"
#include "diamond/polyexp.hpp"

namespace diamond {

/// Finite sum  sum_j c_j exp(k_j s)  in one variable s.
class ExpPoly1 {
 public:
  ExpPoly1() = default;
  /// Throws std::invalid_argument if `poly` has a positive power of p.
  explicit ExpPoly1(PolyExp poly);

  static ExpPoly1 constant(Complex c) { return ExpPoly1(PolyExp::constant(c)); }
  static ExpPoly1 exp_s(Complex c, double k) { return ExpPoly1(PolyExp::monomial(c, 0, k)); }

  const PolyExp& poly() const { return poly_; }
  bool empty() const { return poly_.empty(); }
  bool real_coefficients() const { return poly_.real_coefficients(); }
  double max_abs_coeff() const { return poly_.max_abs_coeff(); }

  Complex operator()(double s) const { return eval(poly_, 0.0, s); }
  ExpPoly1 derivative() const { return ExpPoly1(d_dq(poly_)); }

  friend ExpPoly1 operator+(const ExpPoly1& u, const ExpPoly1& v) { return ExpPoly1(u.poly_ + v.poly_); }
  friend ExpPoly1 operator-(const ExpPoly1& u, const ExpPoly1& v) { return ExpPoly1(u.poly_ - v.poly_); }
  friend ExpPoly1 operator*(const ExpPoly1& u, const ExpPoly1& v) { return ExpPoly1(u.poly_ * v.poly_); }
  friend ExpPoly1 operator*(Complex z, const ExpPoly1& u) { return ExpPoly1(z * u.poly_); }
  friend bool operator==(const ExpPoly1&, const ExpPoly1&) = default;

 private:
  PolyExp poly_;
};

/// v(s) d/ds + i w(s), acting fiberwise in the inert variable t.
struct FirstOrderOp {
  ExpPoly1 v;
  ExpPoly1 w;

  bool is_zero() const { return v.empty() && w.empty(); }
  double max_abs_coeff() const { return std::max(v.max_abs_coeff(), w.max_abs_coeff()); }

  friend FirstOrderOp operator+(const FirstOrderOp& a, const FirstOrderOp& b) { return {a.v + b.v, a.w + b.w}; }
  friend FirstOrderOp operator-(const FirstOrderOp& a, const FirstOrderOp& b) { return {a.v - b.v, a.w - b.w}; }
  friend FirstOrderOp operator*(double s, const FirstOrderOp& a) { return {s * a.v, s * a.w}; }
  friend bool operator==(const FirstOrderOp&, const FirstOrderOp&) = default;
};

/// The quantized operator of A on a chart.
FirstOrderOp ell_hat(const LieElement& A, const DarbouxChart& chart);

/// [O1, O2] = (v1 v2' - v2 v1') d/ds + i (v1 w2' - v2 w1').
FirstOrderOp op_commutator(const FirstOrderOp& O1, const FirstOrderOp& O2);

/// [ell_hat(A), ell_hat(B)] - ell_hat([A,B]).
FirstOrderOp homomorphism_residual(const LieElement& A, const LieElement& B,
                                   const DarbouxChart& chart);

/// Samples f(s_min + j h), j = 0..n-1. Periodic helpers treat the samples as
/// one period of length n h.
struct GridFn1 {
  double s_min = 0.0;
  double h = 1.0;
  std::vector<Complex> values;

  /// Endpoint-inclusive samples on [s_min, s_max].
  static GridFn1 sample(double s_min, double s_max, std::size_t n,
                        const std::function<Complex(double)>& f);
  /// n samples of one period [s_min, s_min + period).
  static GridFn1 sample_periodic(double s_min, double period, std::size_t n,
                                 const std::function<Complex(double)>& f);

  std::size_t size() const { return values.size(); }
  double s(std::size_t i) const { return s_min + h * static_cast<double>(i); }
  double s_max() const { return s(values.size() - 1); }
  double l2_norm() const;
};

/// Relative L2 distance |f - g| / |g| on a shared grid.
double l2_rel_diff(const GridFn1& f, const GridFn1& g);

enum class DerivativeScheme { Spectral, FiniteDifference4 };

/// Samples of v f' + i w f. Throws std::invalid_argument for fewer than 8 samples.
GridFn1 apply_op(const FirstOrderOp& O, const GridFn1& f,
                 DerivativeScheme scheme = DerivativeScheme::Spectral);

struct FlowOptions {
  std::size_t steps = 1024;
  double step_tolerance = 1e-11;
  unsigned max_halvings = 10;
};

struct FlowResult {
  GridFn1 f;
  std::vector<bool> left_domain;
  std::size_t left_count = 0;
  /// Step control hit the minimum step somewhere.
  bool stiff = false;
};

/// exp(tau O) f by characteristics: phase exp(i int_0^tau w(Phi_u(s))du) times
/// f(Phi_tau(s)), with Phi the flow of v. Points whose characteristic ends
/// outside the grid are flagged and set to zero. v must have real coefficients.
FlowResult exp_flow(const FirstOrderOp& O, const GridFn1& f, double tau,
                    const FlowOptions& options = {});

/// CSV "tau,s,re,im", one block of rows per snapshot.
void write_flow_csv(std::ostream& out, const std::vector<std::pair<double, GridFn1>>& snapshots);

}  // namespace diamond
