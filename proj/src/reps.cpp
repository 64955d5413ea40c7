#include "diamond/reps.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

#include "diamond/spectral.hpp"

namespace diamond {

namespace {

constexpr Complex kI{0.0, 1.0};

// Fourth-order first derivative; one-sided five-point stencils at the ends.
std::vector<Complex> fd4_derivative(const std::vector<Complex>& f, double h) {
  const std::size_t n = f.size();
  std::vector<Complex> d(n);
  const double inv = 1.0 / (12.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * inv;
  d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * inv;
  d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * inv;
  const std::size_t m = n - 1;
  d[m] = (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]) * inv;
  d[m - 1] = (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]) * inv;
  return d;
}

// Four-point Lagrange interpolation; nullopt outside [s_min, s_max].
std::optional<Complex> interpolate_cubic(const GridFn1& f, double x) {
  const std::size_t n = f.size();
  const double u = (x - f.s_min) / f.h;
  const double last = static_cast<double>(n - 1);
  if (!(u >= -1e-12 && u <= last + 1e-12)) return std::nullopt;
  long i0 = static_cast<long>(std::floor(u)) - 1;
  i0 = std::clamp(i0, 0L, static_cast<long>(n) - 4);
  const double t = u - static_cast<double>(i0);
  Complex acc{};
  for (int j = 0; j < 4; ++j) {
    double l = 1.0;
    for (int m = 0; m < 4; ++m)
      if (m != j) l *= (t - m) / static_cast<double>(j - m);
    acc += l * f.values[static_cast<std::size_t>(i0 + j)];
  }
  return acc;
}

struct CharState {
  double s;
  Complex phase;
};

struct CharField {
  const ExpPoly1& v;
  const ExpPoly1& w;
  CharState operator()(const CharState& y) const { return {v(y.s).real(), w(y.s)}; }
};

CharState rk4_step(const CharField& F, const CharState& y, double h) {
  const CharState k1 = F(y);
  const CharState k2 = F({y.s + 0.5 * h * k1.s, y.phase});
  const CharState k3 = F({y.s + 0.5 * h * k2.s, y.phase});
  const CharState k4 = F({y.s + h * k3.s, y.phase});
  return {y.s + h / 6.0 * (k1.s + 2.0 * k2.s + 2.0 * k3.s + k4.s),
          y.phase + h / 6.0 * (k1.phase + 2.0 * k2.phase + 2.0 * k3.phase + k4.phase)};
}

}  // namespace

ExpPoly1::ExpPoly1(PolyExp poly) : poly_(std::move(poly)) {
  if (poly_.max_pdeg() != 0)
    throw std::invalid_argument("ExpPoly1: coefficient functions cannot depend on p");
}

FirstOrderOp ell_hat(const LieElement& A, const DarbouxChart& chart) {
  const auto& f = chart.params;
  FirstOrderOp O;
  switch (chart.kind) {
    case ChartKind::HalfPlaneX:
      O.v = ExpPoly1::constant(A.d);
      O.w = ExpPoly1::exp_s(A.a * f.alpha, -1.0);
      break;
    case ChartKind::HalfPlaneY:
      O.v = ExpPoly1::constant(A.d);
      O.w = ExpPoly1::exp_s(A.b * f.beta, 1.0);
      break;
    case ChartKind::Cylinder:
      O.v = ExpPoly1::constant(A.d);
      O.w = ExpPoly1::exp_s(A.a * f.alpha, -1.0) + ExpPoly1::exp_s(A.b * f.beta, 1.0);
      break;
    case ChartKind::ParaboloidPositive:
    case ChartKind::ParaboloidNegative: {
      const double sg = chart.kind == ChartKind::ParaboloidPositive ? 1.0 : -1.0;
      O.v = ExpPoly1::constant(A.d) + ExpPoly1::exp_s(sg * A.b * f.gamma, 1.0);
      O.w = ExpPoly1::exp_s(sg * A.a, -1.0) + ExpPoly1::exp_s(sg * A.b * chart.invariant(), 1.0) +
            ExpPoly1::constant(A.c * f.gamma);
      break;
    }
  }
  return O;
}

FirstOrderOp op_commutator(const FirstOrderOp& O1, const FirstOrderOp& O2) {
  const ExpPoly1 dv1 = O1.v.derivative();
  const ExpPoly1 dv2 = O2.v.derivative();
  const ExpPoly1 dw1 = O1.w.derivative();
  const ExpPoly1 dw2 = O2.w.derivative();
  return {O1.v * dv2 - O2.v * dv1, O1.v * dw2 - O2.v * dw1};
}

FirstOrderOp homomorphism_residual(const LieElement& A, const LieElement& B,
                                   const DarbouxChart& chart) {
  return op_commutator(ell_hat(A, chart), ell_hat(B, chart)) - ell_hat(bracket(A, B), chart);
}

GridFn1 GridFn1::sample(double s_min, double s_max, std::size_t n,
                        const std::function<Complex(double)>& f) {
  if (n < 2 || !(s_max > s_min)) throw std::invalid_argument("GridFn1: empty domain");
  GridFn1 g{s_min, (s_max - s_min) / static_cast<double>(n - 1), {}};
  g.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.values[i] = f(g.s(i));
  return g;
}

GridFn1 GridFn1::sample_periodic(double s_min, double period, std::size_t n,
                                 const std::function<Complex(double)>& f) {
  if (n < 1 || !(period > 0.0)) throw std::invalid_argument("GridFn1: empty domain");
  GridFn1 g{s_min, period / static_cast<double>(n), {}};
  g.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.values[i] = f(g.s(i));
  return g;
}

double GridFn1::l2_norm() const {
  double acc = 0.0;
  for (const auto& z : values) acc += std::norm(z);
  return std::sqrt(acc * h);
}

double l2_rel_diff(const GridFn1& f, const GridFn1& g) {
  if (f.size() != g.size()) throw std::invalid_argument("l2_rel_diff: grid mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    num += std::norm(f.values[i] - g.values[i]);
    den += std::norm(g.values[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

GridFn1 apply_op(const FirstOrderOp& O, const GridFn1& f, DerivativeScheme scheme) {
  if (f.size() < 8) throw std::invalid_argument("apply_op: grid too coarse (need N >= 8)");
  GridFn1 out{f.s_min, f.h, std::vector<Complex>(f.size())};
  std::vector<Complex> df;
  if (!O.v.empty())
    df = scheme == DerivativeScheme::Spectral ? spectral::derivative(f.values, f.h)
                                              : fd4_derivative(f.values, f.h);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double s = f.s(i);
    Complex val = kI * O.w(s) * f.values[i];
    if (!df.empty()) val += O.v(s) * df[i];
    out.values[i] = val;
  }
  return out;
}

FlowResult exp_flow(const FirstOrderOp& O, const GridFn1& f, double tau, const FlowOptions& options) {
  if (f.size() < 8) throw std::invalid_argument("exp_flow: grid too coarse (need N >= 8)");
  if (!O.v.real_coefficients())
    throw std::invalid_argument("exp_flow: characteristics need a real drift v");
  if (options.steps == 0) throw std::invalid_argument("exp_flow: steps must be positive");

  const CharField field{O.v, O.w};
  const double h0 = tau / static_cast<double>(options.steps);
  const double h_min = h0 / std::ldexp(1.0, static_cast<int>(options.max_halvings));

  FlowResult res;
  res.f = GridFn1{f.s_min, f.h, std::vector<Complex>(f.size())};
  res.left_domain.assign(f.size(), false);

  for (std::size_t i = 0; i < f.size(); ++i) {
    CharState y{f.s(i), Complex{}};
    double elapsed = 0.0;
    double h = h0;
    bool exited = false;
    while (tau != 0.0 && std::abs(elapsed) < std::abs(tau)) {
      if (std::abs(elapsed + h) > std::abs(tau)) h = tau - elapsed;
      const CharState full = rk4_step(field, y, h);
      const CharState half = rk4_step(field, rk4_step(field, y, 0.5 * h), 0.5 * h);
      const double err = std::abs(full.s - half.s) + std::abs(full.phase - half.phase);
      const double scale = std::max(1.0, std::abs(half.s));
      if (err > options.step_tolerance * scale && std::abs(h) > std::abs(h_min)) {
        h *= 0.5;
        continue;
      }
      if (err > options.step_tolerance * scale) res.stiff = true;
      y = half;
      elapsed += h;
      // Characteristics of s' = v(s) are monotone: once off the grid they stay off.
      if (!(y.s >= f.s_min && y.s <= f.s_max())) {
        exited = true;
        break;
      }
      if (std::abs(h) < std::abs(h0)) h = std::abs(2.0 * h) <= std::abs(h0) ? 2.0 * h : h0;
    }
    const auto fv = exited ? std::nullopt : interpolate_cubic(f, y.s);
    if (!fv) {
      res.left_domain[i] = true;
      ++res.left_count;
      continue;
    }
    res.f.values[i] = std::exp(kI * y.phase) * *fv;
  }
  return res;
}

void write_flow_csv(std::ostream& out, const std::vector<std::pair<double, GridFn1>>& snapshots) {
  out << "tau,s,re,im\n";
  for (const auto& [tau, g] : snapshots)
    for (std::size_t i = 0; i < g.size(); ++i)
      out << format_number(tau) << ',' << format_number(g.s(i)) << ','
          << format_number(g.values[i].real()) << ',' << format_number(g.values[i].imag()) << '\n';
}

}  // namespace diamond
