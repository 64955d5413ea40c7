#include "diamond/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "diamond/spectral.hpp"

namespace diamond::fourier {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (a.axis1.n != b.axis1.n || a.axis2.n != b.axis2.n)
    throw std::invalid_argument("grid shape mismatch");
}

void require_symmetric(const Axis& ax, const char* what) {
  if (!is_power_of_two(ax.n) || ax.n < 64)
    throw std::invalid_argument(std::string(what) + ": axis needs a power-of-two count >= 64");
  const double expected = -0.5 * static_cast<double>(ax.n) * ax.spacing;
  if (std::abs(ax.min - expected) > 1e-12 * std::max(1.0, std::abs(expected)))
    throw std::invalid_argument(std::string(what) + ": axis must be symmetric about 0");
}

void require_decay(const Grid2D& f, double tol, const char* what) {
  const double peak = f.max_abs();
  double edge = 0.0;
  for (std::size_t i2 = 0; i2 < f.axis2.n; ++i2)
    edge = std::max({edge, std::abs(f(0, i2)), std::abs(f(f.axis1.n - 1, i2))});
  if (edge > tol * peak)
    throw std::invalid_argument(std::string(what) + ": samples do not decay at the boundary");
}

// Applies op to every axis1 line (fixed i2).
template <class Op>
void for_each_axis1_line(Grid2D& g, Op op) {
  std::vector<Complex> line(g.axis1.n);
  for (std::size_t i2 = 0; i2 < g.axis2.n; ++i2) {
    for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1) line[i1] = g(i1, i2);
    const std::vector<Complex> out = op(line);
    for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1) g(i1, i2) = out[i1];
  }
}

template <class Op>
void for_each_axis2_line(Grid2D& g, Op op) {
  const std::size_t n2 = g.axis2.n;
  for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1) {
    std::vector<Complex> line(g.values.begin() + static_cast<long>(i1 * n2),
                              g.values.begin() + static_cast<long>((i1 + 1) * n2));
    const std::vector<Complex> out = op(line);
    std::copy(out.begin(), out.end(), g.values.begin() + static_cast<long>(i1 * n2));
  }
}

double binomial(unsigned n, unsigned k) {
  double out = 1.0;
  for (unsigned i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / i;
  return out;
}

// |y|^{n+1}/(n+1)! e^{|y|}: Lagrange remainder of the order-n exponential Taylor sum.
double exp_remainder(double y, unsigned n) {
  const double a = std::abs(y);
  double term = std::exp(a);
  for (unsigned k = 1; k <= n + 1; ++k) term *= a / k;
  return term;
}

// Rows n = 0..order of d^n/da^n exp(-(a-c)^2/(2w^2)) on the axis.
std::vector<std::vector<double>> gaussian_derivative_table(const Axis& ax, double c, double w,
                                                           unsigned order) {
  std::vector<std::vector<double>> table(order + 1, std::vector<double>(ax.n));
  for (std::size_t i = 0; i < ax.n; ++i) {
    const double xi = (ax.at(i) - c) / w;
    const double g = std::exp(-0.5 * xi * xi);
    double he_prev = 0.0;
    double he = 1.0;
    double scale = 1.0;
    for (unsigned n = 0; n <= order; ++n) {
      table[n][i] = scale * he * g;
      const double he_next = xi * he - static_cast<double>(n) * he_prev;
      he_prev = he;
      he = he_next;
      scale *= -1.0 / w;
    }
  }
  return table;
}

}  // namespace

double Axis::max_abs() const {
  return std::max(std::abs(min), std::abs(at(n - 1)));
}

Axis Axis::symmetric(double half_width, std::size_t n) {
  if (n == 0 || !(half_width > 0.0)) throw std::invalid_argument("Axis: empty axis");
  return {-half_width, 2.0 * half_width / static_cast<double>(n), n};
}

Axis Axis::periodic(double lo, double hi, std::size_t n) {
  if (n == 0 || !(hi > lo)) throw std::invalid_argument("Axis: empty axis");
  return {lo, (hi - lo) / static_cast<double>(n), n};
}

Grid2D Grid2D::zeros(const Axis& a1, const Axis& a2) {
  if (!(a1.spacing > 0.0) || !(a2.spacing > 0.0))
    throw std::invalid_argument("Grid2D: spacings must be positive");
  return {a1, a2, std::vector<Complex>(a1.n * a2.n)};
}

Grid2D Grid2D::sample(const Axis& a1, const Axis& a2,
                      const std::function<Complex(double, double)>& f) {
  Grid2D g = zeros(a1, a2);
  for (std::size_t i1 = 0; i1 < a1.n; ++i1)
    for (std::size_t i2 = 0; i2 < a2.n; ++i2) g(i1, i2) = f(a1.at(i1), a2.at(i2));
  return g;
}

double Grid2D::l2_norm() const {
  double acc = 0.0;
  for (const auto& z : values) acc += std::norm(z);
  return std::sqrt(acc * axis1.spacing * axis2.spacing);
}

double Grid2D::max_abs() const {
  double m = 0.0;
  for (const auto& z : values) m = std::max(m, std::abs(z));
  return m;
}

Grid2D operator-(const Grid2D& a, const Grid2D& b) {
  require_same_grid(a, b);
  Grid2D out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

double l2_rel_err(const Grid2D& a, const Grid2D& b) {
  const double num = (a - b).l2_norm();
  const double den = b.l2_norm();
  return den == 0.0 ? num : num / den;
}

double max_abs_err(const Grid2D& a, const Grid2D& b) { return (a - b).max_abs(); }

Grid2D derivative(const Grid2D& f, unsigned n1, unsigned n2) {
  Grid2D g = f;
  if (n1 > 0)
    for_each_axis1_line(g, [&](const std::vector<Complex>& line) {
      return spectral::derivative(line, f.axis1.spacing, n1);
    });
  if (n2 > 0)
    for_each_axis2_line(g, [&](const std::vector<Complex>& line) {
      return spectral::derivative(line, f.axis2.spacing, n2);
    });
  return g;
}

Grid2D multiply(const Grid2D& f, const std::function<Complex(double, double)>& m) {
  Grid2D g = f;
  for (std::size_t i1 = 0; i1 < f.axis1.n; ++i1)
    for (std::size_t i2 = 0; i2 < f.axis2.n; ++i2)
      g(i1, i2) *= m(f.axis1.at(i1), f.axis2.at(i2));
  return g;
}

Grid2D partial_fourier(const Grid2D& f, double decay_tol) {
  require_symmetric(f.axis1, "partial_fourier");
  require_decay(f, decay_tol, "partial_fourier");
  const std::size_t n = f.axis1.n;
  const double dp = f.axis1.spacing;
  const double dx = 2.0 * std::numbers::pi / (static_cast<double>(n) * dp);
  Grid2D out = f;
  out.axis1 = Axis{-0.5 * static_cast<double>(n) * dx, dx, n};
  const double p_min = f.axis1.min;
  for_each_axis1_line(out, [&](std::vector<Complex> line) {
    for (std::size_t j = 0; j < n; ++j)
      if (j % 2 == 1) line[j] = -line[j];
    auto F = spectral::fft(line);
    for (std::size_t k = 0; k < n; ++k)
      F[k] *= dp * kInvSqrt2Pi * std::exp(-kI * (p_min * out.axis1.at(k)));
    return F;
  });
  return out;
}

Grid2D inverse_partial_fourier(const Grid2D& fhat, double decay_tol) {
  require_symmetric(fhat.axis1, "inverse_partial_fourier");
  require_decay(fhat, decay_tol, "inverse_partial_fourier");
  const std::size_t n = fhat.axis1.n;
  const double dx = fhat.axis1.spacing;
  const double dp = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  Grid2D out = fhat;
  out.axis1 = Axis{-0.5 * static_cast<double>(n) * dp, dp, n};
  const double p_min = out.axis1.min;
  for_each_axis1_line(out, [&](std::vector<Complex> line) {
    for (std::size_t k = 0; k < n; ++k) line[k] *= std::exp(kI * (p_min * fhat.axis1.at(k)));
    auto g = spectral::ifft(line);
    for (std::size_t j = 0; j < n; ++j) g[j] *= (j % 2 == 1 ? -1.0 : 1.0) * dx * kInvSqrt2Pi;
    return g;
  });
  return out;
}

Grid2D brute_Pr_grid(const PolyExp& symbol, const Grid2D& f, unsigned r, double resolution_tol) {
  if (r < 1 || r > 6) throw std::invalid_argument("brute_Pr_grid: order must be in 1..6");
  double tail = 0.0;
  {
    Grid2D probe = f;
    for_each_axis1_line(probe, [&](const std::vector<Complex>& line) {
      tail = std::max(tail, spectral::tail_fraction(line));
      return line;
    });
    for_each_axis2_line(probe, [&](const std::vector<Complex>& line) {
      tail = std::max(tail, spectral::tail_fraction(line));
      return line;
    });
  }
  if (tail > resolution_tol)
    throw std::invalid_argument("brute_Pr_grid: grid under-resolves the test function");

  Grid2D out = Grid2D::zeros(f.axis1, f.axis2);
  for (unsigned j = 0; j <= r; ++j) {
    const PolyExp ds = derivative(symbol, r - j, j);
    if (ds.empty()) continue;
    const Grid2D df = derivative(f, j, r - j);
    const double w = (j % 2 == 0 ? 1.0 : -1.0) * binomial(r, j);
    for (std::size_t i1 = 0; i1 < f.axis1.n; ++i1)
      for (std::size_t i2 = 0; i2 < f.axis2.n; ++i2)
        out(i1, i2) += w * eval(ds, f.axis1.at(i1), f.axis2.at(i2)) * df(i1, i2);
  }
  return out;
}

HamiltonianShape hamiltonian_shape(const LieElement& A, const DarbouxChart& chart) {
  const auto& f = chart.params;
  HamiltonianShape h;
  h.d = A.d;
  switch (chart.kind) {
    case ChartKind::HalfPlaneX: h.mu = A.a * f.alpha; break;
    case ChartKind::HalfPlaneY: h.lambda = A.b * f.beta; break;
    case ChartKind::Cylinder:
      h.mu = A.a * f.alpha;
      h.lambda = A.b * f.beta;
      break;
    case ChartKind::ParaboloidPositive:
    case ChartKind::ParaboloidNegative: {
      const double s = chart.kind == ChartKind::ParaboloidPositive ? 1.0 : -1.0;
      h.kappa = s * A.b * f.gamma;
      h.mu = s * A.a;
      h.lambda = s * A.b * chart.invariant();
      h.c0 = A.c * f.gamma;
      break;
    }
  }
  return h;
}

double SeriesTermRule::mixed(double q) const {
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^{k-1}
  return sign * static_cast<double>(k) * shape.kappa * std::exp(q);
}

double SeriesTermRule::pure(double p, double q) const {
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k
  return shape.mu * std::exp(-q) + sign * (shape.lambda + shape.kappa * p) * std::exp(q);
}

SeriesTermRule series_term_rule(const LieElement& A, const DarbouxChart& chart, unsigned k) {
  if (k < 2) throw std::invalid_argument("series_term_rule: closed forms cover k >= 2");
  return {chart.kind, k, hamiltonian_shape(A, chart)};
}

Grid2D apply_rule(const SeriesTermRule& rule, const Grid2D& g) {
  const Grid2D mixed = derivative(g, rule.k - 1, 1);
  const Grid2D pure = derivative(g, rule.k, 0);
  Grid2D out = Grid2D::zeros(g.axis1, g.axis2);
  for (std::size_t i1 = 0; i1 < g.axis1.n; ++i1)
    for (std::size_t i2 = 0; i2 < g.axis2.n; ++i2) {
      const double p = g.axis1.at(i1);
      const double q = g.axis2.at(i2);
      out(i1, i2) = rule.mixed(q) * mixed(i1, i2) + rule.pure(p, q) * pure(i1, i2);
    }
  return out;
}

double nominal_truncation_bound(double max_abs_x, unsigned order) {
  return exp_remainder(0.5 * max_abs_x, order) / std::exp(0.5 * max_abs_x);
}

Grid2D ell_series(const LieElement& A, const DarbouxChart& chart, const Grid2D& fhat,
                  const SeriesOptions& options) {
  const unsigned R = options.order;
  if (R < 4) throw std::invalid_argument("ell_series: truncation order must be >= 4");
  if (nominal_truncation_bound(fhat.axis1.max_abs(), R) > options.truncation_tol)
    throw std::invalid_argument("ell_series: truncation bound exceeds tolerance; widen R or shrink x-range");

  const HamiltonianShape sh = hamiltonian_shape(A, chart);
  std::vector<SeriesTermRule> rules;
  for (unsigned k = 2; k <= R; ++k) rules.push_back(series_term_rule(A, chart, k));

  const Grid2D fx = derivative(fhat, 1, 0);
  const Grid2D fq = derivative(fhat, 0, 1);
  const Complex nu = 1.0 / Complex(0.0, 2.0);

  Grid2D out = Grid2D::zeros(fhat.axis1, fhat.axis2);
  for (std::size_t i1 = 0; i1 < fhat.axis1.n; ++i1) {
    const double x = fhat.axis1.at(i1);
    const Complex ix = kI * x;
    for (std::size_t i2 = 0; i2 < fhat.axis2.n; ++i2) {
      const double q = fhat.axis2.at(i2);
      const double E = std::exp(q);
      const Complex f = fhat(i1, i2);
      const Complex f_x = fx(i1, i2);
      const Complex f_q = fq(i1, i2);

      // r = 0:  F_p(A~ g) with F_p(p g) = i d_x f.
      Complex sum = (sh.d + sh.kappa * E) * kI * f_x + (sh.mu / E + sh.lambda * E + sh.c0) * f;

      // r = 1:  {A~, g} = (d + kappa e^q) g_q + [mu e^{-q} - (lambda + kappa p) e^q] g_p.
      Complex weight = nu;
      {
        const Complex t = (sh.d + sh.kappa * E) * f_q + (sh.mu / E - sh.lambda * E) * ix * f -
                          sh.kappa * E * kI * (kI * f + ix * f_x);
        sum += weight * t;
      }

      // r >= 2 from the term rules: d_p^k g -> (ix)^k f, p h -> i d_x(h^).
      Complex ixk_1 = ix;  // (ix)^{k-1}
      for (const auto& rule : rules) {
        const double k = static_cast<double>(rule.k);
        weight *= nu / k;
        const Complex ixk = ixk_1 * ix;
        const double pure0 = rule.pure(0.0, q);
        const double pure_p = rule.pure(1.0, q) - pure0;  // coefficient of p
        Complex t = rule.mixed(q) * ixk_1 * f_q + pure0 * ixk * f;
        t += pure_p * kI * (kI * k * ixk_1 * f + ixk * f_x);
        sum += weight * t;
        ixk_1 = ixk;
      }
      out(i1, i2) = kI * sum;
    }
  }
  return out;
}

Grid2D ell_closed_form(const LieElement& A, const DarbouxChart& chart, const Grid2D& fhat,
                       bool add_half_divergence) {
  const HamiltonianShape sh = hamiltonian_shape(A, chart);
  const Grid2D fx = derivative(fhat, 1, 0);
  const Grid2D fq = derivative(fhat, 0, 1);
  Grid2D out = Grid2D::zeros(fhat.axis1, fhat.axis2);
  for (std::size_t i1 = 0; i1 < fhat.axis1.n; ++i1)
    for (std::size_t i2 = 0; i2 < fhat.axis2.n; ++i2) {
      const double s = fhat.axis2.at(i2) - 0.5 * fhat.axis1.at(i1);
      const double es = std::exp(s);
      Complex val = (sh.d + sh.kappa * es) * (0.5 * fq(i1, i2) - fx(i1, i2)) +
                    kI * (sh.mu / es + sh.lambda * es + sh.c0) * fhat(i1, i2);
      if (add_half_divergence) val += 0.5 * sh.kappa * es * fhat(i1, i2);
      out(i1, i2) = val;
    }
  return out;
}

double series_truncation_bound_l2(const LieElement& A, const DarbouxChart& chart,
                                  const Grid2D& fhat, unsigned order) {
  const HamiltonianShape sh = hamiltonian_shape(A, chart);
  const Grid2D fx = derivative(fhat, 1, 0);
  const Grid2D fq = derivative(fhat, 0, 1);
  double acc = 0.0;
  for (std::size_t i1 = 0; i1 < fhat.axis1.n; ++i1) {
    const double y = 0.5 * fhat.axis1.at(i1);
    const double rho = exp_remainder(y, order);
    const double rho_prev = exp_remainder(y, order - 1);
    for (std::size_t i2 = 0; i2 < fhat.axis2.n; ++i2) {
      const double E = std::exp(fhat.axis2.at(i2));
      const double af = std::abs(fhat(i1, i2));
      const double b = (std::abs(sh.mu) / E + std::abs(sh.lambda) * E) * af * rho +
                       std::abs(sh.kappa) * E *
                           (0.5 * (std::abs(fq(i1, i2)) + af) * rho_prev + std::abs(fx(i1, i2)) * rho);
      acc += b * b;
    }
  }
  return std::sqrt(acc * fhat.axis1.spacing * fhat.axis2.spacing);
}

Complex GaussianSpec::operator()(double a1, double a2) const {
  const double u1 = (a1 - c1) / w1;
  const double u2 = (a2 - c2) / w2;
  return amp * std::exp(-0.5 * (u1 * u1 + u2 * u2)) * std::exp(kI * (k1 * a1 + k2 * a2));
}

Complex GaussianSpec::derivative(unsigned n1, unsigned n2, double a1, double a2) const {
  if (k1 != 0.0 || k2 != 0.0)
    throw std::invalid_argument("GaussianSpec: analytic derivatives need zero wavenumbers");
  const Axis ax1{a1, 1.0, 1};
  const Axis ax2{a2, 1.0, 1};
  return amp * gaussian_derivative_table(ax1, c1, w1, n1)[n1][0] *
         gaussian_derivative_table(ax2, c2, w2, n2)[n2][0];
}

Theorem44Report verify_theorem44(const LieElement& A, const DarbouxChart& chart,
                                 const GaussianSpec& f, const Axis& x_axis, const Axis& q_axis,
                                 const SeriesOptions& options) {
  const Grid2D fhat = Grid2D::sample(x_axis, q_axis, [&](double x, double q) { return f(x, q); });
  const Grid2D series = ell_series(A, chart, fhat, options);
  const Grid2D closed = ell_closed_form(A, chart, fhat, false);
  const Grid2D closed_half = ell_closed_form(A, chart, fhat, true);

  Theorem44Report rep;
  rep.l2_rel_err = l2_rel_err(series, closed);
  rep.max_err = max_abs_err(series, closed);
  rep.l2_rel_err_half_divergence = l2_rel_err(series, closed_half);
  rep.truncation_bound = nominal_truncation_bound(x_axis.max_abs(), options.order);
  rep.truncation_bound_l2 = series_truncation_bound_l2(A, chart, fhat, options.order);
  rep.err_l2_abs_half_divergence = (series - closed_half).l2_norm();
  const double noise_floor = 1e-12 * std::max(closed_half.l2_norm(), fhat.l2_norm());
  rep.within_bound = rep.err_l2_abs_half_divergence <= rep.truncation_bound_l2 + noise_floor;
  return rep;
}

Remark45Report verify_remark45(const LieElement& A, const DarbouxChart& chart,
                               const std::function<Complex(double, double)>& g_st,
                               const Axis& x_axis, const Axis& q_axis,
                               const std::vector<double>& fiber_ts) {
  const double dx = x_axis.spacing;
  const double dq = q_axis.spacing;
  if (std::abs(dx - 2.0 * dq) > 1e-12 * dx)
    throw std::invalid_argument("verify_remark45: needs x-spacing equal to twice the q-spacing");

  const Grid2D fhat = Grid2D::sample(x_axis, q_axis, [&](double x, double q) {
    return g_st(q - 0.5 * x, q + 0.5 * x);
  });
  const Grid2D closed = ell_closed_form(A, chart, fhat, false);
  const FirstOrderOp op = ell_hat(A, chart);

  // Node (i1, i2) sits on t = t0 + (i1 + i2) dq and s = s0 + (i2 - i1) dq.
  const double t0 = q_axis.min + 0.5 * x_axis.min;
  double num = 0.0;
  double den = 0.0;
  Remark45Report rep;
  for (double t : fiber_ts) {
    const long m = std::lround((t - t0) / dq);
    std::vector<std::pair<std::size_t, std::size_t>> nodes;
    for (long i1 = static_cast<long>(x_axis.n) - 1; i1 >= 0; --i1) {
      const long i2 = m - i1;
      if (i2 >= 0 && i2 < static_cast<long>(q_axis.n))
        nodes.emplace_back(static_cast<std::size_t>(i1), static_cast<std::size_t>(i2));
    }
    if (nodes.size() < 8)
      throw std::invalid_argument("verify_remark45: t-fiber leaves the grid (fewer than 8 nodes)");

    const auto [i1_first, i2_first] = nodes.front();
    GridFn1 fiber{q_axis.at(i2_first) - 0.5 * x_axis.at(i1_first), dx, {}};
    for (const auto& [i1, i2] : nodes) fiber.values.push_back(fhat(i1, i2));
    const GridFn1 applied = apply_op(op, fiber, DerivativeScheme::Spectral);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Complex ref = closed(nodes[k].first, nodes[k].second);
      const double e = std::abs(applied.values[k] - ref);
      num += e * e;
      den += std::norm(ref);
      rep.max_err = std::max(rep.max_err, e);
    }
    ++rep.fibers;
    rep.points += nodes.size();
  }
  rep.l2_rel_err = den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
  return rep;
}

Grid2D star_gaussians(const GaussianSpec& u, const GaussianSpec& v, const Axis& p_axis,
                      const Axis& q_axis, unsigned order, bool conjugate_inputs) {
  if (u.k1 != 0.0 || u.k2 != 0.0 || v.k1 != 0.0 || v.k2 != 0.0)
    throw std::invalid_argument("star_gaussians: wavenumbers must be zero");
  const auto up = gaussian_derivative_table(p_axis, u.c1, u.w1, order);
  const auto uq = gaussian_derivative_table(q_axis, u.c2, u.w2, order);
  const auto vp = gaussian_derivative_table(p_axis, v.c1, v.w1, order);
  const auto vq = gaussian_derivative_table(q_axis, v.c2, v.w2, order);
  const Complex amp = conjugate_inputs ? std::conj(u.amp) * std::conj(v.amp) : u.amp * v.amp;
  const Complex nu = 1.0 / Complex(0.0, 2.0);

  std::vector<std::vector<double>> coeff(order + 1);
  std::vector<Complex> weight(order + 1);
  weight[0] = 1.0;
  for (unsigned r = 0; r <= order; ++r) {
    if (r > 0) weight[r] = weight[r - 1] * nu / static_cast<double>(r);
    for (unsigned j = 0; j <= r; ++j) coeff[r].push_back((j % 2 == 0 ? 1.0 : -1.0) * binomial(r, j));
  }

  Grid2D out = Grid2D::zeros(p_axis, q_axis);
  for (std::size_t i1 = 0; i1 < p_axis.n; ++i1)
    for (std::size_t i2 = 0; i2 < q_axis.n; ++i2) {
      Complex sum{};
      for (unsigned r = 0; r <= order; ++r) {
        double pr = 0.0;
        for (unsigned j = 0; j <= r; ++j)
          pr += coeff[r][j] * up[r - j][i1] * uq[j][i2] * vq[r - j][i2] * vp[j][i1];
        sum += weight[r] * pr;
      }
      out(i1, i2) = amp * sum;
    }
  return out;
}

SchwartzReport schwartz_star_properties(const GaussianSpec& u, const GaussianSpec& v,
                                        const Axis& p_axis, const Axis& q_axis, unsigned order,
                                        double truncation_tol) {
  const Grid2D uv = star_gaussians(u, v, p_axis, q_axis, order);
  const Grid2D uv_prev = star_gaussians(u, v, p_axis, q_axis, order - 1);
  SchwartzReport rep;
  rep.last_term_rel = max_abs_err(uv, uv_prev) / uv.max_abs();
  if (rep.last_term_rel > truncation_tol)
    throw std::invalid_argument("schwartz_star_properties: series not converged at this order");

  Complex int_star{};
  Complex int_prod{};
  for (std::size_t i1 = 0; i1 < p_axis.n; ++i1)
    for (std::size_t i2 = 0; i2 < q_axis.n; ++i2) {
      int_star += uv(i1, i2);
      int_prod += u(p_axis.at(i1), q_axis.at(i2)) * v(p_axis.at(i1), q_axis.at(i2));
    }
  rep.integral_rel_err = std::abs(int_star - int_prod) / std::abs(int_prod);

  const Grid2D lhs = star_gaussians(u, v, p_axis, q_axis, order, true);
  Grid2D rhs = star_gaussians(v, u, p_axis, q_axis, order);
  for (auto& z : rhs.values) z = std::conj(z);
  rep.conjugation_max_err = max_abs_err(lhs, rhs) / rhs.max_abs();
  return rep;
}

}  // namespace diamond::fourier
