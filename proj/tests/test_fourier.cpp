#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "diamond/fourier.hpp"
#include "diamond/spectral.hpp"

using namespace diamond;
using namespace diamond::fourier;
using L = LieElement;

namespace {

const Complex I{0.0, 1.0};

struct NamedChart {
  const char* name;
  DualFunctional F;
};

const NamedChart kCharts[] = {{"half-plane-x", {1.2, 0, 0, 0.3}},
                              {"half-plane-y", {0, 0.8, 0, -0.4}},
                              {"cylinder", {1.1, -0.9, 0, 0.2}},
                              {"paraboloid+", {0.6, 0.5, 1.3, -0.2}},
                              {"paraboloid-", {-0.6, 0.5, 1.3, -0.2}}};

const L kA{0.7, -0.4, 0.3, 0.5};

// P^r(H, g) with exact symbol derivatives and analytic Gaussian derivatives.
Grid2D analytic_Pr(const PolyExp& H, const GaussianSpec& g, const Axis& pa, const Axis& qa, unsigned r) {
  Grid2D out = Grid2D::zeros(pa, qa);
  double binom = 1.0;
  for (unsigned j = 0; j <= r; ++j) {
    if (j > 0) binom = binom * static_cast<double>(r - j + 1) / j;
    const PolyExp dH = derivative(H, r - j, j);
    if (dH.empty()) continue;
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i1 = 0; i1 < pa.n; ++i1)
      for (std::size_t i2 = 0; i2 < qa.n; ++i2) {
        const double p = pa.at(i1), q = qa.at(i2);
        out(i1, i2) += sign * binom * eval(dH, p, q) * g.derivative(j, r - j, p, q);
      }
  }
  return out;
}

Grid2D gaussian_grid(const GaussianSpec& g, const Axis& a1, const Axis& a2) {
  return Grid2D::sample(a1, a2, [&](double x, double y) { return g(x, y); });
}

}  // namespace

TEST_CASE("spectral helpers") {
  std::vector<Complex> x(64);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (auto& z : x) z = {n(rng), n(rng)};
  auto back = spectral::ifft(spectral::fft(x));
  for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(std::abs(back[i] / 64.0 - x[i]) < 1e-13);

  const double h = 2.0 * std::numbers::pi / 64;
  std::vector<Complex> s(64);
  for (std::size_t i = 0; i < 64; ++i) s[i] = std::sin(3.0 * h * i);
  const auto d2 = spectral::derivative(s, h, 2);
  for (std::size_t i = 0; i < 64; ++i) REQUIRE(std::abs(d2[i] + 9.0 * s[i]) < 1e-11);

  CHECK(spectral::tail_fraction(s) < 1e-12);
  CHECK(spectral::tail_fraction(x) > 0.1);
}

TEST_CASE("partial Fourier transform") {
  const Axis pa = Axis::symmetric(8.0 * std::sqrt(2.0 * std::numbers::pi / 16.0) * 2.0, 128);
  const Axis qa = Axis::symmetric(4.0, 64);
  auto g = [](double q) { return std::exp(-q * q) * (1.0 + 0.5 * std::sin(q)); };
  const Grid2D f = Grid2D::sample(pa, qa, [&](double p, double q) { return std::exp(-0.5 * p * p) * g(q); });
  const Grid2D fh = partial_fourier(f);
  CHECK(std::abs(fh.axis1.spacing - 2.0 * std::numbers::pi / (128 * pa.spacing)) < 1e-15);
  CHECK(fh.axis1.min == doctest::Approx(-64 * fh.axis1.spacing));
  const Grid2D want = Grid2D::sample(fh.axis1, qa, [&](double x, double q) { return std::exp(-0.5 * x * x) * g(q); });
  CHECK(l2_rel_err(fh, want) <= 1e-10);

  // Round trip on a smooth random combination of shifted Gaussians.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double c[6];
  for (double& v : c) v = u(rng);
  const Grid2D r = Grid2D::sample(pa, qa, [&](double p, double q) {
    return Complex(c[0], c[1]) * std::exp(-0.5 * (p - c[2]) * (p - c[2]) - (q - c[3]) * (q - c[3])) +
           c[4] * std::exp(-0.5 * (p + c[5]) * (p + c[5]) - q * q);
  });
  CHECK(l2_rel_err(inverse_partial_fourier(partial_fourier(r)), r) <= 1e-12);

  // F(p v) = i d_x F(v)  and  d_p F^{-1}(f) = i F^{-1}(x f).
  const Grid2D pv = multiply(r, [](double p, double) { return Complex(p); });
  const Grid2D lhs = partial_fourier(pv);
  Grid2D rhs = derivative(partial_fourier(r), 1, 0);
  for (auto& z : rhs.values) z *= I;
  CHECK(l2_rel_err(lhs, rhs) <= 1e-8);

  const Grid2D fr = partial_fourier(r);
  Grid2D dinv = derivative(inverse_partial_fourier(fr), 1, 0);
  Grid2D xf = inverse_partial_fourier(multiply(fr, [](double x, double) { return Complex(x); }));
  for (auto& z : xf.values) z *= I;
  CHECK(l2_rel_err(dinv, xf) <= 1e-8);

  const Grid2D wide = Grid2D::sample(pa, qa, [](double p, double) { return Complex(std::exp(-0.01 * p * p)); });
  CHECK_THROWS_AS(partial_fourier(wide), std::invalid_argument);
  const Grid2D odd = Grid2D::sample(Axis::symmetric(8.0, 96), qa, [](double p, double) { return Complex(std::exp(-p * p)); });
  CHECK_THROWS_AS(partial_fourier(odd), std::invalid_argument);
  const Grid2D shifted = Grid2D::sample(Axis::periodic(-6.0, 10.0, 128), qa, [](double p, double) { return Complex(std::exp(-p * p)); });
  CHECK_THROWS_AS(partial_fourier(shifted), std::invalid_argument);
}

TEST_CASE("brute bidifferential operator") {
  const Axis pa = Axis::symmetric(8.0, 256), qa = Axis::symmetric(8.0, 256);
  const GaussianSpec gs{1.0, 0.2, -0.3, 1.0, 1.0};
  const Grid2D g = gaussian_grid(gs, pa, qa);

  const DarbouxChart pos = make_chart(kCharts[3].F);
  const PolyExp H = hamiltonian(kA, pos);
  // r = 1 is the grid Poisson bracket.
  const Grid2D gp = derivative(g, 1, 0), gq = derivative(g, 0, 1);
  Grid2D pb = Grid2D::zeros(pa, qa);
  for (std::size_t i = 0; i < pa.n; ++i)
    for (std::size_t j = 0; j < qa.n; ++j) {
      const double p = pa.at(i), q = qa.at(j);
      pb(i, j) = eval(d_dp(H), p, q) * gq(i, j) - eval(d_dq(H), p, q) * gp(i, j);
    }
  CHECK(l2_rel_err(brute_Pr_grid(H, g, 1), pb) <= 1e-8);

  // Half-plane chart, r = 3: a alpha e^{-q} d^3_p g.
  const double a = 0.7, alpha = 1.2;
  const PolyExp H2 = hamiltonian(L{a, 0, 0, 0.5}, make_chart({alpha, 0, 0, 0}));
  const Grid2D want3 = Grid2D::sample(pa, qa, [&](double p, double q) {
    return a * alpha * std::exp(-q) * gs.derivative(3, 0, p, q);
  });
  CHECK(l2_rel_err(brute_Pr_grid(H2, g, 3), want3) <= 1e-7);

  // Paraboloid chart, r = 2: -2 b gamma e^q g_qp + [a e^{-q} + b(C + gamma p) e^q] g_pp.
  const auto& F = kCharts[3].F;
  const double C = F.alpha * F.beta - F.gamma * F.delta;
  const Grid2D want2 = Grid2D::sample(pa, qa, [&](double p, double q) {
    return -2.0 * kA.b * F.gamma * std::exp(q) * gs.derivative(1, 1, p, q) +
           (kA.a * std::exp(-q) + kA.b * (C + F.gamma * p) * std::exp(q)) * gs.derivative(2, 0, p, q);
  });
  CHECK(l2_rel_err(brute_Pr_grid(H, g, 2), want2) <= 1e-7);

  CHECK_THROWS_AS(brute_Pr_grid(H, g, 7), std::invalid_argument);
  const Axis coarse = Axis::symmetric(8.0, 64);
  const Grid2D sharp = gaussian_grid({1.0, 0.0, 0.0, 0.08, 0.08}, coarse, coarse);
  CHECK_THROWS_AS(brute_Pr_grid(H, sharp, 2), std::invalid_argument);
}

TEST_CASE("term rules against analytic contractions") {
  const Axis pa = Axis::symmetric(8.0, 256), qa = Axis::symmetric(8.0, 256);
  const GaussianSpec gs{1.0, 0.0, 0.0, 1.0, 1.0};
  const Grid2D g = gaussian_grid(gs, pa, qa);
  for (const auto& c : kCharts) {
    CAPTURE(c.name);
    const DarbouxChart chart = make_chart(c.F);
    const PolyExp H = hamiltonian(kA, chart);
    for (unsigned k = 2; k <= 6; ++k) {
      CAPTURE(k);
      const Grid2D want = analytic_Pr(H, gs, pa, qa, k);
      CHECK(l2_rel_err(apply_rule(series_term_rule(kA, chart, k), g), want) <= (k < 6 ? 1e-7 : 2e-6));
      if (k <= 4) CHECK(l2_rel_err(apply_rule(series_term_rule(kA, chart, k), g), brute_Pr_grid(H, g, k)) <= 1e-7);
    }
  }
  CHECK_THROWS_AS(series_term_rule(kA, make_chart(kCharts[0].F), 1), std::invalid_argument);
}

TEST_CASE("series in the x-domain") {
  const Axis xa = Axis::symmetric(8.0, 256), qa = Axis::symmetric(4.0, 256);
  const GaussianSpec fs{1.0, 0.0, 0.0, 1.0, 0.5, 0.0, 0.3};
  const Grid2D f = gaussian_grid(fs, xa, qa);

  // Only the r = 0, 1 terms survive for A = T.
  const DarbouxChart pos = make_chart(kCharts[3].F);
  const Grid2D t = ell_series(L::T(), pos, f);
  CHECK(l2_rel_err(t, ell_closed_form(L::T(), pos, f)) <= 1e-13);

  const Grid2D z = ell_series(L{}, pos, f);
  CHECK(z.max_abs() == 0.0);

  // Half-plane: the partial sums converge to the closed form as R grows.
  const DarbouxChart om2 = make_chart(kCharts[0].F);
  const Grid2D closed = ell_closed_form(kA, om2, f);
  double prev = 1e300;
  for (unsigned R : {8u, 10u, 12u, 14u, 16u, 18u, 20u}) {
    const double e = l2_rel_err(ell_series(kA, om2, f, {R, 1.0}), closed);
    CHECK(e <= std::max(prev, 1e-14));
    prev = e;
  }
  CHECK(prev <= 1e-13);

  CHECK_THROWS_AS(ell_series(kA, om2, f, {3, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ell_series(kA, om2, f, {6, 1e-6}), std::invalid_argument);
  CHECK(nominal_truncation_bound(8.0, 20) == doctest::Approx(std::pow(4.0, 21) / std::tgamma(22.0)));
}

TEST_CASE("series vs closed form, half-plane and cylinder charts") {
  const Axis xa = Axis::symmetric(8.0, 256), qa = Axis::symmetric(4.0, 256);
  const GaussianSpec fs{1.0, 0.0, 0.0, 1.0, 0.5, 0.0, 0.3};
  for (int i = 0; i < 3; ++i) {
    CAPTURE(kCharts[i].name);
    const Theorem44Report r = verify_theorem44(kA, make_chart(kCharts[i].F), fs, xa, qa);
    CHECK(r.l2_rel_err <= 1e-6);
    CHECK(r.within_bound);
  }
  const Theorem44Report zero = verify_theorem44(L{}, make_chart(kCharts[2].F), fs, xa, qa);
  CHECK(zero.l2_rel_err == 0.0);
  CHECK(zero.max_err == 0.0);
}

TEST_CASE("series vs closed form, paraboloid charts: closed form misses (kappa/2) e^s f" *
          doctest::should_fail()) {
  const Axis xa = Axis::symmetric(8.0, 256), qa = Axis::symmetric(4.0, 256);
  const GaussianSpec fs{1.0, 0.0, 0.0, 1.0, 0.5, 0.0, 0.3};
  for (int i = 3; i < 5; ++i) {
    const Theorem44Report r = verify_theorem44(kA, make_chart(kCharts[i].F), fs, xa, qa);
    CHECK(r.l2_rel_err <= 1e-6);
  }
}

TEST_CASE("series matches the closed form with the half-divergence term on every chart") {
  const Axis xa = Axis::symmetric(8.0, 256), qa = Axis::symmetric(4.0, 256);
  const GaussianSpec fs{1.0, 0.0, 0.0, 1.0, 0.5, 0.0, 0.3};
  for (const auto& c : kCharts) {
    CAPTURE(c.name);
    const Theorem44Report r = verify_theorem44(kA, make_chart(c.F), fs, xa, qa);
    CHECK(r.l2_rel_err_half_divergence <= 1e-12);
    CHECK(r.within_bound);
  }
}

TEST_CASE("p-domain oracle: sum P^r in p, then transform") {
  // x-grid [-8, 8) with 256 points <-> p-grid of spacing 2 pi / 16.
  const std::size_t n = 256;
  const double dp = 2.0 * std::numbers::pi / 16.0;
  const Axis pa{-0.5 * n * dp, dp, n};
  const Axis qa = Axis::symmetric(4.0, 128);
  const GaussianSpec g{1.0, 0.0, 0.0, 1.0, 0.5};
  for (const auto& c : kCharts) {
    CAPTURE(c.name);
    const DarbouxChart chart = make_chart(c.F);
    const PolyExp H = hamiltonian(kA, chart);
    Grid2D sum = Grid2D::sample(pa, qa, [&](double p, double q) { return eval(H, p, q) * g(p, q); });
    Complex w = 1.0;
    for (unsigned r = 1; r <= 30; ++r) {
      w *= 1.0 / (2.0 * I * static_cast<double>(r));
      const Grid2D pr = analytic_Pr(H, g, pa, qa, r);
      for (std::size_t k = 0; k < sum.values.size(); ++k) sum.values[k] += w * pr.values[k];
    }
    for (auto& z : sum.values) z *= I;
    const Grid2D lhs = partial_fourier(sum);
    const Grid2D fhat = partial_fourier(gaussian_grid(g, pa, qa));
    const Grid2D corrected = ell_closed_form(kA, chart, fhat, true);
    CHECK(l2_rel_err(lhs, corrected) <= 1e-9);
    const double kappa = hamiltonian_shape(kA, chart).kappa;
    if (kappa == 0.0) CHECK(l2_rel_err(lhs, ell_closed_form(kA, chart, fhat)) <= 1e-9);
    else CHECK(l2_rel_err(lhs, ell_closed_form(kA, chart, fhat)) > 1e-3);
  }
}

TEST_CASE("cross-path check in (s, t)") {
  const Axis xa = Axis::symmetric(8.0, 256), qa = Axis::symmetric(4.0, 256);
  auto g = [](double s, double t) { return Complex(std::exp(-s * s - t * t)); };
  for (const auto& c : kCharts) {
    CAPTURE(c.name);
    const Remark45Report r = verify_remark45(kA, make_chart(c.F), g, xa, qa);
    CHECK(r.l2_rel_err <= 1e-6);
    CHECK(r.fibers == 5);
  }
  // Half-plane-y: d d_s + i b beta e^s on each fiber.
  const Remark45Report y = verify_remark45(L{0, 0.6, 0, -0.3}, make_chart(kCharts[1].F), g, xa, qa, {0.25});
  CHECK(y.l2_rel_err <= 1e-6);

  const Remark45Report flat = verify_remark45(L::T(), make_chart(kCharts[3].F),
                                              [](double, double) { return Complex(1.0); }, xa, qa);
  CHECK(flat.max_err <= 1e-12);

  CHECK_THROWS_AS(verify_remark45(kA, make_chart(kCharts[0].F), g, xa, Axis::symmetric(4.0, 128)),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_remark45(kA, make_chart(kCharts[0].F), g, xa, qa, {7.9}), std::invalid_argument);
}

TEST_CASE("Schwartz-class star properties") {
  const Axis ax = Axis::symmetric(8.0, 256);
  const GaussianSpec u{1.0, 0.0, 0.0, 2.0, 2.0};
  const SchwartzReport same = schwartz_star_properties(u, u, ax, ax);
  CHECK(same.integral_rel_err <= 1e-6);
  CHECK(same.conjugation_max_err <= 1e-8);

  const GaussianSpec a{1.5, 0.4, -0.3, 1.8, 2.1}, b{-0.7, -0.2, 0.5, 2.2, 1.9};
  const SchwartzReport real = schwartz_star_properties(a, b, ax, ax);
  CHECK(real.integral_rel_err <= 1e-6);
  CHECK(real.conjugation_max_err <= 1e-8);
  CHECK(real.last_term_rel <= 1e-10);

  // A very wide Gaussian acts as the unit on the interior of the window.
  const GaussianSpec one{1.0, 0.0, 0.0, 200.0, 200.0};
  const Grid2D uv = star_gaussians(a, one, ax, ax, 20);
  double worst = 0.0;
  for (std::size_t i = 0; i < ax.n; ++i)
    for (std::size_t j = 0; j < ax.n; ++j)
      if (std::abs(ax.at(i)) < 4.0 && std::abs(ax.at(j)) < 4.0)
        worst = std::max(worst, std::abs(uv(i, j) - a(ax.at(i), ax.at(j))));
  CHECK(worst <= 1e-3);

  CHECK_THROWS_AS(schwartz_star_properties({1.0, 0, 0, 0.5, 0.5}, {1.0, 0, 0, 0.5, 0.5}, ax, ax),
                  std::invalid_argument);
}
