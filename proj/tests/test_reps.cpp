#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "diamond/reps.hpp"
#include "diamond/starq.hpp"

using namespace diamond;
using L = LieElement;

namespace {

const Complex I{0.0, 1.0};

const DualFunctional kFunctionals[] = {
    {1.3, 0, 0, 0.2}, {0, -0.7, 0, 0.4}, {-1.1, 0.6, 0, -0.3}, {0.8, -0.5, 1.2, 0.3}, {-0.8, -0.5, 1.2, 0.3}};

GridFn1 gaussian(double lo, double hi, std::size_t n, double c = 0.0, double w = 1.0, double k = 0.0) {
  return GridFn1::sample(lo, hi, n, [=](double s) {
    const double u = (s - c) / w;
    return std::exp(-0.5 * u * u) * std::exp(I * (k * s));
  });
}

double masked(const FlowResult& a, const GridFn1& ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (a.left_domain[i]) continue;
    num += std::norm(a.f.values[i] - ref.values[i]);
    den += std::norm(ref.values[i]);
  }
  return std::sqrt(num / den);
}

// n forward Euler steps of f' = O f with spectral derivatives.
GridFn1 euler(const FirstOrderOp& O, GridFn1 f, double tau, std::size_t n) {
  const double h = tau / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const GridFn1 df = apply_op(O, f);
    for (std::size_t i = 0; i < f.size(); ++i) f.values[i] += h * df.values[i];
  }
  return f;
}

}  // namespace

TEST_CASE("operator examples") {
  const FirstOrderOp x2 = ell_hat(L::X(), make_chart({1, 0, 0, 0}));
  CHECK(x2.v.empty());
  CHECK(x2.w == ExpPoly1::exp_s(1.0, -1.0));

  const FirstOrderOp t5 = ell_hat(L::T(), make_chart({1, 1, 1, 0}));
  CHECK(t5.v == ExpPoly1::constant(1.0));
  CHECK(t5.w.empty());

  CHECK(ell_hat(L{}, make_chart({1, 1, 1, 0})).is_zero());
  CHECK_THROWS_AS(ExpPoly1(PolyExp::p()), std::invalid_argument);
}

TEST_CASE("operators on each chart kind") {
  const L A{0.5, -1.5, 0.75, 2.0};
  const double al = 0.8, be = -0.5, ga = 1.2, de = 0.3, C = al * be - ga * de;
  const FirstOrderOp pos = ell_hat(A, make_chart({al, be, ga, de}));
  CHECK(pos.v == ExpPoly1::constant(A.d) + ExpPoly1::exp_s(A.b * ga, 1.0));
  CHECK(pos.w.max_abs_coeff() > 0.0);
  CHECK(std::abs(pos.w(0.4) - (A.a * std::exp(-0.4) + A.b * C * std::exp(0.4) + A.c * ga)) < 1e-14);

  const FirstOrderOp neg = ell_hat(A, make_chart({-al, be, ga, de}));
  const double Cn = -al * be - ga * de;
  CHECK(std::abs(neg.v(0.4) - (A.d - A.b * ga * std::exp(0.4))) < 1e-14);
  CHECK(std::abs(neg.w(0.4) - (-A.a * std::exp(-0.4) - A.b * Cn * std::exp(0.4) + A.c * ga)) < 1e-14);

  const FirstOrderOp cyl = ell_hat(A, make_chart({al, be, 0, de}));
  CHECK(cyl.v == ExpPoly1::constant(A.d));
  CHECK(std::abs(cyl.w(-0.3) - (A.a * al * std::exp(0.3) + A.b * be * std::exp(-0.3))) < 1e-14);
}

TEST_CASE("ell_hat is linear") {
  const L A{0.5, -1.25, 2.0, 0.75}, B{-1.5, 0.25, 0.5, 1.0};
  for (const auto& F : kFunctionals) {
    const DarbouxChart chart = make_chart(F);
    const FirstOrderOp lhs = ell_hat(2.0 * A + 3.0 * B, chart);
    const FirstOrderOp rhs = 2.0 * ell_hat(A, chart) + 3.0 * ell_hat(B, chart);
    CHECK((lhs - rhs).max_abs_coeff() <= 1e-15);
  }
}

TEST_CASE("operator commutator") {
  const FirstOrderOp ds{ExpPoly1::constant(1.0), {}};
  const FirstOrderOp mul{{}, ExpPoly1::exp_s(1.0, 1.0)};
  const FirstOrderOp c = op_commutator(ds, mul);
  CHECK(c.v.empty());
  CHECK(c.w == ExpPoly1::exp_s(1.0, 1.0));

  const FirstOrderOp O = ell_hat(L{0.3, 0.2, 0.1, 0.9}, make_chart({0.8, -0.5, 1.2, 0.3}));
  CHECK(op_commutator(O, O).is_zero());

  const double alpha = 1.7;
  const DarbouxChart om2 = make_chart({alpha, 0, 0, 0});
  const FirstOrderOp xt = op_commutator(ell_hat(L::X(), om2), ell_hat(L::T(), om2));
  CHECK(xt == ell_hat(L::X(), om2));
  CHECK(xt.w == ExpPoly1::exp_s(alpha, -1.0));
}

TEST_CASE("commutator matches composition on a grid") {
  const DarbouxChart chart = make_chart({0.8, -0.5, 1.2, 0.3});
  const FirstOrderOp O1 = ell_hat(L{0.3, 0.2, 0.1, 0.9}, chart);
  const FirstOrderOp O2 = ell_hat(L{-0.4, 0.5, 0.7, -0.2}, chart);
  const GridFn1 f = gaussian(-12.0, 8.0, 801, -2.0, 0.8);
  const GridFn1 a = apply_op(O1, apply_op(O2, f));
  const GridFn1 b = apply_op(O2, apply_op(O1, f));
  const GridFn1 c = apply_op(op_commutator(O1, O2), f);
  GridFn1 diff = a;
  for (std::size_t i = 0; i < f.size(); ++i) diff.values[i] -= b.values[i];
  CHECK(l2_rel_diff(diff, c) <= 1e-8);
}

TEST_CASE("homomorphism") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& F : kFunctionals) {
    const DarbouxChart chart = make_chart(F);
    for (int i = 0; i < 500; ++i) {
      const L A{u(rng), u(rng), u(rng), u(rng)}, B{u(rng), u(rng), u(rng), u(rng)};
      REQUIRE(homomorphism_residual(A, B, chart).max_abs_coeff() <= 1e-12);
      REQUIRE(homomorphism_residual(A, A, chart).is_zero());
    }
  }
  const DarbouxChart pos = make_chart({0.8, -0.5, 1.2, 0.3});
  CHECK(op_commutator(ell_hat(L::Y(), pos), ell_hat(L::T(), pos)) == ell_hat(-L::Y(), pos));
}

TEST_CASE("apply_op") {
  const double k = 3.0;
  const GridFn1 wave = GridFn1::sample_periodic(0.0, 2.0 * std::numbers::pi, 64,
                                                [&](double s) { return std::exp(I * (k * s)); });
  const GridFn1 d = apply_op({ExpPoly1::constant(1.0), {}}, wave);
  GridFn1 want = wave;
  for (auto& z : want.values) z *= I * k;
  CHECK(l2_rel_diff(d, want) <= 1e-8);

  const GridFn1 f = gaussian(-10.0, 10.0, 401);
  const FirstOrderOp mul{{}, ExpPoly1::exp_s(0.5, 1.0) + ExpPoly1::constant(2.0)};
  const GridFn1 m = apply_op(mul, f);
  for (std::size_t i = 0; i < f.size(); ++i)
    REQUIRE(m.values[i] == I * mul.w(f.s(i)) * f.values[i]);

  // Half-plane operator on a Gaussian against its analytic derivative.
  const FirstOrderOp O = ell_hat(L{0.7, 0, 0, 0.5}, make_chart({1.2, 0, 0, 0}));
  for (auto scheme : {DerivativeScheme::Spectral, DerivativeScheme::FiniteDifference4}) {
    const GridFn1 g = gaussian(-8.0, 8.0, scheme == DerivativeScheme::Spectral ? 321 : 4001);
    const GridFn1 got = apply_op(O, g, scheme);
    GridFn1 ref = g;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double s = g.s(i);
      ref.values[i] = 0.5 * (-s) * g.values[i] + I * (0.7 * 1.2 * std::exp(-s)) * g.values[i];
    }
    CHECK(l2_rel_diff(got, ref) <= 1e-8);
  }
  CHECK_THROWS_AS(apply_op(O, gaussian(-1.0, 1.0, 7)), std::invalid_argument);
}

TEST_CASE("multiplication operators agree with the symbol calculus") {
  // d = b = 0 on a half-plane chart: the symbol has no p, so star acts by multiplication.
  const DarbouxChart om2 = make_chart({1.4, 0, 0, 0});
  const L A{0.9, 0.0, 0.0, 0.0};
  const PolyExp u = PolyExp::exp_q(1) + PolyExp::constant(2.0);
  const PolyExp lu = apply_symbol(make_symbol(A, om2), u);
  const GridFn1 f = GridFn1::sample(-3.0, 3.0, 61, [&](double s) { return eval(u, 0.0, s); });
  const GridFn1 g = apply_op(ell_hat(A, om2), f);
  for (std::size_t i = 0; i < f.size(); ++i)
    REQUIRE(std::abs(g.values[i] - eval(lu, 0.0, f.s(i))) <= 1e-8 * std::abs(g.values[i]));
}

TEST_CASE("flow: translation and pure phase") {
  const GridFn1 f = gaussian(-12.0, 12.0, 961, 0.0, 1.0, 0.7);
  const double tau = 1.3;
  const FlowResult r = exp_flow({ExpPoly1::constant(1.0), {}}, f, tau);
  const GridFn1 exact = gaussian(-12.0 + tau, 12.0 + tau, 961, 0.0, 1.0, 0.7);
  CHECK(masked(r, exact) <= 1e-6);
  CHECK(r.left_count > 0);
  CHECK(r.left_domain.back());
  CHECK_FALSE(r.left_domain.front());
  CHECK(r.f.values.back() == Complex{});

  const FlowResult ph = exp_flow({{}, ExpPoly1::constant(0.9)}, f, 2.0);
  CHECK(ph.left_count == 0);
  for (std::size_t i = 0; i < f.size(); ++i)
    REQUIRE(std::abs(ph.f.values[i] - std::exp(I * 1.8) * f.values[i]) <= 1e-13);
}

TEST_CASE("flow against Richardson-extrapolated Euler micro-steps") {
  // Explicit Euler needs |w| bounded on the grid, so keep s >= 0.
  const FirstOrderOp O = ell_hat(L{0.7, 0, 0, 0.5}, make_chart({1.2, 0, 0, 0}));
  const GridFn1 f = gaussian(0.0, 24.0, 961, 12.0);
  const FlowResult r = exp_flow(O, f, 1.0);
  const GridFn1 e10 = euler(O, f, 1.0, 1024);
  const GridFn1 e11 = euler(O, f, 1.0, 2048);
  GridFn1 rich = e11;
  for (std::size_t i = 0; i < f.size(); ++i) rich.values[i] = 2.0 * e11.values[i] - e10.values[i];
  const double plain = masked(r, e10);
  const double extrapolated = masked(r, rich);
  MESSAGE("plain Euler 2^10: " << plain << ", extrapolated: " << extrapolated);
  CHECK(extrapolated <= 1e-5);
  CHECK(extrapolated < plain);
}

TEST_CASE("flow: group law and norms") {
  const GridFn1 f = gaussian(-12.0, 12.0, 961, 0.0, 1.0, 0.7);
  for (const auto& F : {kFunctionals[0], kFunctionals[1], kFunctionals[2]}) {
    const FirstOrderOp O = 0.5 * ell_hat(L{0.6, -0.4, 0.3, 0.8}, make_chart(F));
    const FlowResult once = exp_flow(O, f, 1.0);
    const FlowResult twice = exp_flow(O, exp_flow(O, f, 0.4).f, 0.6);
    CHECK(masked(twice, once.f) <= 1e-5);
    CHECK(std::abs(once.f.l2_norm() / f.l2_norm() - 1.0) <= 1e-6);
  }
  const GridFn1 g = gaussian(-10.0, 4.0, 1121, -1.0, 0.8);
  for (const auto& F : {kFunctionals[3], kFunctionals[4]}) {
    const FirstOrderOp O = 0.5 * ell_hat(L{0.6, -0.4, 0.3, 0.8}, make_chart(F));
    const FlowResult once = exp_flow(O, g, 1.0);
    const FlowResult twice = exp_flow(O, exp_flow(O, g, 0.4).f, 0.6);
    CHECK(masked(twice, once.f) <= 1e-5);
    CHECK_FALSE(once.stiff);
    const double drift = once.f.l2_norm() / g.l2_norm() - 1.0;
    MESSAGE("paraboloid norm drift " << drift);
    CHECK(std::isfinite(drift));
  }
}

TEST_CASE("flow preconditions") {
  const GridFn1 f = gaussian(-5.0, 5.0, 101);
  CHECK_THROWS_AS(exp_flow({ExpPoly1::constant(I), {}}, f, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(exp_flow({ExpPoly1::constant(1.0), {}}, gaussian(-1, 1, 7), 1.0), std::invalid_argument);
  const FlowResult zero = exp_flow({ExpPoly1::constant(1.0), {}}, f, 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) REQUIRE(std::abs(zero.f.values[i] - f.values[i]) <= 1e-15);
}

TEST_CASE("flow CSV") {
  const GridFn1 f = GridFn1::sample(0.0, 1.0, 2, [](double s) { return Complex(s, -s); });
  std::ostringstream out;
  write_flow_csv(out, {{0.0, f}, {0.5, f}});
  CHECK(out.str() == "tau,s,re,im\n0,0,0,0\n0,1,1,-1\n0.5,0,0,0\n0.5,1,1,-1\n");
}
