#include "diamond/charts.hpp"

#include <cmath>
#include <stdexcept>

namespace diamond {

std::string to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::HalfPlaneX: return "half-plane-x";
    case ChartKind::HalfPlaneY: return "half-plane-y";
    case ChartKind::Cylinder: return "cylinder";
    case ChartKind::ParaboloidPositive: return "paraboloid+";
    case ChartKind::ParaboloidNegative: return "paraboloid-";
  }
  return "?";
}

DarbouxChart make_chart(const DualFunctional& F, std::optional<Branch> branch) {
  DarbouxChart chart;
  chart.orbit = classify_orbit(F);
  chart.params = F;
  switch (chart.orbit.kind) {
    case OrbitKind::Point:
      throw std::invalid_argument("point orbits carry no Darboux chart");
    case OrbitKind::HalfPlaneX: chart.kind = ChartKind::HalfPlaneX; break;
    case OrbitKind::HalfPlaneY: chart.kind = ChartKind::HalfPlaneY; break;
    case OrbitKind::HyperbolicCylinder: chart.kind = ChartKind::Cylinder; break;
    case OrbitKind::HyperbolicParaboloid: {
      const Branch b = branch.value_or(chart.orbit.branch);
      if (b == Branch::Unresolved)
        throw std::invalid_argument("paraboloid orbit with alpha == 0 needs an explicit branch");
      chart.kind = b == Branch::Positive ? ChartKind::ParaboloidPositive
                                         : ChartKind::ParaboloidNegative;
      chart.orbit.branch = b;
      break;
    }
  }
  return chart;
}

DualFunctional psi(const DarbouxChart& chart, double p, double q) {
  const auto& f = chart.params;
  const double em = std::exp(-q);
  const double ep = std::exp(q);
  switch (chart.kind) {
    case ChartKind::HalfPlaneX: return {f.alpha * em, 0.0, 0.0, p};
    case ChartKind::HalfPlaneY: return {0.0, f.beta * ep, 0.0, p};
    case ChartKind::Cylinder: return {f.alpha * em, f.beta * ep, 0.0, p};
    case ChartKind::ParaboloidPositive:
      return {em, (chart.invariant() + f.gamma * p) * ep, f.gamma, p};
    case ChartKind::ParaboloidNegative:
      return {-em, -(chart.invariant() + f.gamma * p) * ep, f.gamma, p};
  }
  return {};
}

PolyExp hamiltonian(const LieElement& A, const DarbouxChart& chart) {
  const auto& f = chart.params;
  PolyExp::Builder b;
  b.add(1, 0.0, A.d);
  switch (chart.kind) {
    case ChartKind::HalfPlaneX:
      b.add(0, -1.0, A.a * f.alpha);
      break;
    case ChartKind::HalfPlaneY:
      b.add(0, 1.0, A.b * f.beta);
      break;
    case ChartKind::Cylinder:
      b.add(0, -1.0, A.a * f.alpha);
      b.add(0, 1.0, A.b * f.beta);
      break;
    case ChartKind::ParaboloidPositive:
    case ChartKind::ParaboloidNegative: {
      const double s = chart.kind == ChartKind::ParaboloidPositive ? 1.0 : -1.0;
      b.add(1, 1.0, s * A.b * f.gamma);
      b.add(0, -1.0, s * A.a);
      b.add(0, 1.0, s * A.b * chart.invariant());
      b.add(0, 0.0, A.c * f.gamma);
      break;
    }
  }
  return std::move(b).build();
}

double kirillov_residual(const DarbouxChart& chart, const LieElement& A, const LieElement& B,
                         double p, double q) {
  const double lhs = pairing(psi(chart, p, q), bracket(A, B));
  const Complex rhs = eval(poisson(hamiltonian(A, chart), hamiltonian(B, chart)), p, q);
  return std::abs(Complex(lhs) - rhs);
}

}  // namespace diamond
