#pragma once

#include <optional>
#include <string>

#include "diamond/lie.hpp"
#include "diamond/polyexp.hpp"

namespace diamond {

/// The five Darboux chart families on the 2-dimensional orbits.
enum class ChartKind {
  HalfPlaneX,          // alpha != 0, beta = gamma = 0
  HalfPlaneY,          // beta != 0, alpha = gamma = 0
  Cylinder,            // alpha*beta != 0, gamma = 0
  ParaboloidPositive,  // gamma != 0, branch x > 0
  ParaboloidNegative,  // gamma != 0, branch x < 0
};

std::string to_string(ChartKind kind);

/// Adapted chart (p, q) -> orbit for one orbit. Build it with make_chart.
struct DarbouxChart {
  ChartKind kind = ChartKind::HalfPlaneX;
  OrbitDescriptor orbit;
  DualFunctional params;

  /// alpha*beta - gamma*delta, the paraboloid invariant (0 on other kinds).
  double invariant() const { return params.alpha * params.beta - params.gamma * params.delta; }
};

/// Builds the chart for the orbit through F. Paraboloid orbits take the
/// branch from sign(alpha) unless `branch` is given; alpha == 0 requires an
/// explicit branch. Throws std::invalid_argument for point orbits and for an
/// unresolved paraboloid branch.
DarbouxChart make_chart(const DualFunctional& F, std::optional<Branch> branch = std::nullopt);

DualFunctional psi(const DarbouxChart& chart, double p, double q);

/// Hamiltonian A~ o psi as an exact symbol in (p, q); max_pdeg <= 1.
PolyExp hamiltonian(const LieElement& A, const DarbouxChart& chart);

/// |<psi(p,q), [A,B]> - {A~, B~}(p,q)|.
double kirillov_residual(const DarbouxChart& chart, const LieElement& A, const LieElement& B,
                         double p, double q);

}  // namespace diamond
