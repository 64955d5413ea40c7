#pragma once

#include "diamond/charts.hpp"
#include "diamond/lie.hpp"
#include "diamond/polyexp.hpp"

namespace diamond {

/// The left star-multiplication operator u -> (i A~) * u on a chart.
struct SymbolOp {
  PolyExp symbol;  // i * hamiltonian(element, chart)
  DarbouxChart chart;
  LieElement element;
};

SymbolOp make_symbol(const LieElement& A, const DarbouxChart& chart);

PolyExp apply_symbol(const SymbolOp& L, const PolyExp& u);

/// (iA~)*(iB~) - (iB~)*(iA~) - i [A,B]~ ; the empty sum when the star
/// commutator reproduces the bracket.
PolyExp commutator_residual(const LieElement& A, const LieElement& B, const DarbouxChart& chart);

}  // namespace diamond
