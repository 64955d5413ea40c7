#include "diamond/starq.hpp"

namespace diamond {

namespace {
constexpr Complex kI{0.0, 1.0};
}

SymbolOp make_symbol(const LieElement& A, const DarbouxChart& chart) {
  return {scale(hamiltonian(A, chart), kI), chart, A};
}

PolyExp apply_symbol(const SymbolOp& L, const PolyExp& u) { return star(L.symbol, u); }

PolyExp commutator_residual(const LieElement& A, const LieElement& B, const DarbouxChart& chart) {
  const PolyExp ia = make_symbol(A, chart).symbol;
  const PolyExp ib = make_symbol(B, chart).symbol;
  const PolyExp rhs = make_symbol(bracket(A, B), chart).symbol;

  // Single accumulation so the pruning scale is that of the full expression.
  PolyExp::Builder b;
  for (const auto& t : star(ia, ib, 0.0).terms()) b.add(t.pdeg, t.qfreq, t.coeff);
  for (const auto& t : star(ib, ia, 0.0).terms()) b.add(t.pdeg, t.qfreq, -t.coeff);
  for (const auto& t : rhs.terms()) b.add(t.pdeg, t.qfreq, -t.coeff);
  return std::move(b).build();
}

}  // namespace diamond
