#include "lcint/ring/module.hpp"

#include "lcint/errors.hpp"

namespace lcint::ring {

ModulePresentation ModulePresentation::free(LocalRingPtr ring, std::size_t rank) {
  return ModulePresentation{std::move(ring), rank, {}};
}

ModulePresentation ModulePresentation::cyclic(const Ideal& J) {
  ModulePresentation m = free(J.ring(), 1);
  for (const auto& g : J.generators()) m.relations.push_back({g});
  return m;
}

void ModulePresentation::add_relation(std::vector<TruncatedRingElement> column) {
  if (column.size() != generators) throw PreconditionError("relation has wrong length");
  for (const auto& c : column)
    if (!same_ring(c.ring(), ring)) throw SpecMismatch("relation entry from another ring");
  relations.push_back(std::move(column));
}

LocalRingPtr coefficient_ring(const LocalRingPtr& ring) {
  LocalRingSpec s;
  s.coefficients = ring->spec().coefficients;
  s.variables = 0;
  s.degree_cap = 1;
  return LocalRing::make(s);
}

ModulePresentation restrict_scalars(const ModulePresentation& m) {
  const auto W = coefficient_ring(m.ring);
  const std::size_t D = m.ring->dimension();
  ModulePresentation out = ModulePresentation::free(W, m.generators * D);
  const auto& R = m.ring->dvr();
  for (const auto& col : m.relations)
    for (std::size_t mono = 0; mono < D; ++mono) {
      std::vector<TruncatedRingElement> rel(out.generators, TruncatedRingElement::zero(W));
      bool nonzero = false;
      for (std::size_t g = 0; g < m.generators; ++g)
        for (std::size_t j = 0; j < D; ++j) {
          const Code c = col[g].coeff(j);
          if (c == 0) continue;
          const int k = m.ring->product(mono, j);
          if (k < 0) continue;
          auto& slot = rel[g * D + static_cast<std::size_t>(k)];
          slot = TruncatedRingElement::constant(W, R.add(slot.constant_term(), c));
          nonzero = true;
        }
      if (nonzero) out.relations.push_back(std::move(rel));
    }
  return out;
}

std::optional<int> module_length(const ModulePresentation& m) {
  if (m.ring->variables() != 0 || m.ring->degree_cap() != 1)
    throw PreconditionError("module_length needs a module over W/pi^N; restrict scalars first");
  std::vector<Row> rows;
  for (const auto& col : m.relations) {
    Row r(m.generators);
    for (std::size_t g = 0; g < m.generators; ++g) r[g] = col[g].constant_term();
    rows.push_back(std::move(r));
  }
  return cokernel_length(m.ring->dvr(), rows, m.generators);
}

}  // namespace lcint::ring
