#pragma once

#include "lcint/ring/ideal.hpp"
#include "lcint/ring/truncated_ring.hpp"

#include <optional>
#include <vector>

namespace lcint::ring {

// Cokernel of a relation matrix with `generators` rows. Each relation is a
// column, stored as a vector of length `generators`.
struct ModulePresentation {
  LocalRingPtr ring;
  std::size_t generators = 0;
  std::vector<std::vector<TruncatedRingElement>> relations;

  static ModulePresentation free(LocalRingPtr ring, std::size_t rank);
  static ModulePresentation cyclic(const Ideal& J);
  void add_relation(std::vector<TruncatedRingElement> column);
};

// The ring W/pi^N viewed as A_{N,1} with no variables.
LocalRingPtr coefficient_ring(const LocalRingPtr& ring);

// Forget the x-action: each A-generator becomes one W-generator per monomial.
ModulePresentation restrict_scalars(const ModulePresentation& m);

// W-length of a module over W/pi^N; nullopt when it has a free summand at
// this precision. Throws when the ring has variables.
std::optional<int> module_length(const ModulePresentation& m);

}  // namespace lcint::ring
