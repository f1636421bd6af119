#include "lcint/ring/regular_sequence.hpp"

#include "lcint/errors.hpp"
#include "lcint/koszul/chain_complex.hpp"

#include <tuple>

namespace lcint::ring {

RegularityReport is_regular_sequence(const std::vector<TruncatedRingElement>& f) {
  if (f.empty()) throw PreconditionError("empty sequence");
  const auto& ring = f.front().ring();
  if (static_cast<int>(f.size()) > ring->variables() + 1)
    throw PreconditionError("sequence longer than the dimension of the ambient ring");
  const auto C = koszul::koszul_complex(f);
  const auto lens = koszul::homology_lengths(C);
  RegularityReport rep;
  rep.precision = ring->precision();
  rep.degree_cap = ring->degree_cap();
  std::tie(rep.lift_precision, rep.lift_degree_cap) = koszul::lift_truncation(ring);
  rep.regular = lens.at(1) && *lens.at(1) == 0;
  return rep;
}

}  // namespace lcint::ring
