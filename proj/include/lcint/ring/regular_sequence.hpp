#pragma once

#include "lcint/ring/truncated_ring.hpp"

#include <vector>

namespace lcint::ring {

struct RegularityReport {
  bool regular = false;
  // truncation the sequence was judged at, and the one cycles were lifted to
  int precision = 0;
  int degree_cap = 0;
  int lift_precision = 0;
  int lift_degree_cap = 0;
};

// Regular iff the first Koszul homology vanishes. Cycles are computed at a
// finer truncation and reduced, so torsion created by truncating alone does
// not count.
RegularityReport is_regular_sequence(const std::vector<TruncatedRingElement>& f);

}  // namespace lcint::ring
