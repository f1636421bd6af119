#pragma once

#include "lcint/ring/ideal.hpp"
#include "lcint/ring/truncated_ring.hpp"

#include <optional>

namespace lcint::ar {

using ring::TruncatedRingElement;

// An element of I^{m+k} n (f) outside I^m (I^k n (f)).
struct ArWitness {
  int k = 0;
  int m = 0;
  TruncatedRingElement element;
};

struct ArConstantReport {
  TruncatedRingElement f;
  std::optional<int> k;  // minimal k in [1, k_max], nullopt if none works
  int m_max = 0;
  int k_max = 0;
  int precision = 0;
  int degree_cap = 0;
  // For k = nullopt: the failure at k_max. Otherwise the failure at k - 1
  // when there is one (k - 1 = 0 included).
  std::optional<ArWitness> witness;
};

// First m <= m_max where I^{m+k} n (f) != I^m (I^k n (f)), with an element
// of the difference. k may be 0.
std::optional<ArWitness> ar_defect(const TruncatedRingElement& f, int k, int m_max);

// Requires f to be a non-zero divisor and m_max + k_max <= N + M - 1.
ArConstantReport ar_constant(const TruncatedRingElement& f, int m_max, int k_max);

struct TransferReport {
  bool holds = false;
  std::optional<ArWitness> counterexample;
  // minimal verified constants of both divisors, for comparison only
  std::optional<int> k_f;
  std::optional<int> k_g;
};

// Checks Artin-Rees for g with the constant k of f, for m <= m_max.
// Requires (g) + I^{k+1} = (f) + I^{k+1}, both non-zero divisors, and that
// k works for f.
TransferReport ar_transfer_check(const TruncatedRingElement& f, const TruncatedRingElement& g, int k, int m_max);

// Given h with (h) + I^{m+k} = (f) + I^{m+k}, returns an exact equation of
// (f) congruent to h mod I^{m+k}: solves s*h = f and t*f = h mod I^{m+k},
// checks s*t in 1 + I^m and returns s^{-1} f.
TruncatedRingElement lift_defining_equation(const TruncatedRingElement& h, const TruncatedRingElement& f, int m, int k);

}  // namespace lcint::ar
