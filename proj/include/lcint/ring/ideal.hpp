#pragma once

#include "lcint/ring/linalg.hpp"
#include "lcint/ring/truncated_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lcint::ring {

// An ideal of A_{N,M}, stored as the Howell form of its W-span in monomial
// coordinates. Equality is equality of that canonical form.
class Ideal {
public:
  static Ideal generated_by(const LocalRingPtr& ring, const std::vector<TruncatedRingElement>& gens);
  static Ideal maximal_power(const LocalRingPtr& ring, int n);  // I^n
  static Ideal zero(const LocalRingPtr& ring);
  static Ideal unit(const LocalRingPtr& ring) { return maximal_power(ring, 0); }
  // W-span of arbitrary rows that the caller knows to be closed under x_j
  static Ideal from_span(const LocalRingPtr& ring, Span span);

  const LocalRingPtr& ring() const { return ring_; }
  const Span& span() const { return span_; }

  bool contains(const TruncatedRingElement& f) const;
  bool contains(const Ideal& J) const { return span_.contains(J.span_); }
  bool is_unit_ideal() const;
  bool is_zero() const { return span_.empty(); }

  Ideal operator+(const Ideal& J) const;
  Ideal intersect(const Ideal& J) const;
  Ideal operator*(const Ideal& J) const;

  // W-basis (the Howell rows) as ring elements
  std::vector<TruncatedRingElement> basis() const;
  // Irredundant generating set read off the canonical form; deterministic.
  std::vector<TruncatedRingElement> generators() const;

  // W-length of the ideal itself.
  int length() const { return span_.length(); }
  // W-length of A/J, nullopt when it is not finite at this precision.
  std::optional<int> quotient_length() const;

  std::string to_string() const;

  friend bool operator==(const Ideal& a, const Ideal& b) { return a.span_ == b.span_; }

private:
  Ideal(LocalRingPtr ring, Span span) : ring_(std::move(ring)), span_(std::move(span)) {}
  void check(const Ideal& J) const;
  LocalRingPtr ring_;
  Span span_;
};

// All monomial multiples of each generator, as W-rows.
std::vector<Row> multiples(const std::vector<TruncatedRingElement>& gens);

}  // namespace lcint::ring
