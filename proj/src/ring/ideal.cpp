#include "lcint/ring/ideal.hpp"

#include "lcint/errors.hpp"

#include <algorithm>

namespace lcint::ring {

std::vector<Row> multiples(const std::vector<TruncatedRingElement>& gens) {
  std::vector<Row> rows;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    const auto& ring = *g.ring();
    const std::size_t D = ring.dimension();
    const auto& R = ring.dvr();
    for (std::size_t m = 0; m < D; ++m) {
      Row r(D, 0);
      bool nonzero = false;
      for (std::size_t j = 0; j < D; ++j) {
        if (g.coeff(j) == 0) continue;
        const int k = ring.product(m, j);
        if (k < 0) continue;
        r[k] = R.add(r[k], g.coeff(j));
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(r));
    }
  }
  return rows;
}

Ideal Ideal::generated_by(const LocalRingPtr& ring, const std::vector<TruncatedRingElement>& gens) {
  for (const auto& g : gens)
    if (!same_ring(g.ring(), ring)) throw SpecMismatch("generator lives in another ring");
  return Ideal(ring, Span(ring->dvr(), ring->dimension(), multiples(gens)));
}

Ideal Ideal::maximal_power(const LocalRingPtr& ring, int n) {
  // pi^max(0, n - deg) * monomial is a W-basis of I^n
  const auto& R = ring->dvr();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < ring->dimension(); ++i) {
    const Code c = R.pi_power(std::max(0, n - ring->degree(i)));
    if (c == 0) continue;
    Row r(ring->dimension(), 0);
    r[i] = c;
    rows.push_back(std::move(r));
  }
  return Ideal(ring, Span(R, ring->dimension(), std::move(rows)));
}

Ideal Ideal::zero(const LocalRingPtr& ring) { return Ideal(ring, Span(ring->dvr(), ring->dimension())); }

Ideal Ideal::from_span(const LocalRingPtr& ring, Span span) {
  if (span.cols() != ring->dimension()) throw PreconditionError("span width does not match ring");
  return Ideal(ring, std::move(span));
}

void Ideal::check(const Ideal& J) const {
  if (!same_ring(ring_, J.ring_)) throw SpecMismatch("ideals of different rings");
}

bool Ideal::contains(const TruncatedRingElement& f) const {
  if (!same_ring(ring_, f.ring())) throw SpecMismatch("element of another ring");
  return span_.contains(f.coeffs());
}

bool Ideal::is_unit_ideal() const {
  return !span_.empty() && span_.pivot(span_.rows().size() - 1) == ring_->constant_index() &&
         span_.pivot_valuation(span_.rows().size() - 1) == 0;
}

Ideal Ideal::operator+(const Ideal& J) const {
  check(J);
  return Ideal(ring_, span_.sum(J.span_));
}

Ideal Ideal::intersect(const Ideal& J) const {
  check(J);
  return Ideal(ring_, span_.intersect(J.span_));
}

Ideal Ideal::operator*(const Ideal& J) const {
  check(J);
  // A-generators of one factor times a W-basis of the other span the product
  const auto gens = generators();
  const auto base = J.basis();
  std::vector<Row> rows;
  for (const auto& g : gens)
    for (const auto& b : base) {
      const auto prod = g * b;
      if (!prod.is_zero()) rows.push_back(prod.coeffs());
    }
  return Ideal(ring_, Span(ring_->dvr(), ring_->dimension(), std::move(rows)));
}

std::vector<TruncatedRingElement> Ideal::basis() const {
  std::vector<TruncatedRingElement> out;
  for (const auto& r : span_.rows()) out.emplace_back(ring_, r);
  return out;
}

std::vector<TruncatedRingElement> Ideal::generators() const {
  const auto rows = basis();
  std::vector<TruncatedRingElement> gens;
  Ideal sofar = zero(ring_);
  // smallest leading terms first
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (sofar.contains(*it)) continue;
    gens.push_back(*it);
    sofar = generated_by(ring_, gens);
    if (sofar == *this) break;
  }
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<TruncatedRingElement> rest;
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (j != i) rest.push_back(gens[j]);
    if (generated_by(ring_, rest).contains(gens[i])) gens = std::move(rest);
    else ++i;
  }
  return gens;
}

std::optional<int> Ideal::quotient_length() const {
  return cokernel_length(ring_->dvr(), span_.rows(), ring_->dimension());
}

std::string Ideal::to_string() const {
  const auto gens = generators();
  std::string out = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) out += (i ? ", " : "") + gens[i].pretty();
  return out + ")";
}

}  // namespace lcint::ring
