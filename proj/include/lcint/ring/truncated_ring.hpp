#pragma once

#include "lcint/ring/dvr.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lcint::ring {

struct LocalRingSpec {
  DvrSpec coefficients;
  int variables = 0;   // d
  int degree_cap = 1;  // M: monomials of total degree >= M vanish

  int precision() const { return coefficients.precision; }
  friend bool operator==(const LocalRingSpec&, const LocalRingSpec&) = default;
};

std::string to_string(const LocalRingSpec& s);

using Exponent = std::vector<int>;

class LocalRing;
using LocalRingPtr = std::shared_ptr<const LocalRing>;

// A_{N,M} = (W/pi^N)[x_1..x_d]/(x)^M. Elements are dense coefficient vectors
// over the monomials of degree < M. Index 0 is the largest monomial in
// degree-reverse-lexicographic order and the constant monomial comes last, so
// row reduction pivots on leading terms first.
class LocalRing {
public:
  static LocalRingPtr make(const LocalRingSpec& spec);
  static LocalRingPtr make(std::uint64_t p, int N, int d, int M);

  explicit LocalRing(const LocalRingSpec& spec);

  const LocalRingSpec& spec() const { return spec_; }
  const Dvr& dvr() const { return dvr_; }
  int precision() const { return spec_.coefficients.precision; }
  int variables() const { return spec_.variables; }
  int degree_cap() const { return spec_.degree_cap; }

  std::size_t dimension() const { return monomials_.size(); }
  const Exponent& monomial(std::size_t i) const { return monomials_[i]; }
  int degree(std::size_t i) const { return degree_[i]; }
  // -1 when the monomial is outside the truncation
  int index_of(const Exponent& e) const;
  // -1 when the product vanishes
  int product(std::size_t i, std::size_t j) const { return product_[i * monomials_.size() + j]; }
  std::size_t constant_index() const { return monomials_.size() - 1; }

  // Same base at another precision.
  LocalRingPtr with_precision(int N, int M) const;
  // log_p of the cardinality
  std::uint64_t log_cardinality() const;

private:
  LocalRingSpec spec_;
  Dvr dvr_;
  std::vector<Exponent> monomials_;
  std::vector<int> degree_;
  std::vector<int> product_;
};

class TruncatedRingElement {
public:
  explicit TruncatedRingElement(LocalRingPtr ring);
  TruncatedRingElement(LocalRingPtr ring, std::vector<Code> coeffs);

  static TruncatedRingElement zero(LocalRingPtr ring) { return TruncatedRingElement(std::move(ring)); }
  static TruncatedRingElement constant(LocalRingPtr ring, Code c);
  static TruncatedRingElement integer(LocalRingPtr ring, std::int64_t v);
  static TruncatedRingElement variable(LocalRingPtr ring, int j);
  static TruncatedRingElement pi_power(LocalRingPtr ring, int e);
  static TruncatedRingElement monomial(LocalRingPtr ring, std::size_t index, Code c = 1);

  const LocalRingPtr& ring() const { return ring_; }
  const std::vector<Code>& coeffs() const { return coeffs_; }
  Code coeff(std::size_t i) const { return coeffs_[i]; }
  Code coefficient(const Exponent& e) const;
  Code constant_term() const { return coeffs_.back(); }

  bool is_zero() const;
  bool is_unit() const;
  // Smallest n with the element in I^n; N + M - 1 for zero.
  int order() const;

  TruncatedRingElement operator+(const TruncatedRingElement& o) const;
  TruncatedRingElement operator-(const TruncatedRingElement& o) const;
  TruncatedRingElement operator*(const TruncatedRingElement& o) const;
  TruncatedRingElement operator-() const;
  TruncatedRingElement scaled(Code c) const;
  TruncatedRingElement inverse() const;  // units only

  // Canonical representative modulo I^n.
  TruncatedRingElement reduce_mod_maximal_power(int n) const;
  // Drop to a coarser truncation of the same base.
  TruncatedRingElement project_to(const LocalRingPtr& target) const;
  // Coefficient-wise balanced lift to a finer truncation.
  TruncatedRingElement lift_to(const LocalRingPtr& target) const;

  // "{[e]:c; ...}" with exponents in lexicographic order
  std::string to_text() const;
  // human form such as "x^2 + 5*x + 3"
  std::string pretty() const;

  friend bool operator==(const TruncatedRingElement& a, const TruncatedRingElement& b);

private:
  void check(const TruncatedRingElement& o) const;
  LocalRingPtr ring_;
  std::vector<Code> coeffs_;
};

enum class ArithOp { add, sub, mul };

TruncatedRingElement ring_arith(const TruncatedRingElement& a, const TruncatedRingElement& b, ArithOp op);

bool same_ring(const LocalRingPtr& a, const LocalRingPtr& b);

std::string variable_name(int d, int j);

}  // namespace lcint::ring
