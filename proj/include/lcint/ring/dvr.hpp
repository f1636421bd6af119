#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lcint::ring {

enum class DvrKind { padic, tadic };

struct DvrSpec {
  DvrKind kind = DvrKind::padic;
  std::uint64_t p = 2;
  int precision = 1;
  // residue field order; only meaningful for the t-adic kind (0 means q = p)
  std::uint64_t q = 0;

  std::uint64_t residue_order() const { return kind == DvrKind::tadic && q != 0 ? q : p; }
  friend bool operator==(const DvrSpec&, const DvrSpec&) = default;
};

bool is_prime(std::uint64_t n);
std::string to_string(const DvrSpec& s);

// Elements of W/pi^N are stored as codes in [0, r^N), r the residue order.
// p-adic: the least nonnegative residue. t-adic: base-q digits are the
// coefficients of t^i, each digit itself a base-p coded element of F_q.
using Code = std::uint64_t;

// Arithmetic context for W/pi^N. Cheap to copy.
class Dvr {
public:
  explicit Dvr(const DvrSpec& spec);

  const DvrSpec& spec() const { return spec_; }
  int precision() const { return spec_.precision; }
  std::uint64_t p() const { return spec_.p; }
  std::uint64_t residue_order() const { return r_; }
  Code size() const { return pow_[spec_.precision]; }

  Code one() const { return 1; }
  Code pi_power(int e) const;  // pi^e, zero once e >= N

  Code add(Code a, Code b) const;
  Code sub(Code a, Code b) const;
  Code neg(Code a) const { return sub(0, a); }
  Code mul(Code a, Code b) const;

  Code from_integer(std::int64_t v) const;
  Code from_unsigned(std::uint64_t v) const;

  // N for zero.
  int val(Code a) const;
  std::optional<int> valuation(Code a) const;
  bool is_unit(Code a) const { return val(a) == 0; }

  Code unit_inverse(Code a) const;
  // a / pi^e, requires val(a) >= e; the result has no digits at or above N - e.
  Code shift_down(Code a, int e) const;
  // Canonical representative of a mod pi^e.
  Code reduce(Code a, int e) const;
  // Some c with c * b == a. Requires val(a) >= val(b).
  Code quotient(Code a, Code b) const;

  // Reduction to a coarser precision of the same base.
  Code project(Code a, const Dvr& target) const;
  // Balanced lift to a finer precision: additive and sign-compatible, so
  // negated entries stay negated.
  Code lift(Code a, const Dvr& target) const;

  // Digit map sum a_i p^i -> sum a_i pi^i, used to embed parameters.
  Code embed_parameter(std::uint64_t s) const;

  std::string to_string(Code a) const;

private:
  // t-adic helpers
  Code field_add(Code a, Code b) const;
  Code field_neg(Code a) const;
  Code field_mul(Code a, Code b) const;
  Code field_inv(Code a) const;
  Code digit(Code a, int i) const { return (a / pow_[i]) % r_; }

  DvrSpec spec_;
  std::uint64_t r_ = 2;               // residue order (p or q)
  int f_ = 1;                          // q = p^f
  std::vector<std::uint64_t> pow_;     // r^i, i = 0..N
  std::vector<std::uint64_t> modulus_; // F_p coefficients of the monic irreducible of degree f
};

// A standalone element of W/pi^N.
class DvrElement {
public:
  DvrElement(std::shared_ptr<const Dvr> ctx, Code c);

  const Dvr& context() const { return *ctx_; }
  Code code() const { return code_; }
  std::optional<int> valuation() const { return ctx_->valuation(code_); }
  bool is_zero() const { return code_ == 0; }

  DvrElement operator+(const DvrElement& o) const;
  DvrElement operator-(const DvrElement& o) const;
  DvrElement operator*(const DvrElement& o) const;
  DvrElement operator-() const;

  friend bool operator==(const DvrElement& a, const DvrElement& b) {
    return a.ctx_->spec() == b.ctx_->spec() && a.code_ == b.code_;
  }
  std::string to_string() const { return ctx_->to_string(code_); }

private:
  void check(const DvrElement& o) const;
  std::shared_ptr<const Dvr> ctx_;
  Code code_;
};

std::optional<int> dvr_valuation(const DvrElement& x);

}  // namespace lcint::ring
