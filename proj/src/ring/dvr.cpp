#include "lcint/ring/dvr.hpp"

#include "lcint/errors.hpp"

#include <limits>

namespace lcint::ring {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t code_limit = std::uint64_t{1} << 62;

// Multiply polynomials over F_p given as coefficient vectors.
std::vector<std::uint64_t> poly_mulmod(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b,
                                       const std::vector<std::uint64_t>& monic,
                                       std::uint64_t p) {
  const std::size_t f = monic.size() - 1;
  std::vector<std::uint64_t> prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t i = prod.size(); i-- > f;) {
    const std::uint64_t c = prod[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= f; ++j)
      prod[i - f + j] = (prod[i - f + j] + (p - c) * monic[j]) % p;
  }
  prod.resize(f);
  return prod;
}

// First monic irreducible of degree f in coefficient-code order, found by
// trial division.
std::vector<std::uint64_t> first_irreducible(std::uint64_t p, int f) {
  if (f == 1) return {0, 1};
  std::uint64_t count = 1;
  for (int i = 0; i < f; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::uint64_t> cand(f + 1);
    std::uint64_t c = code;
    for (int i = 0; i < f; ++i) {
      cand[i] = c % p;
      c /= p;
    }
    cand[f] = 1;
    if (cand[0] == 0) continue;
    bool irreducible = true;
    for (int dg = 1; dg <= f / 2 && irreducible; ++dg) {
      std::uint64_t dcount = 1;
      for (int i = 0; i < dg; ++i) dcount *= p;
      for (std::uint64_t dc = 0; dc < dcount && irreducible; ++dc) {
        std::vector<std::uint64_t> div(dg + 1);
        std::uint64_t t = dc;
        for (int i = 0; i < dg; ++i) {
          div[i] = t % p;
          t /= p;
        }
        div[dg] = 1;
        std::vector<std::uint64_t> rem = cand;
        for (int i = f; i >= dg; --i) {
          const std::uint64_t lead = rem[i];
          if (lead == 0) continue;
          for (int j = 0; j <= dg; ++j)
            rem[i - dg + j] = (rem[i - dg + j] + (p - lead) * div[j]) % p;
        }
        bool zero = true;
        for (int i = 0; i < dg; ++i) zero = zero && rem[i] == 0;
        if (zero) irreducible = false;
      }
    }
    if (irreducible) return cand;
  }
  throw InvariantViolation("no irreducible polynomial found");
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, newt = 1;
  __int128 r = m, newr = a % m;
  while (newr != 0) {
    const __int128 q = r / newr;
    const __int128 tt = t - q * newt;
    t = newt;
    newt = tt;
    const __int128 rr = r - q * newr;
    r = newr;
    newr = rr;
  }
  if (r != 1) throw PreconditionError("element is not a unit");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::string to_string(const DvrSpec& s) {
  if (s.kind == DvrKind::padic)
    return "Z_" + std::to_string(s.p) + "/p^" + std::to_string(s.precision);
  return "F_" + std::to_string(s.residue_order()) + "[[t]]/t^" + std::to_string(s.precision);
}

Dvr::Dvr(const DvrSpec& spec) : spec_(spec) {
  if (!is_prime(spec.p)) throw PreconditionError("p = " + std::to_string(spec.p) + " is not prime");
  if (spec.precision < 1) throw PreconditionError("precision must be >= 1");
  r_ = spec.p;
  f_ = 1;
  if (spec.kind == DvrKind::tadic) {
    const std::uint64_t q = spec.residue_order();
    std::uint64_t t = spec.p;
    while (t < q) {
      t *= spec.p;
      ++f_;
    }
    if (t != q) throw PreconditionError("q = " + std::to_string(q) + " is not a power of p");
    r_ = q;
    modulus_ = first_irreducible(spec.p, f_);
  }
  pow_.assign(spec.precision + 1, 1);
  for (int i = 1; i <= spec.precision; ++i) {
    if (pow_[i - 1] > code_limit / r_)
      throw PreconditionError("precision too large: " + ring::to_string(spec) + " exceeds 62-bit codes");
    pow_[i] = pow_[i - 1] * r_;
  }
}

Code Dvr::pi_power(int e) const {
  if (e >= spec_.precision) return 0;
  if (e < 0) throw PreconditionError("negative exponent");
  return pow_[e];  // p^e, or the code of t^e (digit 1 at position e)
}

Code Dvr::field_add(Code a, Code b) const {
  if (f_ == 1) return (a + b) % r_;
  Code out = 0, scale = 1;
  for (int i = 0; i < f_; ++i) {
    out += ((a % spec_.p + b % spec_.p) % spec_.p) * scale;
    a /= spec_.p;
    b /= spec_.p;
    scale *= spec_.p;
  }
  return out;
}

Code Dvr::field_neg(Code a) const {
  if (f_ == 1) return (r_ - a) % r_;
  Code out = 0, scale = 1;
  for (int i = 0; i < f_; ++i) {
    out += ((spec_.p - a % spec_.p) % spec_.p) * scale;
    a /= spec_.p;
    scale *= spec_.p;
  }
  return out;
}

Code Dvr::field_mul(Code a, Code b) const {
  if (f_ == 1) return (a * b) % r_;
  std::vector<std::uint64_t> x(f_), y(f_);
  for (int i = 0; i < f_; ++i) {
    x[i] = a % spec_.p;
    y[i] = b % spec_.p;
    a /= spec_.p;
    b /= spec_.p;
  }
  const auto z = poly_mulmod(x, y, modulus_, spec_.p);
  Code out = 0;
  for (int i = f_; i-- > 0;) out = out * spec_.p + z[i];
  return out;
}

Code Dvr::field_inv(Code a) const {
  if (a == 0) throw PreconditionError("element is not a unit");
  // a^(q-2)
  Code result = 1, base = a;
  std::uint64_t e = r_ - 2;
  while (e) {
    if (e & 1) result = field_mul(result, base);
    base = field_mul(base, base);
    e >>= 1;
  }
  return result;
}

Code Dvr::add(Code a, Code b) const {
  if (spec_.kind == DvrKind::padic) {
    const Code m = size();
    const Code s = a + b;
    return s >= m ? s - m : s;
  }
  Code out = 0;
  for (int i = 0; i < spec_.precision; ++i)
    out += field_add(digit(a, i), digit(b, i)) * pow_[i];
  return out;
}

Code Dvr::sub(Code a, Code b) const {
  if (spec_.kind == DvrKind::padic) return a >= b ? a - b : a + size() - b;
  Code out = 0;
  for (int i = 0; i < spec_.precision; ++i)
    out += field_add(digit(a, i), field_neg(digit(b, i))) * pow_[i];
  return out;
}

Code Dvr::mul(Code a, Code b) const {
  if (spec_.kind == DvrKind::padic) return static_cast<Code>(static_cast<u128>(a) * b % size());
  const int n = spec_.precision;
  std::vector<Code> c(n, 0);
  for (int i = 0; i < n; ++i) {
    const Code ai = digit(a, i);
    if (ai == 0) continue;
    for (int j = 0; i + j < n; ++j) {
      const Code bj = digit(b, j);
      if (bj) c[i + j] = field_add(c[i + j], field_mul(ai, bj));
    }
  }
  Code out = 0;
  for (int i = 0; i < n; ++i) out += c[i] * pow_[i];
  return out;
}

Code Dvr::from_integer(std::int64_t v) const {
  if (spec_.kind == DvrKind::padic) {
    const __int128 m = size();
    __int128 r = static_cast<__int128>(v) % m;
    if (r < 0) r += m;
    return static_cast<Code>(r);
  }
  std::int64_t r = v % static_cast<std::int64_t>(spec_.p);
  if (r < 0) r += static_cast<std::int64_t>(spec_.p);
  return static_cast<Code>(r);
}

Code Dvr::from_unsigned(std::uint64_t v) const {
  if (spec_.kind == DvrKind::padic) return v % size();
  return v % spec_.p;
}

int Dvr::val(Code a) const {
  if (a == 0) return spec_.precision;
  int v = 0;
  while (a % r_ == 0 && spec_.kind == DvrKind::tadic) {
    a /= r_;
    ++v;
  }
  if (spec_.kind == DvrKind::padic)
    while (a % spec_.p == 0) {
      a /= spec_.p;
      ++v;
    }
  return v;
}

std::optional<int> Dvr::valuation(Code a) const {
  if (a == 0) return std::nullopt;
  return val(a);
}

Code Dvr::unit_inverse(Code a) const {
  if (!is_unit(a)) throw PreconditionError("element is not a unit");
  if (spec_.kind == DvrKind::padic) return inverse_mod(a, size());
  // power series inverse digit by digit
  const int n = spec_.precision;
  std::vector<Code> ad(n), inv(n, 0);
  for (int i = 0; i < n; ++i) ad[i] = digit(a, i);
  const Code a0inv = field_inv(ad[0]);
  inv[0] = a0inv;
  for (int k = 1; k < n; ++k) {
    Code acc = 0;
    for (int j = 1; j <= k; ++j) acc = field_add(acc, field_mul(ad[j], inv[k - j]));
    inv[k] = field_mul(field_neg(acc), a0inv);
  }
  Code out = 0;
  for (int i = 0; i < n; ++i) out += inv[i] * pow_[i];
  return out;
}

Code Dvr::shift_down(Code a, int e) const {
  if (e <= 0) return a;
  if (e >= spec_.precision) return 0;
  return a / pow_[e];
}

Code Dvr::reduce(Code a, int e) const {
  if (e <= 0) return 0;
  if (e >= spec_.precision) return a;
  return a % pow_[e];
}

Code Dvr::quotient(Code a, Code b) const {
  const int vb = val(b);
  if (val(a) < vb) throw PreconditionError("quotient does not exist");
  if (a == 0) return 0;
  const Code ub = shift_down(b, vb);
  const Code ua = shift_down(a, vb);
  // ub is a unit modulo pi^(N - vb); extend it to a unit of W/pi^N
  return mul(ua, unit_inverse(ub));
}

Code Dvr::project(Code a, const Dvr& target) const {
  if (target.spec_.p != spec_.p || target.r_ != r_ || target.spec_.kind != spec_.kind)
    throw SpecMismatch("projection between different bases");
  return a % target.size();
}

Code Dvr::lift(Code a, const Dvr& target) const {
  if (target.spec_.p != spec_.p || target.r_ != r_ || target.spec_.kind != spec_.kind)
    throw SpecMismatch("lift between different bases");
  if (spec_.kind == DvrKind::tadic) return a % target.size();
  const Code m = size();
  if (a <= m / 2) return a % target.size();
  return target.from_integer(-static_cast<std::int64_t>(m - a));
}

Code Dvr::embed_parameter(std::uint64_t s) const {
  if (spec_.kind == DvrKind::padic) return from_unsigned(s);
  Code out = 0;
  for (int i = 0; i < spec_.precision && s; ++i) {
    out += (s % spec_.p) * pow_[i];
    s /= spec_.p;
  }
  return out;
}

std::string Dvr::to_string(Code a) const {
  if (spec_.kind == DvrKind::padic) return std::to_string(a);
  // t-adic: list of base-q digits, lowest power first
  std::string out = "[";
  for (int i = 0; i < spec_.precision; ++i) {
    if (i) out += ",";
    out += std::to_string(digit(a, i));
  }
  return out + "]";
}

DvrElement::DvrElement(std::shared_ptr<const Dvr> ctx, Code c) : ctx_(std::move(ctx)), code_(c) {
  if (c >= ctx_->size()) throw PreconditionError("non-canonical DVR code");
}

void DvrElement::check(const DvrElement& o) const {
  if (!(ctx_->spec() == o.ctx_->spec())) throw SpecMismatch("DVR elements over different rings");
}

DvrElement DvrElement::operator+(const DvrElement& o) const {
  check(o);
  return {ctx_, ctx_->add(code_, o.code_)};
}
DvrElement DvrElement::operator-(const DvrElement& o) const {
  check(o);
  return {ctx_, ctx_->sub(code_, o.code_)};
}
DvrElement DvrElement::operator*(const DvrElement& o) const {
  check(o);
  return {ctx_, ctx_->mul(code_, o.code_)};
}
DvrElement DvrElement::operator-() const { return {ctx_, ctx_->neg(code_)}; }

std::optional<int> dvr_valuation(const DvrElement& x) { return x.valuation(); }

}  // namespace lcint::ring
