#include "lcint/ring/truncated_ring.hpp"

#include "lcint/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace lcint::ring {

namespace {

void enumerate(int d, int remaining, Exponent& cur, int pos, std::vector<Exponent>& out) {
  if (pos == d) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    enumerate(d, remaining - e, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

int total(const Exponent& e) {
  int s = 0;
  for (int v : e) s += v;
  return s;
}

// a > b in degrevlex
bool degrevlex_greater(const Exponent& a, const Exponent& b) {
  const int da = total(a), db = total(b);
  if (da != db) return da > db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

std::string to_string(const LocalRingSpec& s) {
  std::string out = to_string(s.coefficients);
  if (s.variables == 0) return out;
  out += "[";
  for (int j = 0; j < s.variables; ++j) out += (j ? "," : "") + variable_name(s.variables, j);
  return out + "]/deg>=" + std::to_string(s.degree_cap);
}

std::string variable_name(int d, int j) { return d == 1 ? std::string("x") : "x" + std::to_string(j + 1); }

LocalRingPtr LocalRing::make(const LocalRingSpec& spec) {
  using Key = std::tuple<int, std::uint64_t, int, std::uint64_t, int, int>;
  static std::mutex mu;
  static std::map<Key, LocalRingPtr> cache;
  const Key key{static_cast<int>(spec.coefficients.kind), spec.coefficients.p, spec.coefficients.precision,
                spec.coefficients.residue_order(), spec.variables, spec.degree_cap};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto ring = std::make_shared<const LocalRing>(spec);
  std::lock_guard lock(mu);
  return cache.emplace(key, ring).first->second;
}

LocalRingPtr LocalRing::make(std::uint64_t p, int N, int d, int M) {
  LocalRingSpec s;
  s.coefficients.p = p;
  s.coefficients.precision = N;
  s.variables = d;
  s.degree_cap = M;
  return make(s);
}

LocalRing::LocalRing(const LocalRingSpec& spec) : spec_(spec), dvr_(spec.coefficients) {
  if (spec.variables < 0) throw PreconditionError("negative number of variables");
  if (spec.degree_cap < 1) throw PreconditionError("degree cap must be >= 1");
  Exponent cur(spec.variables, 0);
  enumerate(spec.variables, spec.degree_cap - 1, cur, 0, monomials_);
  if (spec.variables == 0) monomials_.assign(1, Exponent{});
  std::sort(monomials_.begin(), monomials_.end(), degrevlex_greater);
  const std::size_t D = monomials_.size();
  if (D > 4096) throw PreconditionError("truncated ring too large: " + std::to_string(D) + " monomials");
  degree_.resize(D);
  for (std::size_t i = 0; i < D; ++i) degree_[i] = total(monomials_[i]);
  std::map<Exponent, int> index;
  for (std::size_t i = 0; i < D; ++i) index[monomials_[i]] = static_cast<int>(i);
  product_.assign(D * D, -1);
  Exponent e(spec.variables);
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) {
      if (degree_[i] + degree_[j] >= spec.degree_cap) continue;
      for (int k = 0; k < spec.variables; ++k) e[k] = monomials_[i][k] + monomials_[j][k];
      product_[i * D + j] = index.at(e);
    }
}

int LocalRing::index_of(const Exponent& e) const {
  if (static_cast<int>(e.size()) != spec_.variables) return -1;
  const auto it = std::lower_bound(monomials_.begin(), monomials_.end(), e, degrevlex_greater);
  if (it == monomials_.end() || *it != e) return -1;
  return static_cast<int>(it - monomials_.begin());
}

LocalRingPtr LocalRing::with_precision(int N, int M) const {
  LocalRingSpec s = spec_;
  s.coefficients.precision = N;
  s.degree_cap = M;
  return make(s);
}

std::uint64_t LocalRing::log_cardinality() const {
  std::uint64_t f = 1;
  for (std::uint64_t q = spec_.coefficients.p; q < dvr_.residue_order(); q *= spec_.coefficients.p) ++f;
  return f * static_cast<std::uint64_t>(precision()) * dimension();
}

bool same_ring(const LocalRingPtr& a, const LocalRingPtr& b) { return a == b || a->spec() == b->spec(); }

TruncatedRingElement::TruncatedRingElement(LocalRingPtr ring)
    : ring_(std::move(ring)), coeffs_(ring_->dimension(), 0) {}

TruncatedRingElement::TruncatedRingElement(LocalRingPtr ring, std::vector<Code> coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != ring_->dimension()) throw PreconditionError("coefficient vector has wrong length");
  for (Code c : coeffs_)
    if (c >= ring_->dvr().size()) throw PreconditionError("non-canonical coefficient");
}

TruncatedRingElement TruncatedRingElement::constant(LocalRingPtr ring, Code c) {
  TruncatedRingElement out(std::move(ring));
  out.coeffs_.back() = c;
  return out;
}

TruncatedRingElement TruncatedRingElement::integer(LocalRingPtr ring, std::int64_t v) {
  const Code c = ring->dvr().from_integer(v);
  return constant(std::move(ring), c);
}

TruncatedRingElement TruncatedRingElement::variable(LocalRingPtr ring, int j) {
  if (j < 0 || j >= ring->variables()) throw PreconditionError("variable index out of range");
  Exponent e(ring->variables(), 0);
  e[j] = 1;
  TruncatedRingElement out(ring);
  const int idx = ring->index_of(e);
  if (idx >= 0) out.coeffs_[idx] = 1;
  return out;
}

TruncatedRingElement TruncatedRingElement::pi_power(LocalRingPtr ring, int e) {
  const Code c = ring->dvr().pi_power(e);
  return constant(std::move(ring), c);
}

TruncatedRingElement TruncatedRingElement::monomial(LocalRingPtr ring, std::size_t index, Code c) {
  TruncatedRingElement out(std::move(ring));
  out.coeffs_.at(index) = c;
  return out;
}

Code TruncatedRingElement::coefficient(const Exponent& e) const {
  const int idx = ring_->index_of(e);
  return idx < 0 ? 0 : coeffs_[idx];
}

bool TruncatedRingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Code c) { return c == 0; });
}

bool TruncatedRingElement::is_unit() const { return ring_->dvr().is_unit(coeffs_.back()); }

int TruncatedRingElement::order() const {
  const auto& R = ring_->dvr();
  int best = ring_->precision() + ring_->degree_cap() - 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) best = std::min(best, ring_->degree(i) + R.val(coeffs_[i]));
  return best;
}

void TruncatedRingElement::check(const TruncatedRingElement& o) const {
  if (!same_ring(ring_, o.ring_))
    throw SpecMismatch("ring elements over " + to_string(ring_->spec()) + " and " + to_string(o.ring_->spec()));
}

TruncatedRingElement TruncatedRingElement::operator+(const TruncatedRingElement& o) const {
  check(o);
  TruncatedRingElement out(ring_);
  const auto& R = ring_->dvr();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = R.add(coeffs_[i], o.coeffs_[i]);
  return out;
}

TruncatedRingElement TruncatedRingElement::operator-(const TruncatedRingElement& o) const {
  check(o);
  TruncatedRingElement out(ring_);
  const auto& R = ring_->dvr();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = R.sub(coeffs_[i], o.coeffs_[i]);
  return out;
}

TruncatedRingElement TruncatedRingElement::operator*(const TruncatedRingElement& o) const {
  check(o);
  TruncatedRingElement out(ring_);
  const auto& R = ring_->dvr();
  const std::size_t D = coeffs_.size();
  for (std::size_t i = 0; i < D; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < D; ++j) {
      if (o.coeffs_[j] == 0) continue;
      const int k = ring_->product(i, j);
      if (k < 0) continue;
      out.coeffs_[k] = R.add(out.coeffs_[k], R.mul(coeffs_[i], o.coeffs_[j]));
    }
  }
  return out;
}

TruncatedRingElement TruncatedRingElement::operator-() const {
  TruncatedRingElement out(ring_);
  const auto& R = ring_->dvr();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = R.neg(coeffs_[i]);
  return out;
}

TruncatedRingElement TruncatedRingElement::scaled(Code c) const {
  TruncatedRingElement out(ring_);
  const auto& R = ring_->dvr();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = R.mul(coeffs_[i], c);
  return out;
}

TruncatedRingElement TruncatedRingElement::inverse() const {
  if (!is_unit()) throw PreconditionError("element is not a unit");
  const auto& R = ring_->dvr();
  const Code c0inv = R.unit_inverse(coeffs_.back());
  // u = c0 (1 - n) with n nilpotent; u^{-1} = c0^{-1} (1 + n + n^2 + ...)
  const TruncatedRingElement one = integer(ring_, 1);
  const TruncatedRingElement n = one - scaled(c0inv);
  TruncatedRingElement sum = one, power = one;
  for (int i = 0; i < ring_->precision() + ring_->degree_cap(); ++i) {
    power = power * n;
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return sum.scaled(c0inv);
}

TruncatedRingElement TruncatedRingElement::reduce_mod_maximal_power(int n) const {
  TruncatedRingElement out(ring_);
  const auto& R = ring_->dvr();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = R.reduce(coeffs_[i], n - ring_->degree(i));
  return out;
}

TruncatedRingElement TruncatedRingElement::project_to(const LocalRingPtr& target) const {
  if (target->variables() != ring_->variables() || target->precision() > ring_->precision() ||
      target->degree_cap() > ring_->degree_cap())
    throw SpecMismatch("projection target is not a coarser truncation");
  TruncatedRingElement out(target);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const int j = target->index_of(ring_->monomial(i));
    if (j >= 0) out.coeffs_[j] = ring_->dvr().project(coeffs_[i], target->dvr());
  }
  return out;
}

TruncatedRingElement TruncatedRingElement::lift_to(const LocalRingPtr& target) const {
  if (target->variables() != ring_->variables() || target->precision() < ring_->precision() ||
      target->degree_cap() < ring_->degree_cap())
    throw SpecMismatch("lift target is not a finer truncation");
  TruncatedRingElement out(target);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const int j = target->index_of(ring_->monomial(i));
    out.coeffs_[j] = ring_->dvr().lift(coeffs_[i], target->dvr());
  }
  return out;
}

std::string TruncatedRingElement::to_text() const {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) order.push_back(i);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ring_->monomial(a) < ring_->monomial(b); });
  std::string out = "{";
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k) out += "; ";
    out += "[";
    const auto& e = ring_->monomial(order[k]);
    for (std::size_t j = 0; j < e.size(); ++j) out += (j ? "," : "") + std::to_string(e[j]);
    out += "]:" + ring_->dvr().to_string(coeffs_[order[k]]);
  }
  return out + "}";
}

std::string TruncatedRingElement::pretty() const {
  std::string out;
  const int d = ring_->variables();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    std::string mono;
    for (int j = 0; j < d; ++j) {
      const int e = ring_->monomial(i)[j];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_name(d, j);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    const std::string c = ring_->dvr().to_string(coeffs_[i]);
    std::string term;
    if (mono.empty()) term = c;
    else if (c == "1") term = mono;
    else term = c + "*" + mono;
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

bool operator==(const TruncatedRingElement& a, const TruncatedRingElement& b) {
  return same_ring(a.ring_, b.ring_) && a.coeffs_ == b.coeffs_;
}

TruncatedRingElement ring_arith(const TruncatedRingElement& a, const TruncatedRingElement& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw PreconditionError("unknown operation");
}

}  // namespace lcint::ring
