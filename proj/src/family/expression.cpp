#include "lcint/family/expression.hpp"

#include "lcint/errors.hpp"
#include "lcint/ring/truncated_ring.hpp"

#include <cctype>

namespace lcint::family {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw PreconditionError("integer coefficient overflow in expression");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw PreconditionError("integer coefficient overflow in expression");
  return r;
}

ParamPolynomial constant(int d, int k, std::int64_t c) {
  ParamPolynomial f{d, k, {}};
  if (c != 0) f.terms[ParamMonomial{std::vector<int>(d, 0), std::vector<int>(k, 0), 0}] = c;
  return f;
}

class Parser {
public:
  Parser(const std::string& text, int d, int k) : t_(text), d_(d), k_(k) {}

  ParamPolynomial parse() {
    auto f = sum();
    skip();
    if (i_ != t_.size()) fail("unexpected '" + std::string(1, t_[i_]) + "'");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw PreconditionError("expression '" + t_ + "': " + what + " at offset " + std::to_string(i_));
  }
  void skip() {
    while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < t_.size() && t_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  ParamPolynomial sum() {
    ParamPolynomial f = constant(d_, k_, 0);
    bool negate = false;
    if (eat('-')) negate = true;
    else eat('+');
    while (true) {
      auto term = product();
      f = negate ? f - term : f + term;
      if (eat('+')) negate = false;
      else if (eat('-')) negate = true;
      else return f;
    }
  }

  ParamPolynomial product() {
    auto f = power();
    while (eat('*')) f = f * power();
    return f;
  }

  ParamPolynomial power() {
    auto base = atom();
    if (!eat('^')) return base;
    skip();
    const auto e = number();
    if (e > 64) fail("exponent too large");
    auto r = constant(d_, k_, 1);
    for (std::int64_t i = 0; i < e; ++i) r = r * base;
    return r;
  }

  std::int64_t number() {
    skip();
    if (i_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[i_]))) fail("expected a number");
    std::int64_t v = 0;
    while (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_])))
      v = checked_add(checked_mul(v, 10), t_[i_++] - '0');
    return v;
  }

  ParamPolynomial atom() {
    skip();
    if (eat('(')) {
      auto f = sum();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    if (i_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_]))) return constant(d_, k_, number());
    std::string name;
    while (i_ < t_.size() && std::isalnum(static_cast<unsigned char>(t_[i_]))) name += t_[i_++];
    if (name.empty()) fail("expected a term");
    ParamMonomial m{std::vector<int>(d_, 0), std::vector<int>(k_, 0), 0};
    if (name == "pi") {
      m.pi = 1;
    } else if (int j = index(name, 'x', d_); j >= 0) {
      m.x[j] = 1;
    } else if (int j2 = index(name, 's', k_); j2 >= 0) {
      m.s[j2] = 1;
    } else {
      fail("unknown symbol '" + name + "'");
    }
    ParamPolynomial f{d_, k_, {}};
    f.terms[m] = 1;
    return f;
  }

  static int index(const std::string& name, char letter, int count) {
    if (name.empty() || name[0] != letter || count == 0) return -1;
    if (name.size() == 1) return count == 1 ? 0 : -1;
    int j = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return -1;
      j = j * 10 + (name[i] - '0');
      if (j > count) return -1;
    }
    return j >= 1 && j <= count ? j - 1 : -1;
  }

  const std::string& t_;
  int d_, k_;
  std::size_t i_ = 0;
};

}  // namespace

std::string parameter_name(int k, int j) { return k == 1 ? "s" : "s" + std::to_string(j + 1); }

bool ParamPolynomial::depends_on_parameters() const {
  for (const auto& [m, c] : terms)
    for (int e : m.s)
      if (e > 0) return true;
  return false;
}

ParamPolynomial ParamPolynomial::operator+(const ParamPolynomial& o) const {
  ParamPolynomial r = *this;
  for (const auto& [m, c] : o.terms) {
    const auto v = checked_add(r.terms[m], c);
    if (v == 0) r.terms.erase(m);
    else r.terms[m] = v;
  }
  return r;
}

ParamPolynomial ParamPolynomial::operator-(const ParamPolynomial& o) const {
  ParamPolynomial neg = o;
  for (auto& [m, c] : neg.terms) c = checked_mul(c, -1);
  return *this + neg;
}

ParamPolynomial ParamPolynomial::operator*(const ParamPolynomial& o) const {
  ParamPolynomial r{d, k, {}};
  for (const auto& [a, ca] : terms)
    for (const auto& [b, cb] : o.terms) {
      ParamMonomial m = a;
      for (int j = 0; j < d; ++j) m.x[j] += b.x[j];
      for (int j = 0; j < k; ++j) m.s[j] += b.s[j];
      m.pi += b.pi;
      const auto v = checked_add(r.terms[m], checked_mul(ca, cb));
      if (v == 0) r.terms.erase(m);
      else r.terms[m] = v;
    }
  return r;
}

ParamPolynomial parse_expression(const std::string& text, int d, int k) {
  if (d < 0 || k < 0) throw PreconditionError("negative variable count");
  return Parser(text, d, k).parse();
}

std::string to_string(const ParamPolynomial& f) {
  if (f.terms.empty()) return "0";
  std::string out;
  // highest total degree first
  std::vector<std::pair<ParamMonomial, std::int64_t>> ts(f.terms.rbegin(), f.terms.rend());
  for (const auto& [m, c] : ts) {
    std::string mono;
    auto factor = [&](const std::string& name, int e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += name;
      if (e > 1) mono += '^' + std::to_string(e);
    };
    factor("pi", m.pi);
    for (int j = 0; j < f.d; ++j) factor(ring::variable_name(f.d, j), m.x[j]);
    for (int j = 0; j < f.k; ++j) factor(parameter_name(f.k, j), m.s[j]);
    const std::int64_t a = c < 0 ? -c : c;
    std::string term = mono.empty() ? std::to_string(a) : (a == 1 ? mono : std::to_string(a) + '*' + mono);
    if (out.empty()) out = (c < 0 ? "-" : "") + term;
    else out += (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace lcint::family
