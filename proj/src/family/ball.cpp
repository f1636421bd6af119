#include "lcint/family/ball.hpp"

#include "lcint/errors.hpp"
#include "lcint/ring/dvr.hpp"

#include <algorithm>
#include <cctype>

namespace lcint::family {

namespace {

constexpr char digit_chars[] = "0123456789abcdefghijklmnopqrstuvwxyz";

std::uint64_t power(std::uint64_t p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) throw PreconditionError("ball level too fine for 64-bit residues");
    r *= p;
  }
  return r;
}

}  // namespace

void validate(const BallSpace& S) {
  if (!ring::is_prime(S.p)) throw PreconditionError("ball space prime " + std::to_string(S.p) + " is not prime");
  if (S.p > 36) throw PreconditionError("ball addresses support p <= 36");
  if (S.k < 1 || S.k > 8) throw PreconditionError("parameter arity must be in 1..8");
}

Ball Ball::root(const BallSpace& S) { return Ball(S, 0, std::vector<std::uint64_t>(S.k, 0)); }

Ball::Ball(const BallSpace& S, int level, std::vector<std::uint64_t> residues)
    : space_(S), level_(level), residues_(std::move(residues)) {
  validate(S);
  if (level < 0) throw PreconditionError("negative ball level");
  if (residues_.size() != static_cast<std::size_t>(S.k)) throw PreconditionError("ball has wrong arity");
  const std::uint64_t m = power(S.p, level);
  for (auto& r : residues_) r %= m;
}

bool Ball::contains(const Ball& b) const {
  if (!(space_ == b.space_)) throw SpecMismatch("balls from different spaces");
  if (b.level_ < level_) return false;
  const std::uint64_t m = power(space_.p, level_);
  for (int j = 0; j < space_.k; ++j)
    if (b.residues_[j] % m != residues_[j]) return false;
  return true;
}

Ball Ball::parent() const {
  if (level_ == 0) throw PreconditionError("the root has no parent");
  return at_level(level_ - 1);
}

Ball Ball::at_level(int level) const { return Ball(space_, level, residues_); }

std::vector<Ball> Ball::children() const {
  const std::uint64_t step = power(space_.p, level_);
  std::vector<Ball> out;
  std::vector<std::uint64_t> digits(space_.k, 0);
  while (true) {
    std::vector<std::uint64_t> r = residues_;
    for (int j = 0; j < space_.k; ++j) r[j] += digits[j] * step;
    out.emplace_back(space_, level_ + 1, std::move(r));
    int j = space_.k - 1;
    while (j >= 0 && ++digits[j] == space_.p) digits[j--] = 0;
    if (j < 0) break;
  }
  return out;
}

std::uint64_t Ball::count_at(int level) const {
  if (level < level_) return 0;
  return power(space_.p, (level - level_) * space_.k);
}

int Ball::digit(int level, int coord) const {
  return static_cast<int>((residues_[coord] / power(space_.p, level)) % space_.p);
}

std::string Ball::address() const {
  if (level_ == 0) return "*";
  std::string s;
  for (int l = 0; l < level_; ++l) {
    if (l > 0 && space_.k > 1) s += '.';
    for (int j = 0; j < space_.k; ++j) s += digit_chars[digit(l, j)];
  }
  return s;
}

std::strong_ordering operator<=>(const Ball& a, const Ball& b) {
  if (!(a.space_ == b.space_)) throw SpecMismatch("balls from different spaces");
  const int common = std::min(a.level_, b.level_);
  for (int l = 0; l < common; ++l)
    for (int j = 0; j < a.space_.k; ++j)
      if (auto c = a.digit(l, j) <=> b.digit(l, j); c != 0) return c;
  return a.level_ <=> b.level_;
}

Ball parse_ball(const BallSpace& S, const std::string& address) {
  validate(S);
  if (address == "*") return Ball::root(S);
  std::vector<std::uint64_t> r(S.k, 0);
  int level = 0, coord = 0;
  std::uint64_t scale = 1;
  for (char ch : address) {
    if (ch == '.') {
      if (S.k == 1 || coord != S.k) throw PreconditionError("malformed ball address '" + address + "'");
      continue;
    }
    if (coord == S.k) {
      coord = 0;
      scale *= S.p;
      ++level;
    }
    const char* pos = std::find(digit_chars, digit_chars + 36, static_cast<char>(std::tolower(ch)));
    const auto d = static_cast<std::uint64_t>(pos - digit_chars);
    if (d >= S.p) throw PreconditionError("bad digit '" + std::string(1, ch) + "' in ball address '" + address + "'");
    r[coord++] += d * scale;
  }
  if (coord != S.k) throw PreconditionError("incomplete ball address '" + address + "'");
  if (S.k > 1 && static_cast<long>(std::count(address.begin(), address.end(), '.')) != level)
    throw PreconditionError("malformed ball address '" + address + "'");
  return Ball(S, level + 1, std::move(r));
}

std::vector<Ball> subdivide(const Ball& b, int level) {
  if (level <= b.level()) return {b};
  std::vector<Ball> out;
  for (const auto& c : b.children()) {
    auto sub = subdivide(c, level);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

}  // namespace lcint::family
