#pragma once

#include "lcint/errors.hpp"
#include "lcint/family/ball.hpp"

#include <map>
#include <type_traits>
#include <utility>
#include <vector>

namespace lcint::family {

// Merge complete sibling families with equal values into their parent until
// nothing changes, then sort by address. Works on partial covers too.
template <class V>
std::vector<std::pair<Ball, V>> merge_siblings(std::vector<std::pair<Ball, V>> pieces) {
  std::map<Ball, V> cur;
  for (auto& [b, v] : pieces)
    if (!cur.emplace(b, std::move(v)).second) throw PreconditionError("duplicate ball " + b.address());
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Ball, std::vector<Ball>> by_parent;
    for (const auto& [b, v] : cur)
      if (b.level() > 0) by_parent[b.parent()].push_back(b);
    for (const auto& [parent, kids] : by_parent) {
      if (kids.size() != parent.count_at(parent.level() + 1)) continue;
      const V& first = cur.at(kids.front());
      bool same = true;
      for (const auto& c : kids)
        if (!(cur.at(c) == first)) {
          same = false;
          break;
        }
      if (!same || cur.count(parent)) continue;
      V value = first;
      for (const auto& c : kids) cur.erase(c);
      cur.emplace(parent, std::move(value));
      changed = true;
    }
  }
  std::vector<std::pair<Ball, V>> out;
  out.reserve(cur.size());
  for (auto& [b, v] : cur) out.emplace_back(b, std::move(v));
  return out;
}

// Locally constant map S -> V given by a finite ball partition, kept in
// canonical (maximally merged, address-ordered) form.
template <class V>
class StepFunction {
public:
  StepFunction(BallSpace space, std::vector<std::pair<Ball, V>> pieces) : space_(space) {
    validate(space);
    for (const auto& [b, v] : pieces)
      if (!(b.space() == space)) throw SpecMismatch("piece " + b.address() + " lives in another ball space");
    pieces_ = merge_siblings(std::move(pieces));
    check_partition();
  }

  static StepFunction constant(const BallSpace& space, V value) {
    return StepFunction(space, {{Ball::root(space), std::move(value)}});
  }

  const BallSpace& space() const { return space_; }
  const std::vector<std::pair<Ball, V>>& pieces() const { return pieces_; }

  int finest_level() const {
    int l = 0;
    for (const auto& [b, v] : pieces_) l = std::max(l, b.level());
    return l;
  }

  // Value on the piece containing s. Throws when s is too coarse to pick one.
  const V& at(const Ball& s) const {
    for (const auto& [b, v] : pieces_)
      if (b.contains(s)) return v;
    throw PreconditionError("point " + s.address() + " is too coarse for this step function (finest level " +
                            std::to_string(finest_level()) + ")");
  }

  template <class F>
  auto map(F&& f) const -> StepFunction<std::decay_t<decltype(f(std::declval<const V&>()))>> {
    using W = std::decay_t<decltype(f(std::declval<const V&>()))>;
    std::vector<std::pair<Ball, W>> out;
    out.reserve(pieces_.size());
    for (const auto& [b, v] : pieces_) out.emplace_back(b, f(v));
    return StepFunction<W>(space_, std::move(out));
  }

  // Pointwise combination on the common refinement.
  template <class U, class F>
  auto combine(const StepFunction<U>& g, F&& f) const
      -> StepFunction<std::decay_t<decltype(f(std::declval<const V&>(), std::declval<const U&>()))>> {
    using W = std::decay_t<decltype(f(std::declval<const V&>(), std::declval<const U&>()))>;
    if (!(g.space() == space_)) throw SpecMismatch("step functions on different ball spaces");
    std::vector<std::pair<Ball, W>> out;
    for (const auto& [a, va] : pieces_)
      for (const auto& [b, vb] : g.pieces())
        if (a.intersects(b)) out.emplace_back(a.level() >= b.level() ? a : b, f(va, vb));
    return StepFunction<W>(space_, std::move(out));
  }

  friend bool operator==(const StepFunction& a, const StepFunction& b) {
    return a.space_ == b.space_ && a.pieces_ == b.pieces_;
  }

private:
  void check_partition() const {
    // sorted in address order, so a piece containing another sits right before it
    for (std::size_t i = 1; i < pieces_.size(); ++i)
      if (pieces_[i - 1].first.contains(pieces_[i].first))
        throw PreconditionError("pieces " + pieces_[i - 1].first.address() + " and " + pieces_[i].first.address() +
                                " overlap");
    const int L = finest_level();
    unsigned __int128 total = 0, full = 1;
    for (int i = 0; i < L * space_.k; ++i) {
      if (full > (~static_cast<unsigned __int128>(0)) / space_.p) throw PreconditionError("partition too fine");
      full *= space_.p;
    }
    for (const auto& [b, v] : pieces_) {
      unsigned __int128 w = 1;
      for (int i = 0; i < (L - b.level()) * space_.k; ++i) w *= space_.p;
      total += w;
    }
    if (total != full) throw PreconditionError("pieces do not cover the parameter space");
  }

  BallSpace space_;
  std::vector<std::pair<Ball, V>> pieces_;
};

}  // namespace lcint::family
