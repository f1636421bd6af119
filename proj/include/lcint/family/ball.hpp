#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace lcint::family {

// S = Z_p^k.
struct BallSpace {
  std::uint64_t p = 2;
  int k = 1;
  friend bool operator==(const BallSpace&, const BallSpace&) = default;
};

void validate(const BallSpace& S);

// The coset residues + p^level Z_p^k. A ball of level L also serves as a
// point known to precision p^L.
class Ball {
public:
  static Ball root(const BallSpace& S);
  Ball(const BallSpace& S, int level, std::vector<std::uint64_t> residues);

  const BallSpace& space() const { return space_; }
  int level() const { return level_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }

  bool contains(const Ball& b) const;
  bool intersects(const Ball& b) const { return contains(b) || b.contains(*this); }
  Ball parent() const;
  // p^k children, ordered by address
  std::vector<Ball> children() const;
  // same residues, finer level: the canonical sample point of this ball
  Ball at_level(int level) const;
  // number of balls of level `level` inside this one; throws when it overflows
  std::uint64_t count_at(int level) const;

  // Base-p digits, coarsest first. For k > 1 every level is a group of k
  // digits and groups are separated by '.'. The whole space is "*".
  std::string address() const;

  friend bool operator==(const Ball&, const Ball&) = default;
  // address order: a ball precedes everything inside it
  friend std::strong_ordering operator<=>(const Ball& a, const Ball& b);

private:
  int digit(int level, int coord) const;
  BallSpace space_;
  int level_ = 0;
  std::vector<std::uint64_t> residues_;
};

Ball parse_ball(const BallSpace& S, const std::string& address);

// Balls of `level` covering `b`, in address order.
std::vector<Ball> subdivide(const Ball& b, int level);

}  // namespace lcint::family
