#pragma once

#include "lcint/family/fiber.hpp"
#include "lcint/koszul/chain_complex.hpp"

#include <string>
#include <vector>

namespace lcint::family {

// Closed formal subscheme V(g_1, ..., g_r) of A_{N,M} x S.
struct FamilyCycle {
  std::string label;
  std::vector<ContinuousApprox> generators;
};

void validate(const std::vector<FamilyCycle>& cycles);

enum class Reason { Z1, Z2, Z3, precision, budget };
std::string to_string(Reason r);

struct Z12Report {
  Ball ball;
  bool pass = true;
  // regularity proven on the whole ball, not only at the samples
  bool certified = false;
  std::vector<std::string> failures;  // "label@address"
};

// Per region ball: every cycle's fiber is a regular sequence at the sample
// point of the ball and of each child. Z1 holds by construction.
std::vector<Z12Report> check_Z1_Z2(const std::vector<FamilyCycle>& cycles, const std::vector<Ball>& region);

struct Z3Piece {
  Ball ball;
  std::optional<int> quotient_length;  // length of A / sum of the cycle ideals
};

struct Z3Report {
  Ball ball;
  bool pass = true;
  std::optional<Reason> failure;
  std::vector<Z3Piece> pieces;  // certified-constant sub-balls
};

// Per region ball: the fiber of the sum ideal is certified locally constant
// down to refine_max and its quotient has finite length.
std::vector<Z3Report> check_Z3(const std::vector<FamilyCycle>& cycles, const std::vector<Ball>& region, int refine_max);

// chi of the derived tensor product of the fibers at s.
koszul::EulerReport int_at_fiber(const std::vector<FamilyCycle>& cycles, const Ball& s);

struct ProbeOptions {
  int refine_max = 6;
  unsigned workers = 1;
};

struct ProbePiece {
  int value = 0;
  bool stabilized = false;
  bool z2_certified = false;
  friend bool operator==(const ProbePiece&, const ProbePiece&) = default;
};

struct Exclusion {
  Reason reason = Reason::budget;
  std::string detail;
  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

struct ConstancyReport {
  std::vector<std::pair<Ball, ProbePiece>> pieces;
  std::vector<std::pair<Ball, Exclusion>> excluded;
  int precision = 0;
  int degree_cap = 0;
  int refine_max = 0;
  std::size_t balls_examined = 0;

  // value at s, if s lies in a certified piece
  std::optional<int> value_at(const Ball& s) const;
};

// Adaptive refinement. A ball is certified when the concatenated generators
// pass certified_constant, every cycle is regular and chi is finite and
// stable at the sample; the children's samples must then give the same chi,
// otherwise InvariantViolation. Failing balls are refined, and excluded once
// refine_max is reached or the failure is proven for the whole ball.
ConstancyReport probe_local_constancy(const std::vector<FamilyCycle>& cycles, const std::vector<Ball>& region,
                                      const ProbeOptions& opts = {});

}  // namespace lcint::family
