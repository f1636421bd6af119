#pragma once

#include "lcint/family/continuous.hpp"

#include <optional>
#include <string>

namespace lcint::family {

// f(s); throws when s is too coarse for f to be constant on it.
TruncatedRingElement evaluate_at_fiber(const ContinuousApprox& F, const Ball& s);
TruncatedRingElement evaluate_at_fiber(const StepFunction<TruncatedRingElement>& F, const Ball& s);

// The level-n member of the tower: F mod I^n as a step function, 0 <= n <= N + M.
StepFunction<TruncatedRingElement> quotient_mod_ideal_power(const ContinuousApprox& F, int n,
                                                            std::size_t max_pieces = 1u << 20);

ContinuousApprox family_arith(const ContinuousApprox& F, const ContinuousApprox& G, ring::ArithOp op);

// Ideals generated by the fibers of J at every point of b.
Ideal fiber_ideal(const std::vector<ContinuousApprox>& J, const Ball& b);

// True when s -> (J_1(s), ..., J_r(s)) is an invertible change of generators
// of J(c) on all of b (c the sample point): every variation lies in I * J(c).
// Then J(s) = J(c) and Koszul(J(s)) = Koszul(J(c)) up to isomorphism.
bool certified_constant(const std::vector<ContinuousApprox>& J, const Ball& b);

// Ball -> fiber ideal, refined until each ball is certified constant.
// Throws BudgetExhausted naming the first ball still open at refine_max.
StepFunction<Ideal> fiber_criterion(const std::vector<ContinuousApprox>& J, int refine_max);

enum class Closedness { closed, inconclusive };

struct ClosednessReport {
  Closedness status = Closedness::inconclusive;
  std::optional<int> uniform_k;
  int m_max = 0;
  // ball where f is a zero divisor or has no constant; empty when closed
  std::optional<Ball> witness;
  std::string reason;
};

// Per certified ball: f(c) must be a non-zero divisor with an Artin-Rees
// constant k <= N + M - 1 - m_max; the report carries the maximum.
ClosednessReport is_principal_ideal_closed(const ContinuousApprox& f, int m_max);

}  // namespace lcint::family
