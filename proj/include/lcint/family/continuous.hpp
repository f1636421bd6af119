#pragma once

#include "lcint/family/expression.hpp"
#include "lcint/family/step_function.hpp"
#include "lcint/ring/ideal.hpp"
#include "lcint/ring/truncated_ring.hpp"

#include <memory>

namespace lcint::family {

using ring::Ideal;
using ring::LocalRingPtr;
using ring::TruncatedRingElement;

// A continuous map S -> A_{N,M} known at the ring's precision. Internally an
// expression tree, so families that are only constant on very fine balls
// (s -> s at level N) are never materialised.
class ContinuousApprox {
public:
  struct Node;

  static ContinuousApprox constant(const BallSpace& S, const TruncatedRingElement& a);
  static ContinuousApprox polynomial(const LocalRingPtr& A, const BallSpace& S, const ParamPolynomial& f);
  static ContinuousApprox step(const LocalRingPtr& A, const StepFunction<TruncatedRingElement>& f);
  // levels[n] takes values mod I^n, n = 0..levels.size()-1; consecutive
  // levels must be compatible under reduction and the last one is the value.
  static ContinuousApprox tower(const LocalRingPtr& A, const std::vector<StepFunction<TruncatedRingElement>>& levels);

  const LocalRingPtr& ring() const { return ring_; }
  const BallSpace& space() const { return space_; }

  // Level at which every ball carries a single value.
  int resolution() const;
  // Value at the sample point (the residues) of s. Does not check that s
  // is fine enough; see evaluate_at_fiber.
  TruncatedRingElement value_at(const Ball& s) const;
  // An ideal containing f(t) - f(c) for every t in b, c the sample point of
  // b. Zero iff f is provably constant on b.
  Ideal variation(const Ball& b) const;

  ContinuousApprox operator+(const ContinuousApprox& o) const;
  ContinuousApprox operator-(const ContinuousApprox& o) const;
  ContinuousApprox operator*(const ContinuousApprox& o) const;

private:
  ContinuousApprox(LocalRingPtr A, BallSpace S, std::shared_ptr<const Node> node)
      : ring_(std::move(A)), space_(S), node_(std::move(node)) {}
  ContinuousApprox arith(const ContinuousApprox& o, ring::ArithOp op) const;
  LocalRingPtr ring_;
  BallSpace space_;
  std::shared_ptr<const Node> node_;
};

TruncatedRingElement evaluate_polynomial(const LocalRingPtr& A, const ParamPolynomial& f, const std::vector<std::uint64_t>& s);

}  // namespace lcint::family
