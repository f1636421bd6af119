#include "lcint/family/fiber.hpp"

#include "lcint/ar/artin_rees.hpp"
#include "lcint/errors.hpp"
#include "lcint/ring/regular_sequence.hpp"

#include <functional>
#include <map>

namespace lcint::family {

TruncatedRingElement evaluate_at_fiber(const ContinuousApprox& F, const Ball& s) {
  if (!F.variation(s).is_zero())
    throw PreconditionError("point " + s.address() + " has precision " + std::to_string(s.level()) +
                            ", the family needs " + std::to_string(F.resolution()));
  return F.value_at(s);
}

TruncatedRingElement evaluate_at_fiber(const StepFunction<TruncatedRingElement>& F, const Ball& s) { return F.at(s); }

StepFunction<TruncatedRingElement> quotient_mod_ideal_power(const ContinuousApprox& F, int n, std::size_t max_pieces) {
  const auto& A = F.ring();
  if (n < 0 || n > A->precision() + A->degree_cap())
    throw PreconditionError("level n = " + std::to_string(n) + " outside 0..N+M");
  const Ideal In = Ideal::maximal_power(A, n);
  std::vector<std::pair<Ball, TruncatedRingElement>> pieces;
  std::function<void(const Ball&)> walk = [&](const Ball& b) {
    if (In.contains(F.variation(b))) {
      if (pieces.size() == max_pieces) throw BudgetExhausted("quotient mod I^" + std::to_string(n) + " needs more than " +
                                                             std::to_string(max_pieces) + " pieces");
      pieces.emplace_back(b, F.value_at(b).reduce_mod_maximal_power(n));
      return;
    }
    for (const auto& c : b.children()) walk(c);
  };
  walk(Ball::root(F.space()));
  return StepFunction<TruncatedRingElement>(F.space(), std::move(pieces));
}

ContinuousApprox family_arith(const ContinuousApprox& F, const ContinuousApprox& G, ring::ArithOp op) {
  switch (op) {
    case ring::ArithOp::add: return F + G;
    case ring::ArithOp::sub: return F - G;
    case ring::ArithOp::mul: return F * G;
  }
  throw PreconditionError("unknown operation");
}

Ideal fiber_ideal(const std::vector<ContinuousApprox>& J, const Ball& b) {
  if (J.empty()) throw PreconditionError("empty generator list");
  std::vector<TruncatedRingElement> gens;
  for (const auto& g : J) gens.push_back(g.value_at(b));
  return Ideal::generated_by(J.front().ring(), gens);
}

bool certified_constant(const std::vector<ContinuousApprox>& J, const Ball& b) {
  const auto& A = J.front().ring();
  const Ideal target = Ideal::maximal_power(A, 1) * fiber_ideal(J, b);
  for (const auto& g : J)
    if (!target.contains(g.variation(b))) return false;
  return true;
}

StepFunction<Ideal> fiber_criterion(const std::vector<ContinuousApprox>& J, int refine_max) {
  if (J.empty()) throw PreconditionError("empty generator list");
  for (const auto& g : J)
    if (!ring::same_ring(g.ring(), J.front().ring()) || !(g.space() == J.front().space()))
      throw SpecMismatch("generators over different rings or parameter spaces");
  std::vector<std::pair<Ball, Ideal>> pieces;
  std::function<void(const Ball&)> walk = [&](const Ball& b) {
    if (certified_constant(J, b)) {
      pieces.emplace_back(b, fiber_ideal(J, b));
      return;
    }
    if (b.level() >= refine_max)
      throw BudgetExhausted("fiber ideal not certified constant on ball " + b.address() + " at refinement level " +
                            std::to_string(refine_max));
    for (const auto& c : b.children()) walk(c);
  };
  walk(Ball::root(J.front().space()));
  return StepFunction<Ideal>(J.front().space(), std::move(pieces));
}

ClosednessReport is_principal_ideal_closed(const ContinuousApprox& f, int m_max) {
  const auto& A = f.ring();
  const int k_max = A->precision() + A->degree_cap() - 1 - m_max;
  if (m_max < 0 || k_max < 1) throw PreconditionError("m_max out of range for this truncation");
  ClosednessReport rep;
  rep.m_max = m_max;
  std::map<std::string, std::optional<int>> seen;  // fiber ideal -> k
  int k = 1;
  std::function<bool(const Ball&)> walk = [&](const Ball& b) -> bool {
    // terminates: every family is constant on balls of its resolution level
    if (!certified_constant({f}, b)) {
      for (const auto& c : b.children())
        if (!walk(c)) return false;
      return true;
    }
    const auto v = f.value_at(b);
    const auto key = Ideal::generated_by(A, {v}).to_string();
    auto it = seen.find(key);
    if (it == seen.end()) {
      if (v.is_zero() || !ring::is_regular_sequence({v}).regular) {
        rep.witness = b;
        rep.reason = v.is_zero() ? "fiber is 0" : "fiber is a zero divisor";
        return false;
      }
      it = seen.emplace(key, ar::ar_constant(v, m_max, k_max).k).first;
    }
    if (!it->second) {
      rep.witness = b;
      rep.reason = "no Artin-Rees constant up to " + std::to_string(k_max);
      return false;
    }
    k = std::max(k, *it->second);
    return true;
  };
  if (walk(Ball::root(f.space()))) {
    rep.status = Closedness::closed;
    rep.uniform_k = k;
  }
  return rep;
}

}  // namespace lcint::family
