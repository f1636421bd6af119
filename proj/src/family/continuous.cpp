#include "lcint/family/continuous.hpp"

#include "lcint/errors.hpp"

#include <variant>

namespace lcint::family {

using ring::ArithOp;
using ring::Code;

namespace {

struct ConstNode {
  TruncatedRingElement value;
};
struct PolyNode {
  ParamPolynomial f;
};
struct StepNode {
  StepFunction<TruncatedRingElement> f;
};
struct ArithNode {
  ArithOp op;
  ContinuousApprox a, b;
};

}  // namespace

struct ContinuousApprox::Node {
  std::variant<ConstNode, PolyNode, StepNode, ArithNode> v;
};

TruncatedRingElement evaluate_polynomial(const LocalRingPtr& A, const ParamPolynomial& f,
                                         const std::vector<std::uint64_t>& s) {
  if (f.d != A->variables()) throw SpecMismatch("expression has the wrong number of variables");
  if (s.size() != static_cast<std::size_t>(f.k)) throw SpecMismatch("point has the wrong arity");
  const auto& R = A->dvr();
  std::vector<Code> sv;
  for (auto v : s) sv.push_back(R.embed_parameter(v));
  std::vector<Code> coeffs(A->dimension(), 0);
  for (const auto& [m, c] : f.terms) {
    const int idx = A->index_of(m.x);
    if (idx < 0) continue;
    Code v = R.mul(R.from_integer(c), R.pi_power(m.pi));
    for (int j = 0; j < f.k; ++j)
      for (int e = 0; e < m.s[j]; ++e) v = R.mul(v, sv[j]);
    coeffs[idx] = R.add(coeffs[idx], v);
  }
  return TruncatedRingElement(A, std::move(coeffs));
}

ContinuousApprox ContinuousApprox::constant(const BallSpace& S, const TruncatedRingElement& a) {
  validate(S);
  return ContinuousApprox(a.ring(), S, std::make_shared<const Node>(Node{ConstNode{a}}));
}

ContinuousApprox ContinuousApprox::polynomial(const LocalRingPtr& A, const BallSpace& S, const ParamPolynomial& f) {
  validate(S);
  if (f.d != A->variables()) throw SpecMismatch("expression uses " + std::to_string(f.d) + " variables, ring has " +
                                                std::to_string(A->variables()));
  if (f.k != S.k) throw SpecMismatch("expression uses " + std::to_string(f.k) + " parameters, space has " +
                                     std::to_string(S.k));
  if (!f.depends_on_parameters())
    return constant(S, evaluate_polynomial(A, f, std::vector<std::uint64_t>(S.k, 0)));
  return ContinuousApprox(A, S, std::make_shared<const Node>(Node{PolyNode{f}}));
}

ContinuousApprox ContinuousApprox::step(const LocalRingPtr& A, const StepFunction<TruncatedRingElement>& f) {
  for (const auto& [b, v] : f.pieces())
    if (!ring::same_ring(v.ring(), A)) throw SpecMismatch("step value on " + b.address() + " is in another ring");
  return ContinuousApprox(A, f.space(), std::make_shared<const Node>(Node{StepNode{f}}));
}

ContinuousApprox ContinuousApprox::tower(const LocalRingPtr& A,
                                         const std::vector<StepFunction<TruncatedRingElement>>& levels) {
  if (levels.empty()) throw PreconditionError("empty tower");
  for (std::size_t n = 0; n < levels.size(); ++n) {
    for (const auto& [b, v] : levels[n].pieces()) {
      if (!ring::same_ring(v.ring(), A)) throw SpecMismatch("tower value in another ring");
      if (!(v.reduce_mod_maximal_power(static_cast<int>(n)) == v))
        throw PreconditionError("tower level " + std::to_string(n) + " has a value not reduced mod I^" +
                                std::to_string(n) + " on " + b.address());
    }
    if (n == 0) continue;
    const int m = static_cast<int>(n - 1);
    const auto down = levels[n].map([m](const TruncatedRingElement& v) { return v.reduce_mod_maximal_power(m); });
    if (!(down == levels[n - 1]))
      throw PreconditionError("tower levels " + std::to_string(m) + " and " + std::to_string(n) + " are incompatible");
  }
  return step(A, levels.back());
}

int ContinuousApprox::resolution() const {
  return std::visit(
      [&](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) return 0;
        else if constexpr (std::is_same_v<T, PolyNode>) {
          int r = 0;
          for (const auto& [m, c] : n.f.terms) {
            bool param = false;
            for (int e : m.s) param = param || e > 0;
            if (param && ring_->index_of(m.x) >= 0) r = std::max(r, ring_->precision() - m.pi);
          }
          return r;
        } else if constexpr (std::is_same_v<T, StepNode>) return n.f.finest_level();
        else return std::max(n.a.resolution(), n.b.resolution());
      },
      node_->v);
}

TruncatedRingElement ContinuousApprox::value_at(const Ball& s) const {
  if (!(s.space() == space_)) throw SpecMismatch("point from another ball space");
  return std::visit(
      [&](const auto& n) -> TruncatedRingElement {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) return n.value;
        else if constexpr (std::is_same_v<T, PolyNode>) return evaluate_polynomial(ring_, n.f, s.residues());
        else if constexpr (std::is_same_v<T, StepNode>) {
          for (const auto& [b, v] : n.f.pieces())
            if (b.contains(s.at_level(std::max(s.level(), b.level())))) return v;
          throw InvariantViolation("step function does not cover " + s.address());
        } else return ring::ring_arith(n.a.value_at(s), n.b.value_at(s), n.op);
      },
      node_->v);
}

Ideal ContinuousApprox::variation(const Ball& b) const {
  if (!(b.space() == space_)) throw SpecMismatch("ball from another ball space");
  return std::visit(
      [&](const auto& n) -> Ideal {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ConstNode>) return Ideal::zero(ring_);
        else if constexpr (std::is_same_v<T, PolyNode>) {
          // s^e - c^e is divisible by s - c, which lies in pi^level W
          std::vector<TruncatedRingElement> gens;
          for (const auto& [m, c] : n.f.terms) {
            bool param = false;
            for (int e : m.s) param = param || e > 0;
            const int idx = ring_->index_of(m.x);
            if (!param || idx < 0) continue;
            gens.push_back(TruncatedRingElement::monomial(ring_, idx, ring_->dvr().pi_power(std::min(b.level() + m.pi, ring_->precision()))));
          }
          return Ideal::generated_by(ring_, gens);
        } else if constexpr (std::is_same_v<T, StepNode>) {
          const auto c = value_at(b);
          std::vector<TruncatedRingElement> gens;
          for (const auto& [piece, v] : n.f.pieces())
            if (piece.intersects(b)) gens.push_back(v - c);
          return Ideal::generated_by(ring_, gens);
        } else {
          return n.a.variation(b) + n.b.variation(b);
        }
      },
      node_->v);
}

ContinuousApprox ContinuousApprox::arith(const ContinuousApprox& o, ArithOp op) const {
  if (!ring::same_ring(ring_, o.ring_)) throw SpecMismatch("families over different rings");
  if (!(space_ == o.space_)) throw SpecMismatch("families over different parameter spaces");
  const auto* a = std::get_if<ConstNode>(&node_->v);
  const auto* b = std::get_if<ConstNode>(&o.node_->v);
  if (a && b) return constant(space_, ring::ring_arith(a->value, b->value, op));
  return ContinuousApprox(ring_, space_, std::make_shared<const Node>(Node{ArithNode{op, *this, o}}));
}

ContinuousApprox ContinuousApprox::operator+(const ContinuousApprox& o) const { return arith(o, ArithOp::add); }
ContinuousApprox ContinuousApprox::operator-(const ContinuousApprox& o) const { return arith(o, ArithOp::sub); }
ContinuousApprox ContinuousApprox::operator*(const ContinuousApprox& o) const { return arith(o, ArithOp::mul); }

}  // namespace lcint::family
