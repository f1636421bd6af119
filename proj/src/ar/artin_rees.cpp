#include "lcint/ar/artin_rees.hpp"

#include "lcint/errors.hpp"
#include "lcint/ring/linalg.hpp"
#include "lcint/ring/regular_sequence.hpp"

namespace lcint::ar {

using ring::Ideal;
using ring::LocalRingPtr;
using ring::Row;

namespace {

int faithful_range(const LocalRingPtr& A) { return A->precision() + A->degree_cap() - 1; }

void require_nzd(const TruncatedRingElement& f, const char* name) {
  if (!ring::is_regular_sequence({f}).regular)
    throw PreconditionError(std::string(name) + " = " + f.pretty() + " is a zero divisor");
}

void require_range(const LocalRingPtr& A, int m_max, int k) {
  if (m_max < 0) throw PreconditionError("m_max must be nonnegative");
  if (m_max + k > faithful_range(A))
    throw PreconditionError("m_max + k = " + std::to_string(m_max + k) + " exceeds N + M - 1 = " +
                            std::to_string(faithful_range(A)));
}

// rows of x * g for every monomial x, zero rows kept so row i is monomial i
std::vector<Row> multiplication_rows(const TruncatedRingElement& g) {
  const auto& A = g.ring();
  std::vector<Row> rows;
  for (std::size_t i = 0; i < A->dimension(); ++i) rows.push_back((TruncatedRingElement::monomial(A, i) * g).coeffs());
  return rows;
}

// s with s*h = target mod J, as 1 + (correction) so that h = target gives 1
std::optional<TruncatedRingElement> solve_multiple(const TruncatedRingElement& h, const TruncatedRingElement& target,
                                                   const Ideal& J) {
  const auto& A = h.ring();
  auto rows = multiplication_rows(h);
  for (const auto& b : J.basis()) rows.push_back(b.coeffs());
  const auto sol = ring::solve_left(A->dvr(), rows, A->dimension(), (target - h).coeffs());
  if (!sol) return std::nullopt;
  auto s = TruncatedRingElement::integer(A, 1);
  for (std::size_t i = 0; i < A->dimension(); ++i) s = s + TruncatedRingElement::monomial(A, i, (*sol)[i]);
  return s;
}

}  // namespace

std::optional<ArWitness> ar_defect(const TruncatedRingElement& f, int k, int m_max) {
  const auto& A = f.ring();
  const Ideal F = Ideal::generated_by(A, {f});
  const Ideal inner = Ideal::maximal_power(A, k).intersect(F);
  for (int m = 0; m <= m_max; ++m) {
    const Ideal lhs = Ideal::maximal_power(A, m + k).intersect(F);
    const Ideal rhs = Ideal::maximal_power(A, m) * inner;
    if (lhs == rhs) continue;
    for (const auto& b : lhs.basis())
      if (!rhs.contains(b)) return ArWitness{k, m, b};
    throw InvariantViolation("Artin-Rees sides differ but no basis element separates them");
  }
  return std::nullopt;
}

ArConstantReport ar_constant(const TruncatedRingElement& f, int m_max, int k_max) {
  const auto& A = f.ring();
  if (k_max < 1) throw PreconditionError("k_max must be at least 1");
  require_range(A, m_max, k_max);
  require_nzd(f, "f");
  ArConstantReport rep{f, std::nullopt, m_max, k_max, A->precision(), A->degree_cap(), std::nullopt};
  std::optional<ArWitness> previous = ar_defect(f, 0, m_max);
  for (int k = 1; k <= k_max; ++k) {
    auto w = ar_defect(f, k, m_max);
    if (!w) {
      rep.k = k;
      rep.witness = previous;
      return rep;
    }
    previous = std::move(w);
  }
  rep.witness = previous;
  return rep;
}

TransferReport ar_transfer_check(const TruncatedRingElement& f, const TruncatedRingElement& g, int k, int m_max) {
  if (!ring::same_ring(f.ring(), g.ring())) throw SpecMismatch("f and g live in different rings");
  const auto& A = f.ring();
  if (k < 1) throw PreconditionError("k must be at least 1");
  require_range(A, m_max, k);
  const Ideal Ik1 = Ideal::maximal_power(A, k + 1);
  if (!(Ideal::generated_by(A, {f}) + Ik1 == Ideal::generated_by(A, {g}) + Ik1))
    throw PreconditionError("(g) + I^" + std::to_string(k + 1) + " differs from (f) + I^" + std::to_string(k + 1));
  require_nzd(f, "f");
  require_nzd(g, "g");
  if (ar_defect(f, k, m_max)) throw PreconditionError("k = " + std::to_string(k) + " is not an Artin-Rees constant of f");
  TransferReport rep;
  rep.counterexample = ar_defect(g, k, m_max);
  rep.holds = !rep.counterexample;
  const int k_max = faithful_range(A) - m_max;
  rep.k_f = ar_constant(f, m_max, k_max).k;
  rep.k_g = ar_constant(g, m_max, k_max).k;
  return rep;
}

TruncatedRingElement lift_defining_equation(const TruncatedRingElement& h, const TruncatedRingElement& f, int m, int k) {
  if (!ring::same_ring(f.ring(), h.ring())) throw SpecMismatch("h and f live in different rings");
  const auto& A = f.ring();
  if (m < 1) throw PreconditionError("lift level m must be at least 1");
  if (k < 1) throw PreconditionError("k must be at least 1");
  require_range(A, m, k);
  require_nzd(f, "f");
  if (ar_defect(f, k, m)) throw PreconditionError("k = " + std::to_string(k) + " is not an Artin-Rees constant of f");
  const Ideal J = Ideal::maximal_power(A, m + k);
  if (!(Ideal::generated_by(A, {h}) + J == Ideal::generated_by(A, {f}) + J))
    throw PreconditionError("(h) + I^" + std::to_string(m + k) + " differs from (f) + I^" + std::to_string(m + k));
  const auto s = solve_multiple(h, f, J);
  const auto t = solve_multiple(f, h, J);
  if (!s || !t) throw PreconditionError("no s, t with s*h = f and t*f = h mod I^" + std::to_string(m + k));
  const auto one = TruncatedRingElement::integer(A, 1);
  if (!Ideal::maximal_power(A, m).contains(*s * *t - one))
    throw PreconditionError("s*t is not in 1 + I^" + std::to_string(m) + "; check m and k");
  const auto out = s->inverse() * f;
  if (!(Ideal::generated_by(A, {out}) == Ideal::generated_by(A, {f})))
    throw InvariantViolation("lifted equation does not generate (f)");
  if (!J.contains(out - h)) throw InvariantViolation("lifted equation is not congruent to h");
  return out;
}

}  // namespace lcint::ar
