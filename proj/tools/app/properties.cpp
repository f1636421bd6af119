#include "properties.hpp"

#include "lcint/ar/artin_rees.hpp"
#include "lcint/errors.hpp"
#include "lcint/family/intersect.hpp"
#include "lcint/lattice/lattice.hpp"
#include "lcint/ring/regular_sequence.hpp"

#include <functional>
#include <random>

namespace lcint::app {

namespace {

using family::Ball;
using family::BallSpace;
using family::ContinuousApprox;
using family::StepFunction;
using ring::LocalRing;
using ring::LocalRingPtr;
using ring::TruncatedRingElement;
using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

TruncatedRingElement random_element(Rng& rng, const LocalRingPtr& A, int density = 60) {
  std::vector<ring::Code> c(A->dimension(), 0);
  for (auto& x : c)
    if (uniform(rng, 0, 99) < density) x = A->dvr().from_integer(uniform(rng, -30, 30));
  return TruncatedRingElement(A, std::move(c));
}

// unit times x-power plus pi-power terms: usually a non-zero divisor
TruncatedRingElement random_divisor(Rng& rng, const LocalRingPtr& A) {
  auto f = TruncatedRingElement::variable(A, 0).scaled(A->dvr().from_integer(uniform(rng, 1, 4)));
  if (uniform(rng, 0, 1)) f = f * TruncatedRingElement::variable(A, 0);
  f = f + TruncatedRingElement::pi_power(A, uniform(rng, 0, A->precision() - 1)).scaled(A->dvr().from_integer(uniform(rng, -3, 3)));
  return f + random_element(rng, A, 30) * TruncatedRingElement::pi_power(A, 1) * TruncatedRingElement::variable(A, 0);
}

ContinuousApprox random_family(Rng& rng, const LocalRingPtr& A, const BallSpace& S) {
  if (uniform(rng, 0, 2) == 0) {
    std::vector<std::pair<Ball, TruncatedRingElement>> pieces;
    std::function<void(const Ball&)> split = [&](const Ball& b) {
      if (b.level() < 2 && uniform(rng, 0, 2) > 0) {
        for (const auto& c : b.children()) split(c);
        return;
      }
      pieces.emplace_back(b, random_element(rng, A));
    };
    split(Ball::root(S));
    return ContinuousApprox::step(A, StepFunction<TruncatedRingElement>(S, std::move(pieces)));
  }
  family::ParamPolynomial f{A->variables(), S.k, {}};
  const int terms = uniform(rng, 1, 4);
  for (int t = 0; t < terms; ++t) {
    family::ParamMonomial m{std::vector<int>(A->variables(), 0), std::vector<int>(S.k, 0), uniform(rng, 0, 1)};
    for (auto& e : m.x) e = uniform(rng, 0, A->degree_cap() - 1);
    for (auto& e : m.s) e = uniform(rng, 0, 2);
    f = f + family::ParamPolynomial{f.d, f.k, {{m, uniform(rng, -9, 9)}}};
  }
  return ContinuousApprox::polynomial(A, S, f);
}

Ball random_point(Rng& rng, const BallSpace& S, int level) {
  std::vector<std::uint64_t> r(S.k);
  for (auto& x : r) x = rng();
  return Ball(S, level, std::move(r));
}

struct Suite {
  Rng rng;
  int instances;
  std::vector<PropertyResult> results;

  // check returns an empty string on success and nullopt when the instance
  // does not qualify and should be redrawn
  void run(const std::string& name, const std::function<std::optional<std::string>(Rng&)>& check) {
    PropertyResult r{name, 0, 0, {}};
    for (int attempts = 0; r.instances < instances && attempts < 40 * instances; ++attempts) {
      std::optional<std::string> out;
      try {
        out = check(rng);
      } catch (const std::exception& e) {
        out = std::string("exception: ") + e.what();
      }
      if (!out) continue;
      ++r.instances;
      if (!out->empty() && r.failures++ == 0) r.first_failure = *out;
    }
    results.push_back(std::move(r));
  }
};

std::optional<std::string> evaluation_homomorphism(Rng& rng) {
  const bool two = uniform(rng, 0, 3) == 0;
  const auto A = two ? LocalRing::make(2, 3, 2, 3) : LocalRing::make(3, 3, 1, 3);
  const BallSpace S{two ? 2u : 3u, two ? 2 : 1};
  const auto F = random_family(rng, A, S), G = random_family(rng, A, S);
  const auto op = static_cast<ring::ArithOp>(uniform(rng, 0, 2));
  const auto H = family::family_arith(F, G, op);
  const auto s = random_point(rng, S, std::max({F.resolution(), G.resolution(), H.resolution()}));
  const auto lhs = family::evaluate_at_fiber(H, s);
  const auto rhs = ring::ring_arith(family::evaluate_at_fiber(F, s), family::evaluate_at_fiber(G, s), op);
  if (!(lhs == rhs)) return "at " + s.address() + ": " + lhs.pretty() + " vs " + rhs.pretty();
  return "";
}

std::optional<std::string> quotient_square(Rng& rng) {
  const auto A = LocalRing::make(3, 3, 1, 3);
  const BallSpace S{3, 1};
  const auto F = random_family(rng, A, S);
  const int n = uniform(rng, 0, A->precision() + A->degree_cap());
  const auto Q = family::quotient_mod_ideal_power(F, n);
  const auto s = random_point(rng, S, F.resolution());
  const auto a = family::evaluate_at_fiber(Q, s);
  const auto b = family::evaluate_at_fiber(F, s).reduce_mod_maximal_power(n);
  if (!(a == b)) return "n = " + std::to_string(n) + " at " + s.address() + ": " + a.pretty() + " vs " + b.pretty();
  return "";
}

std::vector<TruncatedRingElement> random_regular(Rng& rng, const LocalRingPtr& A) {
  std::vector<TruncatedRingElement> f{random_divisor(rng, A)};
  if (uniform(rng, 0, 1)) f.push_back(TruncatedRingElement::pi_power(A, uniform(rng, 1, 2)) + random_element(rng, A, 30) * TruncatedRingElement::variable(A, 0));
  return f;
}

std::optional<std::string> tor_symmetry(Rng& rng) {
  const auto A = LocalRing::make(3, 3, 1, 3);
  const auto I = random_regular(rng, A), J = random_regular(rng, A);
  if (!ring::is_regular_sequence(I).regular || !ring::is_regular_sequence(J).regular) return std::nullopt;
  const auto a = koszul::euler_characteristic(koszul::derived_tensor_cyclic({I, J}));
  const auto b = koszul::euler_characteristic(koszul::derived_tensor_cyclic({J, I}));
  if (a.chi != b.chi || a.lengths != b.lengths) return "chi " + koszul::to_string(a.chi) + " vs " + koszul::to_string(b.chi);
  return "";
}

std::optional<std::string> acyclicity(Rng& rng) {
  const auto A = uniform(rng, 0, 1) ? LocalRing::make(3, 3, 1, 3) : LocalRing::make(2, 3, 2, 3);
  std::vector<TruncatedRingElement> f;
  const int r = uniform(rng, 1, A->variables() + 1);
  for (int i = 0; i < r; ++i) f.push_back(random_element(rng, A));
  if (uniform(rng, 0, 1)) f = {TruncatedRingElement::variable(A, 0) + random_element(rng, A, 20) * TruncatedRingElement::pi_power(A, 1)};
  if (!ring::is_regular_sequence(f).regular) return std::nullopt;
  const auto h = koszul::homology_lengths(koszul::koszul_complex(f));
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i] != 0) return "H_" + std::to_string(i) + " has length " + koszul::to_string(h[i]);
  return "";
}

std::optional<std::string> stabilization(Rng& rng) {
  const auto A = LocalRing::make(3, uniform(rng, 3, 4), 1, uniform(rng, 3, 4));
  const auto I = random_regular(rng, A), J = random_regular(rng, A);
  if (!ring::is_regular_sequence(I).regular || !ring::is_regular_sequence(J).regular) return std::nullopt;
  // only instances whose intersection is m-primary well inside the
  // truncation, checked two steps finer
  const auto fine = A->with_precision(A->precision() + 2, A->degree_cap() + 2);
  std::vector<TruncatedRingElement> both;
  for (const auto& f : I) both.push_back(f.lift_to(fine));
  for (const auto& f : J) both.push_back(f.lift_to(fine));
  const auto sum = ring::Ideal::generated_by(fine, both);
  const int c = std::min(A->precision(), A->degree_cap()) - 1;
  if (!sum.contains(TruncatedRingElement::pi_power(fine, c))) return std::nullopt;
  auto xc = TruncatedRingElement::integer(fine, 1);
  for (int i = 0; i < c; ++i) xc = xc * TruncatedRingElement::variable(fine, 0);
  if (!sum.contains(xc)) return std::nullopt;
  const auto e = koszul::euler_characteristic(koszul::derived_tensor_cyclic({I, J}));
  if (!e.chi || !e.refined_chi) return std::nullopt;
  if (e.chi != e.refined_chi) {
    std::string gens;
    for (const auto& f : I) gens += f.pretty() + "; ";
    gens += "| ";
    for (const auto& f : J) gens += f.pretty() + "; ";
    return "chi " + koszul::to_string(e.chi) + " becomes " + koszul::to_string(e.refined_chi) + " for " + gens + to_string(A->spec());
  }
  return "";
}

std::optional<std::string> ar_unit_invariance(Rng& rng) {
  const auto A = LocalRing::make(5, 4, 1, 4);
  const auto f = random_divisor(rng, A);
  auto u = TruncatedRingElement::integer(A, uniform(rng, 1, 4)) + random_element(rng, A) * TruncatedRingElement::variable(A, 0) +
           TruncatedRingElement::pi_power(A, 1).scaled(A->dvr().from_integer(uniform(rng, -5, 5)));
  if (!ring::is_regular_sequence({f}).regular) return std::nullopt;
  const int m_max = 2, k_max = A->precision() + A->degree_cap() - 1 - m_max;
  const auto a = ar::ar_constant(f, m_max, k_max).k, b = ar::ar_constant(u * f, m_max, k_max).k;
  if (a != b) return f.pretty() + ": k " + koszul::to_string(a) + " vs " + koszul::to_string(b);
  return "";
}

std::optional<std::string> refinement_soundness(Rng& rng) {
  const auto A = LocalRing::make(3, 4, 1, 4);
  const BallSpace S{3, 1};
  const auto poly = [&](const std::string& e) {
    return ContinuousApprox::polynomial(A, S, family::parse_expression(e, 1, 1));
  };
  const std::string a = std::to_string(uniform(rng, 1, 2)), b = std::to_string(uniform(rng, 0, 2)),
                    j = std::to_string(uniform(rng, 1, 2)), i = std::to_string(uniform(rng, 1, 2));
  std::vector<family::FamilyCycle> cycles{{"Z1", {poly("x - " + a + "*s^" + j + " - " + b + "*pi")}},
                                          {"Z2", {poly("x^" + i + " - pi")}}};
  if (uniform(rng, 0, 1)) std::swap(cycles[0], cycles[1]);
  const auto rep = family::probe_local_constancy(cycles, {Ball::root(S)}, {3, 1});
  if (rep.pieces.empty()) return std::nullopt;
  const auto& [ball, piece] = rep.pieces[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(rep.pieces.size()) - 1))];
  const auto again = family::probe_local_constancy(cycles, ball.children(), {ball.level() + 2, 1});
  for (const auto& c : ball.children()) {
    const auto v = again.value_at(c);
    if (v != piece.value)
      return "ball " + ball.address() + " had " + std::to_string(piece.value) + ", child " + c.address() + " gives " +
             (v ? std::to_string(*v) : std::string("nothing"));
  }
  return "";
}

lattice::FormedSpace random_space(Rng& rng) {
  static const std::uint64_t primes[] = {2, 3, 5};
  lattice::FormedSpace V{primes[uniform(rng, 0, 2)], uniform(rng, 1, 3), {}, 12};
  V.gram = lattice::identity(V.n);
  for (int i = 0; i < V.n; ++i)
    for (int e = uniform(rng, 0, 2); e > 0; --e) V.gram[i][i] *= static_cast<unsigned long>(V.p);
  return V;
}

std::optional<std::string> duality_involution(Rng& rng) {
  const auto V = random_space(rng);
  std::vector<lattice::Vector> gens;
  for (int j = 0; j < V.n + 1; ++j) {
    lattice::Vector v(V.n);
    for (auto& x : v) {
      x = lattice::Q(uniform(rng, -9, 9), uniform(rng, 0, 1) ? 1 : static_cast<int>(V.p));
      x.canonicalize();
    }
    gens.push_back(v);
  }
  lattice::Matrix scale = lattice::identity(V.n);
  for (int i = 0; i < V.n; ++i) scale[i][i] = static_cast<unsigned long>(V.p);
  for (int i = 0; i < V.n; ++i) gens.push_back(scale[i]);
  const auto L = lattice::LatticeBasis::span(V.p, V.n, gens);
  const auto back = lattice::dual_lattice(lattice::dual_lattice(L, V), V);
  if (!(back == L)) return L.to_string() + " comes back as " + back.to_string();
  return "";
}

std::optional<std::string> scaling_equivariance(Rng& rng) {
  const auto V = random_space(rng);
  lattice::PairGU pair{lattice::Matrix(V.n, lattice::Vector(V.n, 0)), lattice::Vector(V.n, 0)};
  for (auto& row : pair.g)
    for (auto& x : row) x = uniform(rng, 0, static_cast<int>(V.p));
  for (auto& x : pair.u) x = uniform(rng, 0, static_cast<int>(V.p));
  std::vector<lattice::Vector> krylov{pair.u};
  for (int i = 1; i < V.n; ++i) krylov.push_back(lattice::act(pair.g, krylov.back()));
  const auto v = lattice::valuation(lattice::determinant(lattice::transpose(krylov)), V.p);
  if (!v || *v > 2) return std::nullopt;
  // a unit that is not a root of unity
  const lattice::Q c(static_cast<long>(V.p + 1), static_cast<long>(V.p == 2 ? 3 : 2));
  lattice::PairGU scaled = pair;
  for (auto& x : scaled.u) x *= c;
  for (bool sd : {false, true}) {
    lattice::EnumerationOptions o;
    o.require_self_dual = sd;
    o.max_quotient_order = 729;
    lattice::EnumerationResult a, b;
    try {
      a = lattice::enumerate_stable_lattices(pair, V, o);
    } catch (const BudgetExhausted&) {
      return std::nullopt;
    }
    b = lattice::enumerate_stable_lattices(scaled, V, o);
    if (a.count != b.count) return "count " + std::to_string(a.count) + " vs " + std::to_string(b.count);
  }
  return "";
}

}  // namespace

std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int instances) {
  Suite s{Rng(seed), instances, {}};
  s.run("evaluation is a ring homomorphism", evaluation_homomorphism);
  s.run("quotient mod I^n commutes with evaluation", quotient_square);
  s.run("Tor symmetry", tor_symmetry);
  s.run("regular sequences are acyclic", acyclicity);
  s.run("chi agrees at (N, M) and (N+1, M+1)", stabilization);
  s.run("Artin-Rees constant is unit invariant", ar_unit_invariance);
  s.run("refining a certified ball keeps its value", refinement_soundness);
  s.run("dual of the dual is the lattice", duality_involution);
  s.run("unit multiples of u give the same counts", scaling_equivariance);
  return s.results;
}

}  // namespace lcint::app
