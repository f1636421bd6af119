#include "builders.hpp"
#include "lcint/errors.hpp"
#include "lcint/koszul/chain_complex.hpp"
#include "lcint/ring/ideal.hpp"
#include "lcint/ring/regular_sequence.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace lcint;
using namespace lcint::koszul;
using ring::LocalRing;
using testing_support::element;
using testing_support::poly;
using testing_support::Terms;

namespace {

std::vector<std::optional<int>> lengths(const std::vector<HomologyGroup>& h) {
  std::vector<std::optional<int>> out;
  for (const auto& g : h) out.push_back(g.length);
  return out;
}

const Terms X{{{1}, 1}};
Terms pi_terms(std::int64_t p) { return {{{0}, p}}; }

}  // namespace

TEST_CASE("Koszul complex shapes and signs") {
  const auto A = LocalRing::make(5, 4, 1, 4);
  const auto x = TruncatedRingElement::variable(A, 0);
  const auto K1 = koszul_complex({x});
  CHECK(K1.top_degree() == 1);
  CHECK(K1.differential(1).at(0, 0) == x);
  const auto g = x * x + TruncatedRingElement::integer(A, 5);
  const auto K2 = koszul_complex({x, g});
  CHECK(K2.rank(0) == 1);
  CHECK(K2.rank(1) == 2);
  CHECK(K2.rank(2) == 1);
  CHECK(K2.differential(1).at(0, 0) == x);
  CHECK(K2.differential(1).at(0, 1) == g);
  CHECK(K2.differential(2).at(0, 0) == -g);
  CHECK(K2.differential(2).at(1, 0) == x);
  std::mt19937_64 rng(1);
  const auto B = LocalRing::make(3, 3, 2, 3);
  for (int i = 0; i < 10; ++i) {
    std::vector<TruncatedRingElement> f;
    for (int j = 0; j < 3; ++j) f.push_back(element(B, testing_support::random_terms(rng, 2, 3, 10)));
    // construction checks d o d = 0 and throws otherwise
    CHECK_NOTHROW(koszul_complex(f));
    CHECK(koszul_complex(f).rank(1) == 3);
    CHECK(koszul_complex(f).rank(2) == 3);
  }
}

TEST_CASE("a non-complex is rejected") {
  const auto A = LocalRing::make(5, 2, 1, 2);
  const auto one = TruncatedRingElement::integer(A, 1);
  RingMatrix d1(A, 1, 1), d2(A, 1, 1);
  d1.at(0, 0) = one;
  d2.at(0, 0) = one;
  CHECK_THROWS_AS(ChainComplex(A, {1, 1, 1}, {d1, d2}), PreconditionError);
}

TEST_CASE("homology of Koszul(pi, x) at p = 3, N = M = 4") {
  const auto A = LocalRing::make(3, 4, 1, 4);
  const oracle::Ring R{3, 4, 1, 4};
  const auto h = homology(koszul_complex({element(A, pi_terms(3)), element(A, X)}));
  REQUIRE(h.size() == 3);
  CHECK(h[0].length == 1);
  CHECK(h[1].length == 0);
  CHECK(h[2].length == 0);
  CHECK(lengths(h) == oracle::stable_koszul_lengths(R, {poly(R, pi_terms(3)), poly(R, X)}));
}

TEST_CASE("zero differential") {
  const auto A = LocalRing::make(3, 3, 1, 2);
  RingMatrix d(A, 1, 1);
  const auto h = homology(ChainComplex(A, {1, 1}, {d}));
  REQUIRE(h.size() == 2);
  for (const auto& g : h) {
    CHECK(g.presentation.generators == A->dimension());
    CHECK(g.presentation.relations.empty());
    CHECK_FALSE(g.length.has_value());
  }
}

TEST_CASE("Koszul(x, x) is not acyclic") {
  const auto A = LocalRing::make(3, 4, 1, 4);
  const auto x = element(A, X);
  const auto h = homology(koszul_complex({x, x}));
  CHECK(h[1].presentation.generators > 0);
  CHECK(h[1].length != std::optional<int>(0));
}

TEST_CASE("derived tensor products of cyclic quotients") {
  SUBCASE("transversal") {
    const auto A = LocalRing::make(5, 6, 1, 6);
    const auto x = element(A, X);
    const auto C = derived_tensor_cyclic({{x}, {x - element(A, pi_terms(5))}});
    const auto h = homology(C);
    CHECK(h[0].length == 1);
    CHECK(h[1].length == 0);
    CHECK(h[2].length == 0);
    const auto e = euler_characteristic(C);
    CHECK(e.chi == 1);
    CHECK(e.stabilized);
  }
  SUBCASE("self-intersection of the closed point") {
    const auto A = LocalRing::make(3, 4, 1, 4);
    const oracle::Ring R{3, 4, 1, 4};
    const auto pi = element(A, pi_terms(3)), x = element(A, X);
    const auto C = derived_tensor_cyclic({{pi, x}, {pi, x}});
    const auto h = homology(C);
    REQUIRE(h.size() == 5);
    CHECK(h[0].length == 1);
    CHECK(h[1].length == 2);
    CHECK(h[2].length == 1);
    CHECK(h[3].length == 0);
    CHECK(h[4].length == 0);
    const auto concat = oracle::stable_koszul_lengths(R, {poly(R, pi_terms(3)), poly(R, X), poly(R, pi_terms(3)), poly(R, X)});
    CHECK(lengths(h) == concat);
    const auto e = euler_characteristic(C);
    CHECK(e.chi == 0);
    CHECK(e.stabilized);
  }
  SUBCASE("single factor is the Koszul complex") {
    const auto A = LocalRing::make(3, 4, 1, 4);
    const auto x = element(A, X);
    const auto C = derived_tensor_cyclic({{x}});
    CHECK(C.top_degree() == 1);
    CHECK(C.differential(1).at(0, 0) == x);
  }
  SUBCASE("non-regular factor") {
    const auto A = LocalRing::make(3, 4, 1, 4);
    const auto x = element(A, X);
    CHECK_THROWS_AS(derived_tensor_cyclic({{x, x}, {x}}), PreconditionError);
  }
}

TEST_CASE("Euler characteristics") {
  const auto A = LocalRing::make(5, 6, 1, 6);
  const auto x = element(A, X);
  CHECK(euler_characteristic(koszul_complex({x, x - element(A, pi_terms(5))})).chi == 1);
  const auto unit = euler_characteristic(koszul_complex({TruncatedRingElement::integer(A, 1)}));
  CHECK(unit.chi == 0);
  CHECK(unit.stabilized);
  // (x) alone: A/(x) = W/5^6 has no finite length at this precision
  const auto bad = euler_characteristic(koszul_complex({x}));
  CHECK_FALSE(bad.chi.has_value());
  CHECK_FALSE(bad.stabilized);
}

TEST_CASE("regular sequences") {
  const auto A = LocalRing::make(3, 4, 1, 4);
  const auto x = element(A, X);
  const auto pi = element(A, pi_terms(3));
  CHECK(ring::is_regular_sequence({pi, x}).regular);
  CHECK_FALSE(ring::is_regular_sequence({x, x}).regular);
  const auto B = LocalRing::make(5, 6, 1, 6);
  const auto rep = ring::is_regular_sequence({element(B, {{{2}, 1}, {{0}, -5}}), element(B, {{{1}, 1}, {{0}, -7}})});
  CHECK(rep.regular);
  CHECK(rep.precision == 6);
  CHECK(rep.degree_cap == 6);
  CHECK(rep.lift_precision > 6);
  CHECK_THROWS_AS(ring::is_regular_sequence({x, x, x}), PreconditionError);
}

TEST_CASE("stable homology matches the independent oracle on random sequences") {
  std::mt19937_64 rng(77);
  const oracle::Ring R{3, 3, 1, 3};
  const auto A = LocalRing::make(3, 3, 1, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng() % 3;
    std::vector<TruncatedRingElement> f;
    std::vector<oracle::Poly> g;
    for (std::size_t i = 0; i < r; ++i) {
      const auto t = testing_support::random_terms(rng, 1, 3, 6);
      f.push_back(element(A, t));
      g.push_back(poly(R, t));
    }
    CHECK(homology_lengths(koszul_complex(f)) == oracle::stable_koszul_lengths(R, g));
  }
}

TEST_CASE("raw homology matches enumeration of a tiny ring") {
  std::mt19937_64 rng(5);
  const oracle::Ring R{2, 2, 1, 2};
  const auto A = LocalRing::make(2, 2, 1, 2);
  HomologyOptions raw;
  raw.stable = false;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t r = 1 + rng() % 2;
    std::vector<TruncatedRingElement> f;
    std::vector<oracle::Poly> g;
    for (std::size_t i = 0; i < r; ++i) {
      const auto t = testing_support::random_terms(rng, 1, 2, 3);
      f.push_back(element(A, t));
      g.push_back(poly(R, t));
    }
    const auto brute = oracle::brute_raw_koszul_log_orders(R, g);
    const auto ours = homology(koszul_complex(f), raw);
    for (std::size_t i = 0; i < ours.size(); ++i) {
      // log_p of the order of the presented module
      int log_order = 0;
      const auto W = ours[i].presentation.ring;
      std::vector<ring::Row> rows;
      for (const auto& col : ours[i].presentation.relations) {
        ring::Row row;
        for (const auto& e : col) row.push_back(e.constant_term());
        rows.push_back(row);
      }
      for (const auto& v : ring::smith_valuations(W->dvr(), rows, ours[i].presentation.generators))
        log_order += v ? *v : W->precision();
      CHECK(log_order == brute[i]);
    }
  }
}
