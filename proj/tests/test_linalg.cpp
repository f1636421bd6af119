#include "builders.hpp"
#include "lcint/ring/ideal.hpp"
#include "lcint/ring/linalg.hpp"
#include "lcint/ring/module.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace lcint::ring;

namespace {

std::vector<Row> random_rows(std::mt19937_64& rng, const Dvr& R, std::size_t m, std::size_t n) {
  std::vector<Row> rows(m, Row(n));
  for (auto& r : rows)
    for (auto& c : r) {
      // bias towards non-units so that torsion shows up
      const Code v = rng() % R.size();
      c = rng() % 3 == 0 ? v : R.mul(v, R.pi_power(static_cast<int>(rng() % R.precision())));
    }
  return rows;
}

oracle::Matrix columns_of(const std::vector<Row>& rows, std::size_t n) {
  // rows become columns: relation columns of a presentation
  oracle::Matrix A(n, std::vector<oracle::Int>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) A[i][j] = static_cast<oracle::Int>(rows[j][i]);
  return A;
}

}  // namespace

TEST_CASE("module length examples") {
  const auto W = coefficient_ring(LocalRing::make(7, 5, 0, 1));
  auto c = [&](std::int64_t v) { return TruncatedRingElement::integer(W, v); };
  auto m = ModulePresentation::free(W, 2);
  m.add_relation({c(343), c(0)});
  m.add_relation({c(0), c(7)});
  CHECK(module_length(m) == 4);
  auto k = ModulePresentation::free(W, 2);
  k.add_relation({c(7), c(0)});
  k.add_relation({c(0), c(1)});
  CHECK(module_length(k) == 1);
  CHECK_FALSE(module_length(ModulePresentation::free(W, 1)).has_value());
  CHECK_THROWS(module_length(ModulePresentation::free(LocalRing::make(7, 5, 1, 2), 1)));
}

TEST_CASE("module length matches exhaustive enumeration at p = 2") {
  std::mt19937_64 rng(99);
  for (int N = 1; N <= 4; ++N) {
    const auto W = coefficient_ring(LocalRing::make(2, N, 0, 1));
    const Dvr& R = W->dvr();
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 3, cols = rng() % 5;
      auto rows = random_rows(rng, R, cols, r);
      auto pres = ModulePresentation::free(W, r);
      std::vector<std::vector<oracle::Int>> oc;
      for (const auto& row : rows) {
        std::vector<TruncatedRingElement> col;
        for (Code v : row) col.push_back(TruncatedRingElement::constant(W, v));
        pres.add_relation(col);
        oc.emplace_back(row.begin(), row.end());
      }
      CHECK(module_length(pres) == oracle::brute_cokernel_length(2, N, oc, r));
    }
  }
}

TEST_CASE("3x4 relation matrices over W/5^6 agree with the Smith oracle") {
  std::mt19937_64 rng(3);
  const Dvr R(DvrSpec{DvrKind::padic, 5, 6, 0});
  for (int trial = 0; trial < 60; ++trial) {
    const auto rows = random_rows(rng, R, 4, 3);
    const auto ours = cokernel_length(R, rows, 3);
    const auto vals = oracle::smith_valuations(5, 6, columns_of(rows, 3));
    std::optional<int> expect;
    if (vals.size() == 3) {
      int s = 0;
      for (int v : vals) s += v;
      expect = s;
    }
    CHECK(ours == expect);
  }
}

TEST_CASE("adding relations never increases length; invariants are canonical") {
  std::mt19937_64 rng(17);
  const Dvr R(DvrSpec{DvrKind::padic, 3, 5, 0});
  for (int trial = 0; trial < 60; ++trial) {
    auto B = random_rows(rng, R, 3, 3);
    const auto C = random_rows(rng, R, 2, 3);
    auto BC = B;
    BC.insert(BC.end(), C.begin(), C.end());
    const auto lb = cokernel_length(R, B, 3), lbc = cokernel_length(R, BC, 3);
    if (lb && lbc) CHECK(*lbc <= *lb);
    if (lb) CHECK(lbc.has_value());
    // permuting and unit-scaling rows leaves the sorted invariants unchanged
    auto shuffled = B;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto& r : shuffled)
      for (auto& c : r) c = R.mul(c, 2);
    auto a = smith_valuations(R, B, 3), b = smith_valuations(R, shuffled, 3);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("span membership, intersection and kernels") {
  std::mt19937_64 rng(8);
  const Dvr R(DvrSpec{DvrKind::padic, 3, 4, 0});
  for (int trial = 0; trial < 60; ++trial) {
    const auto U = random_rows(rng, R, 3, 4), V = random_rows(rng, R, 3, 4);
    const Span su(R, 4, U), sv(R, 4, V);
    for (const auto& u : U) CHECK(su.contains(u));
    // order of the span via the oracle
    std::vector<std::vector<oracle::Int>> cols;
    for (const auto& u : U) cols.emplace_back(u.begin(), u.end());
    CHECK(su.length() == oracle::span_log_order(3, 4, cols, 4));
    // |U + V| |U cap V| = |U| |V|
    CHECK(su.sum(sv).length() + su.intersect(sv).length() == su.length() + sv.length());
    CHECK(su.contains(su.intersect(sv)));
    CHECK(sv.contains(su.intersect(sv)));
    // canonical form does not depend on generator order
    auto U2 = U;
    std::reverse(U2.begin(), U2.end());
    CHECK(Span(R, 4, U2) == su);
    // kernel rows really annihilate
    const auto K = left_kernel(R, U, 4);
    for (const auto& k : K.rows()) {
      Row acc(4, 0);
      for (std::size_t i = 0; i < U.size(); ++i)
        for (std::size_t j = 0; j < 4; ++j) acc[j] = R.add(acc[j], R.mul(k[i], U[i][j]));
      CHECK(acc == Row(4, 0));
    }
    // and the kernel has the right size: |ker| |im| = |domain|
    CHECK(K.length() + su.length() == 3 * 4);
    // solving for a random combination
    Row v(4, 0);
    Row coef{rng() % R.size(), rng() % R.size(), rng() % R.size()};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) v[j] = R.add(v[j], R.mul(coef[i], U[i][j]));
    const auto sol = solve_left(R, U, 4, v);
    REQUIRE(sol.has_value());
    Row w(4, 0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) w[j] = R.add(w[j], R.mul((*sol)[i], U[i][j]));
    CHECK(w == v);
  }
}

TEST_CASE("ideals: quotient lengths, sums, products") {
  using testing_support::element;
  const auto A = LocalRing::make(3, 4, 1, 4);
  const oracle::Ring OR{3, 4, 1, 4};
  const auto x = TruncatedRingElement::variable(A, 0);
  const auto pi = TruncatedRingElement::pi_power(A, 1);
  CHECK(Ideal::generated_by(A, {x, pi}).quotient_length() == 1);
  CHECK(Ideal::generated_by(A, {x, x - pi}) == Ideal::generated_by(A, {x, pi}));
  CHECK_FALSE(Ideal::generated_by(A, {x}).quotient_length().has_value());
  CHECK(Ideal::maximal_power(A, 1) == Ideal::generated_by(A, {x, pi}));
  CHECK(Ideal::maximal_power(A, 1) * Ideal::maximal_power(A, 2) == Ideal::maximal_power(A, 3));
  CHECK(Ideal::maximal_power(A, 7).is_zero());
  CHECK(Ideal::generated_by(A, {x + TruncatedRingElement::integer(A, 1)}).is_unit_ideal());
  CHECK(Ideal::generated_by(A, {x * x - pi}).generators().size() == 1);
  // quotient orders against enumeration in a ring small enough to list
  const auto S = LocalRing::make(2, 2, 1, 3);
  const oracle::Ring OS{2, 2, 1, 3};
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t1 = testing_support::random_terms(rng, 1, 3, 3), t2 = testing_support::random_terms(rng, 1, 3, 3);
    const auto J = Ideal::generated_by(S, {element(S, t1), element(S, t2)});
    const int total = static_cast<int>(S->log_cardinality());
    CHECK(total - J.length() == oracle::brute_quotient_log_order(OS, {testing_support::poly(OS, t1), testing_support::poly(OS, t2)}));
    // generators() generates the same ideal
    CHECK(Ideal::generated_by(S, J.generators()) == J);
  }
}
