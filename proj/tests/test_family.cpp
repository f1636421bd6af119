#include "lcint/errors.hpp"
#include "lcint/family/fiber.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace lcint;
using namespace lcint::family;
using ring::LocalRing;

namespace {

ContinuousApprox poly(const LocalRingPtr& A, const BallSpace& S, const std::string& text) {
  return ContinuousApprox::polynomial(A, S, parse_expression(text, A->variables(), S.k));
}

TruncatedRingElement integer(const LocalRingPtr& A, std::int64_t v) { return TruncatedRingElement::integer(A, v); }

Ball point(const BallSpace& S, int level, std::uint64_t s) { return Ball(S, level, {s}); }

}  // namespace

TEST_CASE("balls") {
  const BallSpace S{5, 1};
  const auto root = Ball::root(S);
  CHECK(root.address() == "*");
  CHECK(root.level() == 0);
  const auto kids = root.children();
  REQUIRE(kids.size() == 5);
  for (std::size_t i = 0; i < kids.size(); ++i) CHECK(kids[i].address() == std::to_string(i));
  const auto b = point(S, 3, 7);  // 7 = 2 + 1*5
  CHECK(b.address() == "210");
  CHECK(parse_ball(S, "210") == b);
  CHECK(b.parent().address() == "21");
  CHECK(root.contains(b));
  CHECK(kids[2].contains(b));
  CHECK_FALSE(kids[1].intersects(b));
  CHECK(root.count_at(3) == 125);
  CHECK(subdivide(kids[0], 2).size() == 5);
  CHECK(root < kids[0]);
  CHECK(kids[0] < kids[0].children()[0]);
  CHECK(kids[0].children()[4] < kids[1]);
  CHECK(point(S, 2, 7 + 25) == point(S, 2, 7));

  const BallSpace S2{2, 2};
  const Ball c(S2, 2, {1, 2});
  CHECK(c.address() == "10.01");
  CHECK(parse_ball(S2, c.address()) == c);
  CHECK(Ball::root(S2).children().size() == 4);

  CHECK_THROWS_AS(parse_ball(S, "7"), PreconditionError);
  CHECK_THROWS_AS(validate(BallSpace{4, 1}), PreconditionError);
  CHECK_THROWS_AS(validate(BallSpace{5, 0}), PreconditionError);
}

TEST_CASE("step functions: partition checks and canonical form") {
  const BallSpace S{2, 1};
  const auto root = Ball::root(S);
  const auto k = root.children();
  using SF = StepFunction<int>;
  CHECK_THROWS_AS(SF(S, {{k[0], 1}}), PreconditionError);
  CHECK_THROWS_AS(SF(S, {{k[0], 1}, {k[0].children()[0], 1}, {k[1], 2}}), PreconditionError);

  std::vector<std::pair<Ball, int>> fine;
  for (const auto& c : subdivide(root, 3)) fine.emplace_back(c, c.residues()[0] % 2 == 0 ? 4 : 5);
  const SF f(S, fine);
  REQUIRE(f.pieces().size() == 2);
  CHECK(f.pieces()[0] == std::pair{k[0], 4});
  CHECK(f.pieces()[1] == std::pair{k[1], 5});
  CHECK(SF(S, f.pieces()) == f);
  for (const auto& c : subdivide(root, 3)) CHECK(f.at(c) == (c.residues()[0] % 2 == 0 ? 4 : 5));
  CHECK_THROWS_AS(f.at(root), PreconditionError);
  CHECK(SF::constant(S, 3).pieces().size() == 1);
  CHECK(f.map([](int v) { return v > 4; }).at(k[1]));
  CHECK(f.combine(SF::constant(S, 1), [](int a, int b) { return a + b; }).at(k[0]) == 5);
}

TEST_CASE("canonicalisation is idempotent and keeps every value") {
  const BallSpace S{3, 1};
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<Ball, int>> pieces;
    for (const auto& b : subdivide(Ball::root(S), 3)) pieces.emplace_back(b, static_cast<int>(rng() % 2));
    const StepFunction<int> f(S, pieces);
    CHECK(StepFunction<int>(S, f.pieces()) == f);
    for (const auto& [b, v] : pieces) CHECK(f.at(b) == v);
  }
}

TEST_CASE("expressions") {
  const auto f = parse_expression("x - 3*s^2 + pi*x", 1, 1);
  CHECK(f.depends_on_parameters());
  CHECK(parse_expression(to_string(f), 1, 1) == f);
  CHECK(parse_expression("(x + 1)^2", 1, 0) == parse_expression("x^2 + 2*x + 1", 1, 0));
  CHECK(parse_expression("x1*x2 - s2", 2, 2).terms.size() == 2);
  CHECK_FALSE(parse_expression("pi^3 - x", 1, 1).depends_on_parameters());
  CHECK_THROWS_AS(parse_expression("y", 1, 1), PreconditionError);
  CHECK_THROWS_AS(parse_expression("s", 1, 0), PreconditionError);
  CHECK_THROWS_AS(parse_expression("x +", 1, 0), PreconditionError);
  CHECK_THROWS_AS(parse_expression("99999999999999999999", 1, 0), PreconditionError);
}

TEST_CASE("evaluation at a fiber") {
  const auto A = LocalRing::make(5, 3, 1, 3);
  const BallSpace S{5, 1};
  const auto a = integer(A, 3) + TruncatedRingElement::variable(A, 0);
  CHECK(evaluate_at_fiber(ContinuousApprox::constant(S, a), point(S, 2, 17)) == a);

  // identity tower: level n carries b mod I^n on b + 5^n Z_5
  std::vector<StepFunction<TruncatedRingElement>> levels;
  for (int n = 0; n <= 3; ++n) {
    std::vector<std::pair<Ball, TruncatedRingElement>> pieces;
    for (const auto& b : subdivide(Ball::root(S), n))
      pieces.emplace_back(b, integer(A, static_cast<std::int64_t>(b.residues()[0])).reduce_mod_maximal_power(n));
    levels.emplace_back(S, pieces);
  }
  const auto id = ContinuousApprox::tower(A, levels);
  CHECK(id.resolution() == 3);
  CHECK(evaluate_at_fiber(id, point(S, 3, 7)) == integer(A, 7));
  CHECK(evaluate_at_fiber(poly(A, S, "s"), point(S, 3, 7)) == integer(A, 7));
  CHECK_THROWS_AS(evaluate_at_fiber(id, point(S, 2, 7)), PreconditionError);
  auto bad = levels;
  std::swap(bad[1], bad[2]);
  CHECK_THROWS_AS(ContinuousApprox::tower(A, bad), PreconditionError);

  const auto B = LocalRing::make(2, 3, 1, 3);
  const BallSpace S2{2, 1};
  const auto x = TruncatedRingElement::variable(B, 0);
  const StepFunction<TruncatedRingElement> F(S2, {{Ball(S2, 1, {0}), integer(B, 1)}, {Ball(S2, 1, {1}), x}});
  CHECK(evaluate_at_fiber(F, Ball(S2, 1, {5})) == x);
  CHECK(evaluate_at_fiber(ContinuousApprox::step(B, F), Ball(S2, 4, {5})) == x);
}

TEST_CASE("quotient by a power of I") {
  const auto A = LocalRing::make(5, 3, 1, 3);
  const BallSpace S{5, 1};
  const auto id = poly(A, S, "s");
  const auto full = quotient_mod_ideal_power(id, 6);
  for (const auto& b : subdivide(Ball::root(S), 3)) CHECK(full.at(b) == evaluate_at_fiber(id, b));

  const auto q1 = quotient_mod_ideal_power(id, 1);
  REQUIRE(q1.pieces().size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(q1.pieces()[i].first.level() == 1);
    CHECK(q1.pieces()[i].second == integer(A, static_cast<std::int64_t>(i)));
  }
  const auto pi = quotient_mod_ideal_power(ContinuousApprox::constant(S, TruncatedRingElement::pi_power(A, 1)), 1);
  REQUIRE(pi.pieces().size() == 1);
  CHECK(pi.pieces()[0].second.is_zero());
  CHECK(quotient_mod_ideal_power(id, 0).pieces().size() == 1);
  CHECK_THROWS_AS(quotient_mod_ideal_power(id, 7), PreconditionError);
  CHECK_THROWS_AS(quotient_mod_ideal_power(id, 3, 10), BudgetExhausted);
}

TEST_CASE("family arithmetic") {
  const auto A = LocalRing::make(5, 3, 1, 3);
  const BallSpace S{5, 1};
  const auto f = poly(A, S, "x*s + pi*s^2 - 2");
  const auto zero = ContinuousApprox::constant(S, TruncatedRingElement::zero(A));
  const auto one = ContinuousApprox::constant(S, integer(A, 1));
  for (const auto& b : subdivide(Ball::root(S), 3)) {
    CHECK(evaluate_at_fiber(family_arith(f, zero, ring::ArithOp::add), b) == evaluate_at_fiber(f, b));
    CHECK(evaluate_at_fiber(family_arith(f, one, ring::ArithOp::mul), b) == evaluate_at_fiber(f, b));
  }

  const auto B = LocalRing::make(2, 2, 1, 2);
  const BallSpace S2{2, 1};
  const auto x = TruncatedRingElement::variable(B, 0);
  const auto d = ContinuousApprox::constant(S2, x) - poly(B, S2, "s");
  CHECK(d.resolution() == 2);
  for (const auto& b : subdivide(Ball::root(S2), 2))
    CHECK(evaluate_at_fiber(d, b) == x - integer(B, static_cast<std::int64_t>(b.residues()[0])));

  const auto C = LocalRing::make(5, 2, 1, 2);
  CHECK_THROWS_AS(family_arith(f, ContinuousApprox::constant(S, integer(C, 1)), ring::ArithOp::add), SpecMismatch);
  CHECK_THROWS_AS(family_arith(f, ContinuousApprox::constant(S2, integer(A, 1)), ring::ArithOp::add), SpecMismatch);
}

TEST_CASE("closedness of principal ideals") {
  const auto A = LocalRing::make(5, 6, 1, 6);
  const BallSpace S{5, 1};
  const auto x = ContinuousApprox::constant(S, TruncatedRingElement::variable(A, 0));
  const auto r = is_principal_ideal_closed(x, 4);
  CHECK(r.status == Closedness::closed);
  CHECK(r.uniform_k == 1);
  CHECK_FALSE(r.witness);

  const auto unit = is_principal_ideal_closed(ContinuousApprox::constant(S, integer(A, 2)), 4);
  CHECK(unit.status == Closedness::closed);
  CHECK(unit.uniform_k == 1);

  const auto varying = is_principal_ideal_closed(poly(A, S, "x^2 + pi*s*x"), 3);
  CHECK(varying.status == Closedness::closed);
  CHECK(varying.uniform_k == 2);

  const auto id = is_principal_ideal_closed(poly(A, S, "s"), 4);
  CHECK(id.status == Closedness::inconclusive);
  REQUIRE(id.witness);
  CHECK(id.witness->residues()[0] == 0);
  CHECK(id.witness->level() >= 1);
  CHECK_FALSE(id.reason.empty());
}

TEST_CASE("fiber criterion") {
  const auto A = LocalRing::make(5, 2, 1, 2);
  const BallSpace S{5, 1};
  const auto x = TruncatedRingElement::variable(A, 0);
  const auto J = fiber_criterion({poly(A, S, "x - s")}, 2);
  std::set<std::string> distinct;
  for (const auto& b : subdivide(Ball::root(S), 2)) {
    const auto expected = ring::Ideal::generated_by(A, {x - integer(A, static_cast<std::int64_t>(b.residues()[0]))});
    CHECK(J.at(b) == expected);
    distinct.insert(expected.to_string());
  }
  // equal neighbouring ideals are merged; every canonical piece is a real change
  CHECK(J.pieces().size() <= 25);
  CHECK(J.pieces().size() >= distinct.size());

  const auto Jx = fiber_criterion({ContinuousApprox::constant(S, x)}, 2);
  REQUIRE(Jx.pieces().size() == 1);
  CHECK(Jx.pieces()[0].second == ring::Ideal::generated_by(A, {x}));

  const auto B = LocalRing::make(3, 3, 1, 3);
  const BallSpace S3{3, 1};
  const auto y = TruncatedRingElement::variable(B, 0);
  const auto K = fiber_criterion({poly(B, S3, "x - s"), poly(B, S3, "x + s")}, 3);
  for (const auto& b : subdivide(Ball::root(S3), 3)) {
    const auto s = integer(B, static_cast<std::int64_t>(b.residues()[0]));
    CHECK(K.at(b) == ring::Ideal::generated_by(B, {y, s}));
    if (b.residues()[0] % 3) CHECK(K.at(b).is_unit_ideal());
  }
  // same fibers, different generators: same output
  CHECK(fiber_criterion({poly(B, S3, "x"), poly(B, S3, "2*s")}, 3) == K);
  CHECK(fiber_criterion({poly(A, S, "2*x - 2*s")}, 2) == J);

  CHECK_THROWS_AS(fiber_criterion({poly(A, S, "x - s")}, 1), BudgetExhausted);
}
