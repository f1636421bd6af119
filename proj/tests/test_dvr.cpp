#include "lcint/errors.hpp"
#include "lcint/ring/dvr.hpp"

#include <doctest.h>

#include <memory>
#include <random>

using namespace lcint::ring;

TEST_CASE("valuations in W/p^5") {
  auto R = std::make_shared<const Dvr>(DvrSpec{DvrKind::padic, 5, 5, 0});
  CHECK(dvr_valuation(DvrElement(R, 1)) == 0);
  CHECK(dvr_valuation(DvrElement(R, 25)) == 2);
  CHECK_FALSE(dvr_valuation(DvrElement(R, 0)).has_value());
  CHECK(R->val(3 * 125) == 3);
}

TEST_CASE("construction validates the spec") {
  CHECK_THROWS_AS(Dvr(DvrSpec{DvrKind::padic, 6, 3, 0}), lcint::PreconditionError);
  CHECK_THROWS_AS(Dvr(DvrSpec{DvrKind::padic, 5, 0, 0}), lcint::PreconditionError);
  CHECK_THROWS_AS(Dvr(DvrSpec{DvrKind::tadic, 2, 3, 6}), lcint::PreconditionError);
  CHECK_THROWS_AS(Dvr(DvrSpec{DvrKind::padic, 5, 40, 0}), lcint::PreconditionError);
  CHECK_NOTHROW(Dvr(DvrSpec{DvrKind::tadic, 2, 4, 8}));
}

TEST_CASE("p-adic arithmetic agrees with integers mod p^N") {
  const Dvr R(DvrSpec{DvrKind::padic, 3, 7, 0});
  const std::int64_t m = 2187;
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t a = static_cast<std::int64_t>(rng() % 100000) - 50000;
    const std::int64_t b = static_cast<std::int64_t>(rng() % 100000) - 50000;
    auto mod = [&](std::int64_t v) { return static_cast<Code>(((v % m) + m) % m); };
    CHECK(R.add(R.from_integer(a), R.from_integer(b)) == mod(a + b));
    CHECK(R.sub(R.from_integer(a), R.from_integer(b)) == mod(a - b));
    CHECK(R.mul(R.from_integer(a), R.from_integer(b)) == mod(a * b));
  }
}

TEST_CASE("quotients, inverses and lifts") {
  for (auto spec : {DvrSpec{DvrKind::padic, 5, 6, 0}, DvrSpec{DvrKind::tadic, 2, 5, 4}, DvrSpec{DvrKind::tadic, 3, 4, 9}}) {
    const Dvr R(spec);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
      const Code a = rng() % R.size(), b = rng() % R.size();
      if (R.is_unit(a)) CHECK(R.mul(a, R.unit_inverse(a)) == 1);
      if (b != 0 && R.val(a) >= R.val(b)) CHECK(R.mul(R.quotient(a, b), b) == a);
      // multiplication is commutative and distributes
      const Code c = rng() % R.size();
      CHECK(R.mul(a, b) == R.mul(b, a));
      CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
      CHECK(R.add(a, R.neg(a)) == 0);
      // the valuation of a product is additive below precision
      if (R.val(a) + R.val(b) < R.precision()) CHECK(R.val(R.mul(a, b)) == R.val(a) + R.val(b));
    }
    DvrSpec fine = spec;
    fine.precision += 3;
    const Dvr F(fine);
    for (int i = 0; i < 100; ++i) {
      const Code a = rng() % R.size(), b = rng() % R.size();
      // lift then project is the identity; lifts commute with negation
      CHECK(F.project(R.lift(a, F), R) == a);
      CHECK(R.lift(R.neg(a), F) == F.neg(R.lift(a, F)));
      CHECK(F.project(F.mul(R.lift(a, F), R.lift(b, F)), R) == R.mul(a, b));
    }
  }
}

TEST_CASE("t-adic uniformizer has valuation one") {
  const Dvr R(DvrSpec{DvrKind::tadic, 2, 5, 4});
  CHECK(R.val(R.pi_power(1)) == 1);
  CHECK(R.mul(R.pi_power(2), R.pi_power(3)) == 0);
  // characteristic p
  Code s = 0;
  for (int i = 0; i < 2; ++i) s = R.add(s, 1);
  CHECK(s == 0);
}
