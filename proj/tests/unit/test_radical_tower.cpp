#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "transvecta/errors.hpp"
#include "transvecta/radical_tower.hpp"

using namespace transvecta;

namespace {

TowerElement q2(long a, long b) { return TowerElement{TowerElement(a), TowerElement(b)}; }

}  // namespace

TEST_SUITE("radical_tower") {

TEST_CASE("arithmetic in Q(sqrt 2)") {
  const TowerContext k = TowerContext::over_rationals(2);
  const TowerElement r = q2(0, 1);
  CHECK(k.mul(r, r) == TowerElement(2));
  CHECK(k.inv(q2(1, 1)) == q2(-1, 1));
  CHECK((r + (-r)).is_zero());
  CHECK(k.str(q2(-1, 1)) == "-1 + sqrt(2)");
  CHECK_THROWS_AS(k.inv(TowerElement(0)), DivisionByZero);
}

TEST_CASE("extension rejects squares") {
  CHECK_THROWS(TowerContext::over_rationals(4));
  CHECK_THROWS(TowerContext::over_rationals(-2));
  const TowerContext k = TowerContext::over_rationals(2);
  CHECK_THROWS(k.extend(q2(3, 2)));
  CHECK_NOTHROW(k.extend(q2(3, 1)));
}

TEST_CASE("sign") {
  const TowerContext k = TowerContext::over_rationals(2);
  CHECK(k.sign(q2(-1, 1)) == 1);
  CHECK(k.sign(q2(3, -2)) == 1);
  CHECK(k.sign(TowerElement(0)) == 0);
  CHECK(k.sign(q2(-3, 2)) == -1);
}

TEST_CASE("sign agrees with an interval oracle") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> d(-60, 60);
  for (long c : {2L, 3L, 5L, 7L, 1000003L}) {
    const TowerContext k = TowerContext::over_rationals(c);
    for (int i = 0; i < 500; ++i) {
      const long a = d(rng);
      const long b = d(rng);
      const int expected = oracle::interval_sign(a, b, c);
      if (expected == 0 && !(a == 0 && b == 0)) continue;
      CHECK(k.sign(q2(a, b)) == expected);
    }
  }
}

TEST_CASE("field axioms on random elements of a depth-2 tower") {
  const TowerContext k = TowerContext::over_rationals(2).extend(q2(3, 1));
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> d(-9, 9);
  auto rnd = [&] { return TowerElement{q2(d(rng), d(rng)), q2(d(rng), d(rng))}; };
  for (int i = 0; i < 60; ++i) {
    const TowerElement x = rnd(), y = rnd(), z = rnd();
    CHECK(k.mul(x, y) == k.mul(y, x));
    CHECK(k.mul(k.mul(x, y), z) == k.mul(x, k.mul(y, z)));
    CHECK(k.mul(x, y + z) == k.mul(x, y) + k.mul(x, z));
    CHECK((x + y) - y == x);
    if (!x.is_zero()) CHECK(k.mul(x, k.inv(x)) == TowerElement(1).lifted(2));
    const int s = k.sign(x);
    CHECK(s == (k.to_double(x) > 0 ? 1 : (k.to_double(x) < 0 ? -1 : 0)));
    CHECK(k.sign(k.square(x)) == (x.is_zero() ? 0 : 1));
  }
}

TEST_CASE("square test") {
  const TowerContext q = TowerContext::over_rationals(2);
  CHECK_FALSE(q.is_square(TowerElement(2), 0));
  CHECK(q.is_square(TowerElement(9), 0));
  CHECK(q.is_square(q2(3, 2)));
  const auto root = q.sqrt_in_field(q2(3, 2));
  REQUIRE(root);
  CHECK(*root == q2(1, 1));
  CHECK_FALSE(q.is_square(q2(-31, 22)));
  CHECK(q.is_square(TowerElement(2)));
  CHECK_FALSE(q.is_square(q2(-1, 0)));
}

TEST_CASE("squares of random elements are recognised") {
  const TowerContext k = TowerContext::over_rationals(2).extend(q2(3, 1));
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<long> d(-7, 7);
  for (int i = 0; i < 40; ++i) {
    const TowerElement x{q2(d(rng), d(rng)), q2(d(rng), d(rng))};
    const auto r = k.sqrt_in_field(k.square(x));
    REQUIRE(r);
    CHECK((*r == x || *r == -x));
    CHECK(k.sign(*r) >= 0);
  }
}

TEST_CASE("orbit certification") {
  const OrbitReport rep = orbit_verify(-1, 1, 2, 3);
  REQUIRE(rep.states.size() == 4);
  CHECK(rep.states[0].y_approx == 2.0);
  CHECK(rep.states[0].x_approx == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK(rep.states[0].y_approx > rep.states[0].x_approx * rep.states[0].x_approx);
  for (std::size_t n = 1; n < rep.states.size(); ++n) {
    const auto& s = rep.states[n];
    CHECK(s.k > 0);
    CHECK(s.j > 0);
    CHECK(s.x_approx > 0);
    CHECK(s.y_approx > 0);
    CHECK(s.y_approx < rep.states[n - 1].x_approx * rep.states[n - 1].x_approx);
    CHECK(s.x_approx < std::sqrt(s.y_approx));
  }
  CHECK(rep.states[1].k == 11);
  CHECK(rep.states[1].j == 1);
}

TEST_CASE("orbit certification rejects bad starts") {
  CHECK_THROWS_AS(orbit_verify(-1, 1, 0, 2), InvariantViolation);
  CHECK_THROWS(orbit_verify(-1, 1, 2, kTowerMaxDepth + 1));
}

TEST_CASE("M0 identity") {
  const IdentityCheck c = m0_identity_check();
  CHECK(c.holds);
  CHECK(c.context.str(c.x) == "-1 + sqrt(2)");
  CHECK(c.context.str(c.y) == "2");
}

}  // TEST_SUITE
