#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "transvecta/torus.hpp"

using namespace transvecta;

namespace {

const TorusMaps kIrrational{CircleMap::constant(0.0), CircleMap::constant(std::sqrt(2.0) - 1)};

}  // namespace

TEST_SUITE("torus_dyn") {

TEST_CASE("circle maps") {
  CHECK(CircleMap::parse("const:0.25")(0.9) == 0.25);
  CHECK(CircleMap::parse("lin:2")(0.75) == doctest::Approx(0.5));
  CHECK(CircleMap::parse("sine:0.5")(0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(CircleMap::parse("sine:1.5"), std::invalid_argument);
  CHECK_THROWS_AS(CircleMap::parse("cos:1"), std::invalid_argument);
  CHECK(wrap_unit(-0.25) == 0.75);
  CHECK(wrap_unit(3.5) == 0.5);
}

TEST_CASE("h translates by sigma2(y)") {
  const TorusPoint q = torus_h(kIrrational, {0.9, 0.5});
  CHECK(q.x == doctest::Approx(0.314214).epsilon(1e-6));
  CHECK(q.y == 0.5);
}

TEST_CASE("letters and inverses round-trip") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  const TorusMaps m{CircleMap::sine(0.5), CircleMap::linear(3.0)};
  for (int i = 0; i < 1000; ++i) {
    const TorusPoint p{d(rng), d(rng)};
    const TorusPoint a = torus_h_inv(m, torus_h(m, p));
    const TorusPoint b = torus_v_inv(m, torus_v(m, p));
    auto circ = [](double s, double t) { return std::abs(wrap_unit(s - t + 0.5) - 0.5); };
    CHECK(circ(a.x, p.x) <= 1e-12);
    CHECK(circ(b.y, p.y) <= 1e-12);
    CHECK(a.y == p.y);
    CHECK(b.x == p.x);
  }
}

TEST_CASE("trigonometric observables") {
  CHECK(TrigPoly::parse("one")(0.3) == 1.0);
  CHECK(TrigPoly::parse("cos:1")(0.0) == 1.0);
  CHECK(TrigPoly::parse("sin:2")(0.125) == doctest::Approx(1.0));
  CHECK(TrigPoly::parse("cos:3").mean() == 0.0);
  CHECK_THROWS(TrigPoly::parse("tan:1"));
}

TEST_CASE("orbit averages") {
  const TrigPoly one = TrigPoly::one();
  const TrigPoly c = TrigPoly::cosine(1);
  const TorusPoint p{0.2, 0.3};
  CHECK(orbit_average(kIrrational, one, c, p, 1000) == doctest::Approx(c(p.y)).epsilon(1e-14));
  CHECK(orbit_average(kIrrational, c, c, p, 1) == doctest::Approx(c(p.x) * c(p.y)));
  CHECK(std::abs(orbit_average(kIrrational, c, c, p, 100000)) <= 0.02);
}

TEST_CASE("rational distance") {
  CHECK(distance_to_rationals(0.5, 10) == 0.0);
  CHECK(distance_to_rationals(1.0 / 3 + 1e-6, 10) == doctest::Approx(1e-6).epsilon(1e-3));
  CHECK(distance_to_rationals(std::sqrt(2.0) - 1, 100) > 1e-5);
}

TEST_CASE("Birkhoff test is reproducible") {
  const auto a = birkhoff_product_test(kIrrational, TrigPoly::cosine(1), TrigPoly::cosine(1), 2000, 8, 5, 1);
  const auto b = birkhoff_product_test(kIrrational, TrigPoly::cosine(1), TrigPoly::cosine(1), 2000, 8, 5, 3);
  CHECK(a.deviations == b.deviations);
  CHECK(a.starts == 8);
  CHECK(a.rational_warnings == 0);
  const TorusMaps rational{CircleMap::constant(0.0), CircleMap::constant(0.5)};
  const auto r = birkhoff_product_test(rational, TrigPoly::cosine(1), TrigPoly::cosine(1), 100, 4, 5, 1);
  CHECK(r.rational_warnings == 4);
}

TEST_CASE("Lebesgue histogram") {
  const TorusMaps m{CircleMap::sine(0.5), CircleMap::constant(std::sqrt(2.0) - 1)};
  const auto hist = lebesgue_histogram(m, TorusLetter::kV, 100000, 10, 7);
  CHECK(hist.counts.size() == 100);
  std::uint64_t total = 0;
  for (auto c : hist.counts) total += c;
  CHECK(total == 100000);
  CHECK(hist.expected == doctest::Approx(1000.0));
  CHECK(hist.max_abs_z <= 5.0);
}

}  // TEST_SUITE
