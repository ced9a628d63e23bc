#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "transvecta/sigma_lines.hpp"

using namespace transvecta;

namespace {

Point2 curve(double alpha, double a, double x) { return {x, a * std::pow(x, alpha)}; }

}  // namespace

TEST_SUITE("sigma_lines_measure") {

TEST_CASE("parameter pushes") {
  CHECK(push_h(2.0, CurveParam::finite(1.0)).value == doctest::Approx(0.25));
  CHECK(push_v(3.0, CurveParam::finite(1.0)).value == 2.0);
  CHECK(push_h(1.0, CurveParam::finite(0.0)).value == 0.0);
  CHECK(push_h(2.0, CurveParam::infinity()) == CurveParam::finite(1.0));
  CHECK(push_v(2.0, CurveParam::infinity()).infinite);
}

TEST_CASE("pushes follow the curves pointwise") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> da(0.01, 10.0), dx(0.01, 5.0), dal(0.25, 4.0);
  for (int i = 0; i < 1000; ++i) {
    const double a = da(rng), x = dx(rng), alpha = dal(rng);
    const SigmaMap s = SigmaMap::power(alpha);
    const Point2 p = curve(alpha, a, x);
    const Point2 hp = h(s, p);
    const double scale = 1 + std::pow(a, 1 / alpha);
    const Point2 hq = curve(alpha, push_h(alpha, CurveParam::finite(a)).value, scale * x);
    CHECK((hp - hq).norm() <= 1e-10 * hp.norm());
    const Point2 vp = v(s, p);
    const Point2 vq = curve(alpha, push_v(alpha, CurveParam::finite(a)).value, x);
    CHECK((vp - vq).norm() <= 1e-10 * vp.norm());
  }
}

TEST_CASE("word specs") {
  const WordSpec w = WordSpec::parse("v:hv");
  CHECK(w.at(0) == Letter::kV);
  CHECK(w.at(1) == Letter::kH);
  CHECK(w.at(4) == Letter::kV);
  CHECK(w.shifted() == WordSpec::parse(":hv"));
  CHECK(WordSpec::parse(":hv").shifted() == WordSpec::parse(":vh"));
  CHECK(WordSpec::parse("h:v").constant_tail());
  CHECK_THROWS_AS(WordSpec::parse("hv"), std::invalid_argument);
  CHECK_THROWS_AS(WordSpec::parse("h:"), std::invalid_argument);
}

TEST_CASE("nested intervals shrink monotonically and contain a(w)") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    const WordSpec w = WordSpec::parse("vv:hvv");
    const LineParam a = a_of_word(alpha, w);
    double prev = INFINITY;
    for (std::size_t n = 1; n <= 40; ++n) {
      const ParamInterval in = nest(alpha, w, n);
      CHECK(in.width() <= prev);
      prev = in.width();
      if (!in.lo.infinite && !in.hi.infinite) {
        CHECK(in.lo.value <= a.a.value + 1e-12);
        CHECK(a.a.value <= in.hi.value + 1e-12);
      }
    }
  }
}

TEST_CASE("a(w)") {
  const LineParam g = a_of_word(1.0, WordSpec::parse(":hv"));
  CHECK(g.a.value == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-12));
  CHECK(std::abs(g.a.value - (std::sqrt(5.0) - 1) / 2) <= 1e-9);
  REQUIRE(g.fixed_point);
  CHECK(*g.fixed_point == doctest::Approx(g.a.value).epsilon(1e-10));
  for (double alpha : {0.5, 2.0, 3.0}) {
    CHECK(a_of_word(alpha, WordSpec::parse(":v")).a.infinite);
    CHECK(a_of_word(alpha, WordSpec::parse(":h")).a == CurveParam::finite(0.0));
    const double a = a_of_word(alpha, WordSpec::parse(":hv")).a.value;
    // (hv)^inf is fixed by P_h o P_v
    CHECK(push_h(alpha, push_v(alpha, CurveParam::finite(a))).value == doctest::Approx(a).epsilon(1e-10));
  }
}

TEST_CASE("a(w) is monotone in the word order") {
  // words beginning with v lie above words beginning with h
  for (double alpha : {1.0, 2.0}) {
    const double hv = a_of_word(alpha, WordSpec::parse(":hv")).a.value;
    const double vh = a_of_word(alpha, WordSpec::parse(":vh")).a.value;
    const double vvh = a_of_word(alpha, WordSpec::parse("v:vh")).a.value;
    CHECK(hv < vh);
    CHECK(vh < vvh);
  }
}

TEST_CASE("k(w)") {
  CHECK(k_of_word(1.0, WordSpec::parse(":hv")) == doctest::Approx(0.381966).epsilon(1e-6));
  CHECK(k_of_word(2.0, WordSpec::parse(":vh")) == 1.0);
  CHECK(k_of_word(0.5, WordSpec::parse("v:h")) == 1.0);
}

TEST_CASE("chart step") {
  const ChartStep st = h_sigma_step(1.0, 1.0, WordSpec::parse(":hv"));
  CHECK(st.x == doctest::Approx(0.381966).epsilon(1e-6));
  CHECK(st.word == WordSpec::parse(":vh"));
  const ChartStep sv = h_sigma_step(2.0, 0.7, WordSpec::parse(":vh"));
  CHECK(sv.x == 0.7);
  CHECK(sv.word == WordSpec::parse(":hv"));
  CHECK(chart_residual(2.0, 2.0, WordSpec::parse(":hv")) <= 1e-9);
  CHECK(chart_residual(0.5, 0.3, WordSpec::parse("vhh:hvv")) <= 1e-9);
}

TEST_CASE("kernel invariance") {
  CHECK(kernel_invariance_check(1.0, 2.0, 0.381966));
  CHECK(kernel_invariance_check(0.5, 3.0, 1.0));
  CHECK(kernel_invariance_check(1.0, std::numbers::e, 17.0));
  CHECK_THROWS_AS(kernel_invariance_check(2.0, 1.0, 1.0), std::invalid_argument);
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> d(0.001, 100.0);
  for (int i = 0; i < 1000; ++i) {
    double u = d(rng), v = d(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    CHECK(kernel_invariance_check(u, v, d(rng)));
  }
}

}  // TEST_SUITE
