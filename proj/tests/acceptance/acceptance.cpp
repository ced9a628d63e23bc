// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only
//
// Exit status is 0 iff every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../support/oracles.hpp"
#include "cli.hpp"
#include "transvecta/cfrac.hpp"
#include "transvecta/errors.hpp"
#include "transvecta/experiments.hpp"
#include "transvecta/regions.hpp"
#include "transvecta/sigma_lines.hpp"
#include "transvecta/torus.hpp"
#include "transvecta/words.hpp"

using namespace transvecta;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds; 0 for none
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

nlohmann::json run_cli(std::vector<std::string> args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  if (out.str().empty()) return nlohmann::json::object();
  return nlohmann::json::parse(out.str());
}

const char* const kFamilies[] = {"id", "pow:0.5", "pow:2", "pow:3", "lin:2:1", "sine:0.5"};

Outcome golden_alpha2() {
  int code = 0;
  const auto j = run_cli({"golden", "--alpha", "2"}, code);
  if (code != 0) return {false, fmt("exit code %d", code)};
  const double r = j["r"].get<double>();
  const double quartic = std::abs(r * r * r * r - 2 * r * r * r + r * r - 2 * r + 1);
  const double err = std::abs(r - 1.883203506);
  return {err <= 1e-8 && quartic <= 1e-9 && j["quartic_residual"].get<double>() <= 1e-9,
          fmt("r=%.12f |r-1.883203506|=%.2e quartic=%.2e", r, err, quartic)};
}

Outcome alpha_one_reduction() {
  const double g = golden_slope(1.0);
  const double gerr = std::abs(g - oracle::golden_mean());
  const auto e = expand(1.0, {std::numbers::pi, 1.0}, 4);
  const auto gauss = oracle::gauss_digits(std::numbers::pi_v<long double>, 8);
  const std::vector<DigitPair> expected{{3, 7}, {15, 1}, {292, 1}, {1, 1}};
  bool match = e.pairs == expected;
  for (std::size_t i = 0; match && i < 4; ++i) {
    match = e.pairs[i].a == static_cast<std::uint64_t>(gauss[2 * i]) &&
            e.pairs[i].b == static_cast<std::uint64_t>(gauss[2 * i + 1]);
  }
  std::string pairs;
  for (const auto& p : e.pairs) pairs += fmt("(%llu,%llu)", static_cast<unsigned long long>(p.a),
                                             static_cast<unsigned long long>(p.b));
  return {gerr <= 1e-9 && match, fmt("|golden(1)-phi|=%.2e pairs=%s", gerr, pairs.c_str())};
}

Outcome contraction() {
  std::mt19937_64 rng(20240501);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  double worst = 0.0;
  std::size_t checks = 0, stopped = 0;
  bool ok = true;
  for (const char* desc : kFamilies) {
    const auto s = SigmaMap::parse(desc);
    for (int i = 0; i < 1000; ++i) {
      const Point2 p0{d(rng), d(rng)};
      Point2 p = p0;
      for (int n = 1; n <= 20; ++n) {
        try {
          p = u_step(s, p).second.result;
        } catch (const DiagonalOrAxis&) {
          ++stopped;
          break;
        }
        const double ratio = p.norm() / (std::ldexp(1.0, -n) * p0.norm());
        worst = std::max(worst, ratio);
        ok = ok && ratio <= 1 + 1e-9;
        ++checks;
      }
    }
  }
  return {ok, fmt("max ||U^n p|| / (2^-n ||p||) = %.6f over %zu checks (%zu orbits reached an axis or diagonal)",
                  worst, checks, stopped)};
}

Outcome coding() {
  std::mt19937_64 rng(20240502);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  double worst = 0.0;
  std::size_t checks = 0, axis = 0;
  for (const char* desc : kFamilies) {
    const auto s = SigmaMap::parse(desc);
    for (int i = 0; i < 1000; ++i) {
      const Point2 p{d(rng), d(rng)};
      for (std::size_t n = 1; n <= 25; ++n) {
        Coding c;
        try {
          c = encode(s, p, n);
        } catch (const AxisHit&) {
          ++axis;
          break;
        }
        const Point2 en = euclid_iterate(s, p, n);
        const double e1 = (eval_word(s, c.word.inverse(), p) - en).norm() / p.norm();
        const double e2 = (eval_word(s, c.word, en) - p).norm() / p.norm();
        worst = std::max({worst, e1, e2});
        ++checks;
      }
    }
  }
  return {worst <= 1e-9 && checks > 0,
          fmt("max relative error %.2e over %zu (point, n) pairs (%zu orbits hit an axis)", worst, checks, axis)};
}

Outcome exact_kernel() {
  int code = 0;
  const auto v = run_cli({"tower", "verify-m0", "--depth", "4"}, code);
  const bool verified = code == 0 && v["all_invariants_hold"] == true && v["steps"].size() == 5;
  int code2 = 0;
  const auto id = run_cli({"tower", "identity-check"}, code2);
  const bool identity = code2 == 0 && id["holds"] == true && id["x"] == "-1 + sqrt(2)" && id["y"] == "2";
  return {verified && identity,
          fmt("verify-m0 depth 4: %s (exit %d); identity-check: (%s, %s)", verified ? "all clauses hold" : "failed",
              code, id.value("x", std::string("?")).c_str(), id.value("y", std::string("?")).c_str())};
}

Outcome mertens_identity() {
  MertensOptions exact;
  exact.exact = true;
  const auto id = SigmaMap::identity();
  const auto r10 = mertens_count(id, Ratio{1, 10}, exact);
  const auto r500 = mertens_count(id, Ratio{1, 500}, exact);
  const std::uint64_t oracle500 = oracle::coprime_pairs(500);
  const double target = 6.0 / (std::numbers::pi * std::numbers::pi);
  const double gap = std::abs(r500.normalized - target);
  return {r10.count == 63 && r500.count == oracle500 && gap <= 0.01,
          fmt("count(1/10)=%llu count(1/500)=%llu oracle=%llu normalized=%.6f |.-6/pi^2|=%.2e",
              static_cast<unsigned long long>(r10.count), static_cast<unsigned long long>(r500.count),
              static_cast<unsigned long long>(oracle500), r500.normalized, gap)};
}

Outcome mertens_alpha2() {
  const auto s = SigmaMap::power(2.0);
  const auto a = mertens_count(s, 1.0 / 100);
  const auto b = mertens_count(s, 1.0 / 200);
  const double rel = std::abs(a.normalized - b.normalized) / std::max(a.normalized, b.normalized);
  return {a.normalized > 0 && b.normalized > 0 && rel < 0.10,
          fmt("r=1/100: count=%llu normalized=%.6f; r=1/200: count=%llu normalized=%.6f; relative difference %.1f%%",
              static_cast<unsigned long long>(a.count), a.normalized, static_cast<unsigned long long>(b.count),
              b.normalized, 100 * rel)};
}

Outcome density() {
  const Grid2 grid;  // 20 x 20 on [0.05, 1]^2
  bool ok = true;
  std::string detail;
  for (double alpha : {1.0, 2.0}) {
    const auto s = SigmaMap::power(alpha);
    const auto c14 = density_coverage(s, 14, grid);
    const auto c16 = density_coverage(s, 16, grid);
    ok = ok && c14.hit == c14.cells;
    detail += fmt("alpha=%g: depth 14 covers %zu/%zu (max empty distance %.3f), depth-16 oracle %zu/%zu; ", alpha,
                  c14.hit, c14.cells, c14.max_empty_distance, c16.hit, c16.cells);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome relations() {
  const auto s = SigmaMap::sine_wobble(0.5);
  std::mt19937_64 rng(20240509);
  std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
  std::size_t fixed = 0;
  for (int i = 0; i < 1000; ++i) {
    const Point2 q{static_cast<double>(d(rng)), static_cast<double>(d(rng))};
    if (eval_word(s, relator_v4(), q) == q && eval_word(s, relator_v2u3(), q) == q) ++fixed;
  }
  std::uniform_int_distribution<int> letter(0, 3), len(1, 12);
  std::size_t agree = 0;
  for (int i = 0; i < 100; ++i) {
    Word w;
    for (int k = len(rng); k > 0; --k) w.push_back(static_cast<Letter>(letter(rng)));
    if (morphism_check(s, w, {d(rng), d(rng)})) ++agree;
  }
  return {fixed == 1000 && agree == 100,
          fmt("relators fix %zu/1000 integer points; %zu/100 words agree with their matrices", fixed, agree)};
}

Outcome curve_dynamics() {
  std::mt19937_64 rng(20240510);
  std::uniform_real_distribution<double> da(0.01, 10.0), dx(0.01, 5.0), dal(0.25, 4.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double a = da(rng), x = dx(rng), alpha = dal(rng);
    const auto s = SigmaMap::power(alpha);
    const Point2 p{x, a * s(x)};
    const double xs = (1 + std::pow(a, 1 / alpha)) * x;
    const Point2 hq{xs, push_h(alpha, CurveParam::finite(a)).value * s(xs)};
    const Point2 vq{x, push_v(alpha, CurveParam::finite(a)).value * s(x)};
    worst = std::max(worst, (h(s, p) - hq).norm() / hq.norm());
    worst = std::max(worst, (v(s, p) - vq).norm() / vq.norm());
  }
  const double a = a_of_word(1.0, WordSpec::parse(":hv")).a.value;
  const double aerr = std::abs(a - (std::sqrt(5.0) - 1) / 2);
  std::uniform_real_distribution<double> du(0.001, 100.0);
  std::size_t kernel = 0;
  for (int i = 0; i < 1000; ++i) {
    double u = du(rng), v = du(rng);
    if (u > v) std::swap(u, v);
    if (u == v) v = std::nextafter(v, 1e9);
    if (kernel_invariance_check(u, v, du(rng))) ++kernel;
  }
  return {worst <= 1e-10 && aerr <= 1e-9 && kernel == 1000,
          fmt("push identities max relative error %.2e; |a((hv)^inf)-(sqrt5-1)/2|=%.2e; kernel %zu/1000", worst, aerr,
              kernel)};
}

Outcome discreteness() {
  const Box box{0.0, 0.0, 2.0, 2.0};
  const auto l12 = backward_orbit(box, 12);
  const auto l14 = backward_orbit(box, 14);
  const auto l16 = backward_orbit(box, 16);
  const bool stable = l12.count == l14.count;
  const bool gap = l14.min_gap && l16.min_gap && std::abs(*l14.min_gap - *l16.min_gap) <= 1e-12;
  return {stable && gap, fmt("count depth 12/14/16 = %zu/%zu/%zu; min gap depth 14 = %.15g, depth-16 oracle = %.15g",
                             l12.count, l14.count, l16.count, l14.min_gap.value_or(NAN), l16.min_gap.value_or(NAN))};
}

Outcome torus() {
  const TorusMaps m{CircleMap::sine(0.5), CircleMap::constant(std::sqrt(2.0) - 1)};
  const std::uint64_t seed = 20240512;
  double worst_z = 0.0;
  for (TorusLetter l : {TorusLetter::kH, TorusLetter::kV, TorusLetter::kHInv, TorusLetter::kVInv}) {
    worst_z = std::max(worst_z, lebesgue_histogram(m, l, 1000000, 10, seed).max_abs_z);
  }
  const auto b = birkhoff_product_test(m, TrigPoly::cosine(1), TrigPoly::cosine(1), 100000, 16, seed);
  return {worst_z <= 4.0 && b.max_deviation <= 0.02,
          fmt("histogram max |z| = %.3f (4 letters, 100 cells, 1e6 points); Birkhoff max deviation %.2e "
              "(16 starts, n=1e5, %zu rational warnings)",
              worst_z, b.max_deviation, b.rational_warnings)};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
      return 2;
    }
  }
  const std::vector<Criterion> all{
      {1, "golden sigma-slope at alpha=2", 1.0, golden_alpha2},
      {2, "alpha=1 reduction", 1.0, alpha_one_reduction},
      {3, "contraction of U", 30.0, contraction},
      {4, "coding consistency", 30.0, coding},
      {5, "exact kernel", 60.0, exact_kernel},
      {6, "Mertens count, identity", 60.0, mertens_identity},
      {7, "Mertens count, alpha=2", 0.0, mertens_alpha2},
      {8, "density coverage", 60.0, density},
      {9, "relations on Z^2", 10.0, relations},
      {10, "curve dynamics", 10.0, curve_dynamics},
      {11, "discreteness probe", 0.0, discreteness},
      {12, "torus", 30.0, torus},
  };
  bool all_pass = true;
  bool any = false;
  for (const Criterion& c : all) {
    if (only != 0 && c.id != only) continue;
    any = true;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.time_limit == 0.0 || secs < c.time_limit;
    const bool pass = o.pass && in_time;
    all_pass = all_pass && pass;
    std::string limit = c.time_limit > 0.0 ? fmt(" < %g s", c.time_limit) : std::string();
    std::printf("%s %2d %s: %s [%.2f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                limit.c_str());
    std::fflush(stdout);
  }
  if (!any) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all_pass ? 0 : 1;
}
