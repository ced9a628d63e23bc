#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transvecta/sigma_map.hpp"

namespace transvecta {

/// Parameter of the curve c_a(x) = (x, a sigma(x)), x >= 0, for a power sigma.
/// a = 0 is the positive x-axis and a = infinity the positive y-axis.
struct CurveParam {
  double value = 0.0;
  bool infinite = false;

  static CurveParam finite(double a) { return {a, false}; }
  static CurveParam infinity() { return {0.0, true}; }

  friend bool operator==(const CurveParam&, const CurveParam&) = default;
};

bool operator<(const CurveParam& a, const CurveParam& b);

/// h o c_a = c_b o ((1 + a^{1/alpha}) x) with b = a / (1 + a^{1/alpha})^alpha.
CurveParam push_h(double alpha, CurveParam a);
/// v o c_a = c_{a+1}.
CurveParam push_v(double alpha, CurveParam a);
CurveParam push(double alpha, Letter l, CurveParam a);

/// Nested interval of parameters for a finite prefix w_0 ... w_{n-1}: the
/// image of [0, inf] under P_{w_0} o ... o P_{w_{n-1}}.
struct ParamInterval {
  CurveParam lo;
  CurveParam hi;
  double width() const;
};

/// An eventually periodic infinite word over {h, v}: prefix then period
/// repeated forever. Text form is "pre:per" with letters h and v
/// (case-insensitive), e.g. ":hv" for (hv)^inf and "h:v" for h v^inf.
class WordSpec {
 public:
  WordSpec(std::vector<Letter> prefix, std::vector<Letter> period);
  static WordSpec parse(std::string_view text);

  const std::vector<Letter>& prefix() const noexcept { return prefix_; }
  const std::vector<Letter>& period() const noexcept { return period_; }

  Letter at(std::size_t i) const;
  Letter first() const { return at(0); }
  /// The shifted word s(w) = w_1 w_2 ...
  WordSpec shifted() const;

  /// The tail is v^inf or h^inf.
  bool constant_tail() const;
  std::string str() const;

  friend bool operator==(const WordSpec&, const WordSpec&) = default;

 private:
  std::vector<Letter> prefix_;
  std::vector<Letter> period_;
};

ParamInterval nest(double alpha, const WordSpec& w, std::size_t letters);

struct LineParam {
  CurveParam a;
  std::size_t letters_used = 0;          // letters consumed by the interval nesting
  double width = 0.0;                    // final nested-interval width
  std::optional<double> fixed_point;     // periodic route, when it applies
};

inline constexpr std::size_t kMaxNestingLetters = 10000;

/// a(w) such that the sigma-line of w is the curve c_{a(w)}.
/// Constant tails are handled exactly (v^inf -> P_pre(inf), h^inf -> P_pre(0)).
/// Otherwise nested intervals are refined until narrower than tol, and the
/// fixed point of the period's composite push map is found by bisection; the
/// two must agree within 10 tol. Throws NonConvergence when the interval is
/// still wider than tol after kMaxNestingLetters letters or the routes
/// disagree.
LineParam a_of_word(double alpha, const WordSpec& w, double tol = 1e-12);

/// 1 - a(w)^{1/alpha} when w starts with h, 1 when it starts with v.
double k_of_word(double alpha, const WordSpec& w, double tol = 1e-12);

struct ChartStep {
  double x = 0.0;
  WordSpec word;
};

/// (x, w) -> (k(w) x, s(w)).
ChartStep h_sigma_step(double alpha, double x, const WordSpec& w, double tol = 1e-12);

/// Relative distance between E(c_{a(w)}(x)) computed in the plane and
/// c_{a(s(w))}(k(w) x).
double chart_residual(double alpha, double x, const WordSpec& w, double tol = 1e-12);

/// log(v/u) against log(kv/ku): the dx/x measure of [u, v] is preserved by
/// x -> kx. Absolute tolerance 1e-14. Requires 0 < u < v and k > 0.
bool kernel_invariance_check(double u, double v, double k);

}  // namespace transvecta
