#include "transvecta/sigma_lines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "transvecta/errors.hpp"
#include "transvecta/regions.hpp"
#include "transvecta/text.hpp"

namespace transvecta {

bool operator<(const CurveParam& a, const CurveParam& b) {
  if (a.infinite) return false;
  if (b.infinite) return true;
  return a.value < b.value;
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("curve dynamics require a finite alpha > 0");
  }
}

void check_letter(Letter l) {
  if (l != Letter::kH && l != Letter::kV) {
    throw std::invalid_argument("sigma-line words use the letters h and v only");
  }
}

}  // namespace

CurveParam push_h(double alpha, CurveParam a) {
  check_alpha(alpha);
  if (a.infinite) return CurveParam::finite(1.0);
  if (a.value < 0.0) throw std::invalid_argument("push_h: parameter must be >= 0");
  const SigmaMap s = SigmaMap::power(alpha);
  return CurveParam::finite(a.value / s(1.0 + s.inverse(a.value)));
}

CurveParam push_v(double alpha, CurveParam a) {
  check_alpha(alpha);
  if (a.infinite) return a;
  if (a.value < 0.0) throw std::invalid_argument("push_v: parameter must be >= 0");
  return CurveParam::finite(a.value + 1.0);
}

CurveParam push(double alpha, Letter l, CurveParam a) {
  check_letter(l);
  return l == Letter::kH ? push_h(alpha, a) : push_v(alpha, a);
}

double ParamInterval::width() const {
  if (hi.infinite) return std::numeric_limits<double>::infinity();
  return hi.value - lo.value;
}

WordSpec::WordSpec(std::vector<Letter> prefix, std::vector<Letter> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("word spec: the period must be non-empty");
  for (Letter l : prefix_) check_letter(l);
  for (Letter l : period_) check_letter(l);
}

WordSpec WordSpec::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) {
    throw std::invalid_argument("word spec '" + std::string(text) + "': expected pre:per");
  }
  auto letters = [&](std::string_view s) {
    std::vector<Letter> out;
    for (char ch : s) {
      if (ch == 'h' || ch == 'H') {
        out.push_back(Letter::kH);
      } else if (ch == 'v' || ch == 'V') {
        out.push_back(Letter::kV);
      } else {
        throw std::invalid_argument("word spec '" + std::string(text) +
                                    "': letters must be h or v");
      }
    }
    return out;
  };
  return WordSpec(letters(parts[0]), letters(parts[1]));
}

Letter WordSpec::at(std::size_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return period_[(i - prefix_.size()) % period_.size()];
}

WordSpec WordSpec::shifted() const {
  if (!prefix_.empty()) return WordSpec({prefix_.begin() + 1, prefix_.end()}, period_);
  std::vector<Letter> rotated(period_.begin() + 1, period_.end());
  rotated.push_back(period_.front());
  return WordSpec({}, std::move(rotated));
}

bool WordSpec::constant_tail() const {
  return std::all_of(period_.begin(), period_.end(), [&](Letter l) { return l == period_[0]; });
}

std::string WordSpec::str() const {
  std::string out;
  for (Letter l : prefix_) out.push_back(l == Letter::kH ? 'h' : 'v');
  out.push_back(':');
  for (Letter l : period_) out.push_back(l == Letter::kH ? 'h' : 'v');
  return out;
}

namespace {

// P_{w_0} o ... o P_{w_{n-1}} (a)
CurveParam push_prefix(double alpha, const WordSpec& w, std::size_t n, CurveParam a) {
  for (std::size_t i = n; i-- > 0;) a = push(alpha, w.at(i), a);
  return a;
}

CurveParam push_letters(double alpha, const std::vector<Letter>& letters, CurveParam a) {
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) a = push(alpha, *it, a);
  return a;
}

}  // namespace

ParamInterval nest(double alpha, const WordSpec& w, std::size_t letters) {
  // Each push is increasing, so the image of [0, inf] is [P(0), P(inf)].
  return {push_prefix(alpha, w, letters, CurveParam::finite(0.0)),
          push_prefix(alpha, w, letters, CurveParam::infinity())};
}

LineParam a_of_word(double alpha, const WordSpec& w, double tol) {
  check_alpha(alpha);
  if (!(tol > 0.0)) throw std::invalid_argument("a_of_word: tol must be positive");
  LineParam out;
  if (w.constant_tail()) {
    const bool v_tail = w.period()[0] == Letter::kV;
    out.a = push_letters(alpha, w.prefix(),
                         v_tail ? CurveParam::infinity() : CurveParam::finite(0.0));
    out.letters_used = w.prefix().size();
    return out;
  }

  std::size_t n = std::max<std::size_t>(w.prefix().size() + w.period().size(), 1);
  ParamInterval iv = nest(alpha, w, n);
  while (!(iv.width() < tol)) {
    if (n >= kMaxNestingLetters) {
      throw NonConvergence("a_of_word(" + w.str() + "): interval width " +
                           format_real(iv.width()) + " after " + std::to_string(n) + " letters");
    }
    n = std::min(2 * n, kMaxNestingLetters);
    iv = nest(alpha, w, n);
  }
  out.letters_used = n;
  out.width = iv.width();
  out.a = CurveParam::finite(iv.lo.value + 0.5 * iv.width());

  // Fixed point of the period map Q on [Q(0), Q(inf)]; Q(lo) >= lo and
  // Q(hi) <= hi there.
  auto q = [&](double a) { return push_letters(alpha, w.period(), CurveParam::finite(a)).value; };
  double lo = push_letters(alpha, w.period(), CurveParam::finite(0.0)).value;
  double hi = push_letters(alpha, w.period(), CurveParam::infinity()).value;
  for (int it = 0; it < 200 && hi - lo > 0.25 * tol; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (q(mid) > mid) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double fixed = push_letters(alpha, w.prefix(), CurveParam::finite(lo + 0.5 * (hi - lo))).value;
  out.fixed_point = fixed;
  if (std::abs(fixed - out.a.value) > 10.0 * tol) {
    throw NonConvergence("a_of_word(" + w.str() + "): nesting gives " + format_real(out.a.value) +
                         " but the periodic fixed point gives " + format_real(fixed));
  }
  return out;
}

double k_of_word(double alpha, const WordSpec& w, double tol) {
  if (w.first() == Letter::kV) return 1.0;
  const LineParam a = a_of_word(alpha, w, tol);
  return 1.0 - SigmaMap::power(alpha).inverse(a.a.value);
}

ChartStep h_sigma_step(double alpha, double x, const WordSpec& w, double tol) {
  if (!(x > 0.0)) throw std::invalid_argument("h_sigma_step: x must be positive");
  return {k_of_word(alpha, w, tol) * x, w.shifted()};
}

double chart_residual(double alpha, double x, const WordSpec& w, double tol) {
  const SigmaMap s = SigmaMap::power(alpha);
  const LineParam a = a_of_word(alpha, w, tol);
  if (a.a.infinite) throw std::invalid_argument("chart_residual: a(w) is infinite");
  const ChartStep step = h_sigma_step(alpha, x, w, tol);
  const LineParam a_next = a_of_word(alpha, step.word, tol);
  if (a_next.a.infinite) throw std::invalid_argument("chart_residual: a(s(w)) is infinite");
  const EuclidStep e = euclid_step(s, {x, a.a.value * s(x)});
  const Point2 expected{step.x, a_next.a.value * s(step.x)};
  const double scale = std::max(expected.norm(), std::numeric_limits<double>::min());
  return (e.result - expected).norm() / scale;
}

bool kernel_invariance_check(double u, double v, double k) {
  if (!(u > 0.0) || !(v > u) || !(k > 0.0)) {
    throw std::invalid_argument("kernel_invariance_check requires 0 < u < v and k > 0");
  }
  return std::abs(std::log(v / u) - std::log((k * v) / (k * u))) <= 1e-14;
}

}  // namespace transvecta
