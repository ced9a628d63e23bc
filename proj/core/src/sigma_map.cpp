#include "transvecta/sigma_map.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "transvecta/text.hpp"

namespace transvecta {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Exponents up to this bound that are integers (or reciprocals of integers)
// are evaluated by repeated multiplication instead of std::pow.
constexpr double kMaxExactExponent = 64.0;

bool is_small_integer(double a) {
  return a >= 1.0 && a <= kMaxExactExponent && a == std::floor(a);
}

double int_pow(double base, int n) {
  double result = 1.0;
  double b = base;
  while (n > 0) {
    if (n & 1) result *= b;
    b *= b;
    n >>= 1;
  }
  return result;
}

// Inverse of t -> t^n on t >= 0.
double int_root(double y, int n) {
  if (n == 1) return y;
  if (n == 2) return std::sqrt(y);
  if (n == 3) return std::cbrt(y);
  return std::pow(y, 1.0 / n);
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

SigmaMap SigmaMap::identity() { return SigmaMap(Family::kIdentity, 1.0, 0.0); }

SigmaMap SigmaMap::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("power sigma requires a finite alpha > 0");
  }
  return SigmaMap(Family::kPower, alpha, 0.0);
}

SigmaMap SigmaMap::linear_near_origin(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("linear-near-origin sigma requires finite a > 0 and b > 0");
  }
  return SigmaMap(Family::kLinearNearOrigin, a, b);
}

SigmaMap SigmaMap::sine_wobble(double c) {
  // |c| >= 1 makes x + c sin(2 pi x)/(2 pi) non-monotone.
  if (!(std::abs(c) < 1.0)) {
    throw std::invalid_argument("sine sigma requires |c| < 1");
  }
  return SigmaMap(Family::kSineWobble, c, 0.0);
}

SigmaMap SigmaMap::parse(std::string_view descriptor) {
  const auto parts = split(descriptor, ':');
  const std::string_view kind = parts.front();
  auto expect_args = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw std::invalid_argument("sigma descriptor '" + std::string(descriptor) + "': expected " +
                                  std::to_string(n) + " parameter(s)");
    }
  };
  if (kind == "id") {
    expect_args(0);
    return identity();
  }
  if (kind == "pow") {
    expect_args(1);
    return power(parse_real(parts[1]));
  }
  if (kind == "lin") {
    expect_args(2);
    return linear_near_origin(parse_real(parts[1]), parse_real(parts[2]));
  }
  if (kind == "sine") {
    expect_args(1);
    return sine_wobble(parse_real(parts[1]));
  }
  throw std::invalid_argument("unknown sigma descriptor '" + std::string(descriptor) +
                              "' (expected id, pow:<alpha>, lin:<a>:<b> or sine:<c>)");
}

double SigmaMap::alpha() const {
  if (!is_power()) throw std::invalid_argument("alpha() requires a power sigma, got " + descriptor());
  return p0_;
}

bool SigmaMap::fixes_integers() const noexcept {
  switch (family_) {
    case Family::kIdentity:
    case Family::kSineWobble:
      return true;
    case Family::kPower:
      return p0_ == 1.0;
    case Family::kLinearNearOrigin:
      return p0_ == 1.0;
  }
  return false;
}

std::string SigmaMap::descriptor() const {
  switch (family_) {
    case Family::kIdentity:
      return "id";
    case Family::kPower:
      return "pow:" + format_real(p0_);
    case Family::kLinearNearOrigin:
      return "lin:" + format_real(p0_) + ":" + format_real(p1_);
    case Family::kSineWobble:
      return "sine:" + format_real(p0_);
  }
  return "?";
}

double SigmaMap::power_eval(double x) const {
  const double a = p0_;
  const double m = std::abs(x);
  double r;
  if (a == 1.0) {
    return x;
  } else if (is_small_integer(a)) {
    r = int_pow(m, static_cast<int>(a));
  } else if (is_small_integer(1.0 / a) && 1.0 / (1.0 / a) == a) {
    r = int_root(m, static_cast<int>(1.0 / a));
  } else {
    r = std::pow(m, a);
  }
  return x < 0.0 ? -r : r;
}

double SigmaMap::power_inverse(double y) const {
  const double a = p0_;
  const double m = std::abs(y);
  double r;
  if (a == 1.0) {
    return y;
  } else if (is_small_integer(a)) {
    r = int_root(m, static_cast<int>(a));
  } else if (is_small_integer(1.0 / a) && 1.0 / (1.0 / a) == a) {
    r = int_pow(m, static_cast<int>(1.0 / a));
  } else {
    r = std::pow(m, 1.0 / a);
  }
  return y < 0.0 ? -r : r;
}

double SigmaMap::eval(double x) const {
  switch (family_) {
    case Family::kIdentity:
      return x;
    case Family::kPower:
      return power_eval(x);
    case Family::kLinearNearOrigin: {
      const double a = p0_, b = p1_;
      const double m = std::abs(x);
      if (m <= b) return a * x;
      return sgn(x) * (a * b + (m - b));
    }
    case Family::kSineWobble: {
      // Reduce to f in [-1/2, 1/2] first; x - nearbyint(x) is exact, so
      // sigma fixes integers exactly and sigma(x + 1) = sigma(x) + 1.
      const double f = x - std::nearbyint(x);
      if (f == 0.0) return x;
      return x + p0_ * std::sin(kTwoPi * f) / kTwoPi;
    }
  }
  return x;
}

double SigmaMap::sine_inverse(double y) const {
  if (y == std::nearbyint(y)) return y;
  const double c = p0_;
  const double target = std::abs(y);
  // |sigma(x) - x| <= |c| / (2 pi) < |c|, so the root is bracketed.
  double lo = target - std::abs(c);
  double hi = target + std::abs(c);
  double x = target;
  // Newton steps safeguarded by bisection; stops at full double precision.
  for (int iter = 0; iter < 400; ++iter) {
    const double fx = eval(x) - target;
    if (fx == 0.0) break;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double f = x - std::nearbyint(x);
    const double slope = 1.0 + c * std::cos(kTwoPi * f);
    double next = x - fx / slope;
    if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
    if (next == x || next == lo || next == hi) break;
    x = next;
  }
  return y < 0.0 ? -x : x;
}

double SigmaMap::inverse(double y) const {
  switch (family_) {
    case Family::kIdentity:
      return y;
    case Family::kPower:
      return power_inverse(y);
    case Family::kLinearNearOrigin: {
      const double a = p0_, b = p1_;
      const double m = std::abs(y);
      if (m <= a * b) return y / a;
      return sgn(y) * (b + (m - a * b));
    }
    case Family::kSineWobble:
      return sine_inverse(y);
  }
  return y;
}

PointN::PointN(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 3) throw std::invalid_argument("PointN requires dimension >= 3");
}

Letter inverse(Letter l) noexcept {
  switch (l) {
    case Letter::kH:
      return Letter::kHInv;
    case Letter::kV:
      return Letter::kVInv;
    case Letter::kHInv:
      return Letter::kH;
    case Letter::kVInv:
      return Letter::kV;
  }
  return l;
}

char to_char(Letter l) noexcept {
  switch (l) {
    case Letter::kH:
      return 'H';
    case Letter::kV:
      return 'V';
    case Letter::kHInv:
      return 'h';
    case Letter::kVInv:
      return 'v';
  }
  return '?';
}

Point2 h(const SigmaMap& s, Point2 p) { return {p.x + s.inverse(p.y), p.y}; }
Point2 h_inv(const SigmaMap& s, Point2 p) { return {p.x - s.inverse(p.y), p.y}; }
Point2 v(const SigmaMap& s, Point2 p) { return {p.x, p.y + s(p.x)}; }
Point2 v_inv(const SigmaMap& s, Point2 p) { return {p.x, p.y - s(p.x)}; }

Point2 apply(const SigmaMap& s, Letter l, Point2 p) {
  switch (l) {
    case Letter::kH:
      return h(s, p);
    case Letter::kV:
      return v(s, p);
    case Letter::kHInv:
      return h_inv(s, p);
    case Letter::kVInv:
      return v_inv(s, p);
  }
  return p;
}

Point2 apply_power(const SigmaMap& s, Letter l, double k, Point2 p) {
  switch (l) {
    case Letter::kH:
      return {p.x + k * s.inverse(p.y), p.y};
    case Letter::kHInv:
      return {p.x - k * s.inverse(p.y), p.y};
    case Letter::kV:
      return {p.x, p.y + k * s(p.x)};
    case Letter::kVInv:
      return {p.x, p.y - k * s(p.x)};
  }
  return p;
}

namespace {

void check_pair(std::size_t i, std::size_t j, const PointN& p) {
  if (!(i < j) || j >= p.dim()) {
    throw std::invalid_argument("transvection indices must satisfy i < j < n (got i=" +
                                std::to_string(i) + ", j=" + std::to_string(j) +
                                ", n=" + std::to_string(p.dim()) + ")");
  }
}

}  // namespace

PointN h_ij(const SigmaMap& s, std::size_t i, std::size_t j, const PointN& p) {
  check_pair(i, j, p);
  PointN out = p;
  out[i] += s.inverse(p[j]);
  return out;
}

PointN v_ij(const SigmaMap& s, std::size_t i, std::size_t j, const PointN& p) {
  check_pair(i, j, p);
  PointN out = p;
  out[j] += s(p[i]);
  return out;
}

PointN h_ij_inv(const SigmaMap& s, std::size_t i, std::size_t j, const PointN& p) {
  check_pair(i, j, p);
  PointN out = p;
  out[i] -= s.inverse(p[j]);
  return out;
}

PointN v_ij_inv(const SigmaMap& s, std::size_t i, std::size_t j, const PointN& p) {
  check_pair(i, j, p);
  PointN out = p;
  out[j] -= s(p[i]);
  return out;
}

Point2 flow_scale(const SigmaMap& s, double t, Point2 p) {
  if (!s.is_power()) {
    throw std::invalid_argument("flow_scale requires a power sigma, got " + s.descriptor());
  }
  return {t * p.x, s(t) * p.y};
}

}  // namespace transvecta
