#include "transvecta/regions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "transvecta/errors.hpp"

namespace transvecta {

std::string_view to_string(RegionLabel l) noexcept {
  switch (l) {
    case RegionLabel::kA:
      return "A";
    case RegionLabel::kB:
      return "B";
    case RegionLabel::kC:
      return "C";
    case RegionLabel::kD:
      return "D";
    case RegionLabel::kAxisFixed:
      return "AxisFixed";
    case RegionLabel::kOrigin:
      return "Origin";
  }
  return "?";
}

// Sign tests instead of x*y keep tiny coordinates from underflowing to 0.
bool in_x(Point2 p) noexcept { return (p.x > 0.0 && p.y >= 0.0) || (p.x < 0.0 && p.y <= 0.0); }
bool in_y(Point2 p) noexcept { return (p.y > 0.0 && p.x <= 0.0) || (p.y < 0.0 && p.x >= 0.0); }

bool in_cell(const SigmaMap& s, RegionLabel cell, Point2 p) {
  switch (cell) {
    case RegionLabel::kA:
      return in_x(h_inv(s, p));
    case RegionLabel::kB:
      return in_x(v_inv(s, p));
    case RegionLabel::kC:
      return in_y(h(s, p));
    case RegionLabel::kD:
      return in_y(v(s, p));
    default:
      return false;
  }
}

namespace {

// The cell decided by a single comparison per quadrant. This is what the four
// predicates reduce to in exact arithmetic; it settles the rare floating-point
// cases where the predicates disagree near a diagonal.
RegionLabel canonical_cell(const SigmaMap& s, Point2 p) {
  if (p.y == 0.0) return RegionLabel::kA;
  if (p.x == 0.0) return RegionLabel::kD;
  const double ax = std::abs(p.x), ay = std::abs(p.y);
  const bool same_sign = (p.x > 0.0) == (p.y > 0.0);
  if (same_sign) return ay < s(ax) ? RegionLabel::kA : RegionLabel::kB;
  return ay <= s(ax) ? RegionLabel::kC : RegionLabel::kD;
}

}  // namespace

RegionLabel raw_cell(const SigmaMap& s, Point2 p) {
  if (p.x == 0.0 && p.y == 0.0) throw std::domain_error("the origin has no cell");
  constexpr std::array<RegionLabel, 4> cells{RegionLabel::kA, RegionLabel::kB, RegionLabel::kC,
                                             RegionLabel::kD};
  int hits = 0;
  RegionLabel found = RegionLabel::kOrigin;
  for (RegionLabel c : cells) {
    if (in_cell(s, c, p)) {
      ++hits;
      found = c;
    }
  }
  if (hits == 1) return found;
  return canonical_cell(s, p);
}

RegionLabel classify(const SigmaMap& s, Point2 p) {
  if (p.x == 0.0 && p.y == 0.0) return RegionLabel::kOrigin;
  if (p.x == 0.0 || p.y == 0.0) return RegionLabel::kAxisFixed;
  return raw_cell(s, p);
}

namespace {

Letter euclid_letter(RegionLabel cell) {
  switch (cell) {
    case RegionLabel::kA:
      return Letter::kHInv;
    case RegionLabel::kB:
      return Letter::kVInv;
    case RegionLabel::kC:
      return Letter::kH;
    case RegionLabel::kD:
      return Letter::kV;
    default:
      throw std::logic_error("no Euclidean letter for this label");
  }
}

}  // namespace

EuclidStep euclid_step(const SigmaMap& s, Point2 p) {
  const RegionLabel label = classify(s, p);
  if (label == RegionLabel::kOrigin) throw std::domain_error("euclid_step: the origin is excluded");
  if (label == RegionLabel::kAxisFixed) return {label, std::nullopt, p};
  const Letter l = euclid_letter(label);
  return {label, l, apply(s, l, p)};
}

Point2 euclid_iterate(const SigmaMap& s, Point2 p, std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) {
    const EuclidStep st = euclid_step(s, p);
    if (!st.letter) break;
    p = st.result;
  }
  return p;
}

bool near_diagonal(const SigmaMap& s, Point2 p, double fuzz) {
  const double ay = std::abs(p.y);
  const double sx = s(std::abs(p.x));
  return std::abs(ay - sx) <= fuzz * std::max(ay, sx);
}

AccelStep accel_step(const SigmaMap& s, Point2 p) {
  if (p.x == 0.0 || p.y == 0.0) {
    throw DiagonalOrAxis("accel_step: point lies on a coordinate axis");
  }
  if (near_diagonal(s, p)) {
    throw DiagonalOrAxis("accel_step: point lies on a diagonal y = ±sigma(x)");
  }
  const RegionLabel source = raw_cell(s, p);
  const Letter letter = euclid_letter(source);
  auto left_cell = [&](std::uint64_t k) {
    return raw_cell(s, apply_power(s, letter, static_cast<double>(k), p)) != source;
  };

  // Leaving the cell is monotone in k, so doubling then bisection finds the
  // minimal exponent without stepping one letter at a time.
  constexpr std::uint64_t kCap = std::uint64_t{1} << 62;
  std::uint64_t lo = 0;  // left_cell(lo) is false (lo = 0 is p itself)
  std::uint64_t hi = 1;
  while (!left_cell(hi)) {
    lo = hi;
    if (hi >= kCap) throw std::overflow_error("accel_step: exponent exceeds 2^62");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (left_cell(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {source, letter, hi, apply_power(s, letter, static_cast<double>(hi), p)};
}

UStep u_step(const SigmaMap& s, Point2 p) {
  const AccelStep first = accel_step(s, p);
  const AccelStep second = accel_step(s, first.result);
  return {first, second};
}

bool pingpong_check(const SigmaMap& s, Point2 p, std::int64_t k) {
  if (k == 0) throw std::invalid_argument("pingpong_check: exponent must be nonzero");
  const RegionLabel c = raw_cell(s, p);
  const double twice = 2.0 * static_cast<double>(k);
  if (c == RegionLabel::kA || c == RegionLabel::kC) {
    const RegionLabel img = raw_cell(s, apply_power(s, Letter::kV, twice, p));
    return img == RegionLabel::kB || img == RegionLabel::kD;
  }
  const RegionLabel img = raw_cell(s, apply_power(s, Letter::kH, twice, p));
  return img == RegionLabel::kA || img == RegionLabel::kC;
}

}  // namespace transvecta
