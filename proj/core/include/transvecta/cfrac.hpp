#pragma once

#include <cstdint>
#include <vector>

#include "transvecta/sigma_map.hpp"

namespace transvecta {

struct DigitPair {
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  friend bool operator==(const DigitPair&, const DigitPair&) = default;
};

/// Slope r = x / sigma^-1(y) of the point reached after the last digit pair.
struct SlopeState {
  double r = 0.0;
  double y = 0.0;
};

/// S_{a,b}(R) = a + 1 / sigma^-1(b + 1 / sigma(R)) for sigma = Power(alpha).
/// Requires alpha > 0, a, b >= 1 and R > 1.
double s_ab(double alpha, std::uint64_t a, std::uint64_t b, double R);

/// Composition S_{a1,b1} o ... o S_{an,bn}(R).
double reconstruct(double alpha, const std::vector<DigitPair>& pairs, double R);

struct Expansion {
  std::vector<DigitPair> pairs;
  SlopeState residual;
  Point2 point;             // last point of the U-orbit
  bool terminated = false;  // the orbit hit an axis or a diagonal
};

/// Digit pairs of p under repeated U-steps (each step is h^-a followed by
/// v^-b). p must satisfy 0 < sigma^-1(y) < x. Stops early with
/// terminated = true when the orbit reaches an axis or a diagonal.
Expansion expand(double alpha, Point2 p, std::size_t n);

/// Like expand, but a premature stop throws AxisHit whose steps_done() is the
/// number of complete pairs.
Expansion digits(double alpha, Point2 p, std::size_t n);

/// The fixed point of S_{1,1} in (1, inf), by bisection on [1 + 1e-9, 4] to
/// an absolute width of 1e-12. Requires 0 < alpha <= 64.
double golden_slope(double alpha);

}  // namespace transvecta
