#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "transvecta/sigma_map.hpp"

namespace transvecta {

/// Cells of the paradoxical partition of the punctured plane:
///   A = h(X), B = v(X), C = h^-1(Y), D = v^-1(Y)
/// with X = {xy >= 0, x != 0} and Y = {xy <= 0, y != 0}.
/// Axis points are fixed by the Euclidean map and get their own label.
enum class RegionLabel : std::uint8_t { kA, kB, kC, kD, kAxisFixed, kOrigin };

std::string_view to_string(RegionLabel l) noexcept;

bool in_x(Point2 p) noexcept;
bool in_y(Point2 p) noexcept;

/// Membership in one of the four cells, evaluated by mapping p back through
/// the cell's defining letter and testing X / Y membership.
bool in_cell(const SigmaMap& s, RegionLabel cell, Point2 p);

/// Cell of p in {A, B, C, D}; axis points report the formal cell they belong
/// to (A for the x-axis, D for the y-axis). Throws for the origin.
RegionLabel raw_cell(const SigmaMap& s, Point2 p);

/// Like raw_cell but axis points are reported as kAxisFixed and the origin as
/// kOrigin. On the first-quadrant diagonal y = sigma(x) the label is B.
RegionLabel classify(const SigmaMap& s, Point2 p);

struct EuclidStep {
  RegionLabel label;
  std::optional<Letter> letter;  // empty for axis points (no-op)
  Point2 result;
};

/// One step of the subtractive algorithm: h^-1 on A, v^-1 on B, h on C,
/// v on D. Throws std::domain_error for the origin.
EuclidStep euclid_step(const SigmaMap& s, Point2 p);

/// Result of `steps` subtractive steps (axis points stay fixed).
Point2 euclid_iterate(const SigmaMap& s, Point2 p, std::size_t steps);

struct AccelStep {
  RegionLabel source;     // cell of the input
  Letter letter;          // the letter applied `digit` times
  std::uint64_t digit;    // minimal exponent moving p out of its cell
  Point2 result;
};

/// Relative distance below which a point counts as lying on a diagonal
/// y = ±sigma(x) for the accelerated algorithm.
inline constexpr double kDiagonalFuzz = 1e-12;

bool near_diagonal(const SigmaMap& s, Point2 p, double fuzz = kDiagonalFuzz);

/// One step of the accelerated (multiplicative) algorithm: the maximal run of
/// the letter the subtractive algorithm would apply. The exponent is located by
/// doubling followed by binary search. Throws DiagonalOrAxis on the axes and
/// within kDiagonalFuzz of the diagonals.
AccelStep accel_step(const SigmaMap& s, Point2 p);

struct UStep {
  AccelStep first;
  AccelStep second;
  Point2 result() const noexcept { return second.result; }
};

/// Two accelerated steps. On sigma-irrational points this halves the norm.
UStep u_step(const SigmaMap& s, Point2 p);

/// Ping-pong check for the sets P = C ∪ A and Q = B ∪ D: for p in P tests
/// v^{2k}(p) in Q, for p in Q tests h^{2k}(p) in P. Throws
/// std::invalid_argument for k = 0 or the origin.
bool pingpong_check(const SigmaMap& s, Point2 p, std::int64_t k);

}  // namespace transvecta
