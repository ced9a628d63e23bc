#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transvecta/sigma_map.hpp"
#include "transvecta/words.hpp"

namespace transvecta {

/// A positive rational p/q read from "p/q" or "p".
struct Ratio {
  std::int64_t p = 1;
  std::int64_t q = 1;

  static Ratio parse(std::string_view text);
  double value() const noexcept { return static_cast<double>(p) / static_cast<double>(q); }
  std::string str() const;
};

struct MertensOptions {
  bool exact = false;
  bool prune = true;                      // cut subtrees once a coordinate exceeds 1
  std::optional<std::size_t> max_depth;   // required when prune is false
  unsigned threads = 0;
};

struct MertensReport {
  std::string sigma;
  std::string r_text;
  double r = 0.0;
  bool exact = false;
  std::uint64_t count = 0;    // distinct points of the closed unit square
  double normalized = 0.0;    // r^2 count
  std::size_t max_depth_reached = 0;
};

inline constexpr double kSnapGrid = 1e-9;

/// Counts the distinct images w(r, r), w in the monoid generated by h and v,
/// lying in [0, 1]^2. Exact mode needs sigma = Identity and works on integer
/// multiples of r. Float mode identifies points on a 1e-9 grid.
/// Throws std::invalid_argument for r outside (0, 1].
MertensReport mertens_count(const SigmaMap& s, Ratio r, const MertensOptions& opt = {});
MertensReport mertens_count(const SigmaMap& s, double r, const MertensOptions& opt = {});

struct Grid2 {
  std::size_t n = 20;
  Box box{0.05, 0.05, 1.0, 1.0};
};

struct CoverageReport {
  std::size_t cells = 0;
  std::size_t hit = 0;
  double fraction = 0.0;
  double max_empty_distance = 0.0;  // farthest empty cell center to a hit cell center
  std::size_t samples = 0;
  std::vector<bool> hits;            // row-major, row 0 at the bottom
  bool truncated = false;            // n-dimensional search hit its frontier cap
};

/// Parameters sampled along Ox: t_k = k / count, k = 1..count.
std::vector<double> uniform_parameters(std::size_t count);

inline constexpr std::size_t kCoverageParameters = 256;

/// Fraction of grid cells crossed by the rational lines w(Ox), |w| <= depth.
/// Consecutive samples of the same line are joined and the segment is
/// rasterized. The box must lie in the closed first quadrant.
CoverageReport density_coverage(const SigmaMap& s, std::size_t depth, const Grid2& grid,
                                std::size_t parameters = kCoverageParameters, unsigned threads = 0);

struct DiscretenessLevel {
  std::size_t depth = 0;
  std::size_t count = 0;
  std::optional<double> min_gap;  // Euclidean; empty for fewer than two points
  std::vector<Point2> points;     // sorted by (x, y)
};

struct DiscretenessReport {
  Box box;
  DiscretenessLevel level;     // at the requested depth
  DiscretenessLevel previous;  // at depth - 2 (clamped at 0)
};

/// Points w(1, 0) in the box, |w| <= depth, that E maps back to (1, 0) in |w|
/// steps, for sigma(x) = sgn(x) x^2.
DiscretenessLevel backward_orbit(const Box& box, std::size_t depth);
DiscretenessReport discreteness_probe(const Box& box, std::size_t depth);

struct GridN {
  std::size_t n = 5;  // cells per axis
  double lo = -1.0;
  double hi = 1.0;
};

inline constexpr std::size_t kFrontierCap = 200000;

/// Breadth-first images of `start` under the monoid generated by all h_ij and
/// v_ij (i < j), pruned outside the grid box enlarged by its width on every
/// side, with at most `frontier_cap` points per level. Requires dimension 3
/// or 4 and a pair of coordinates with opposite signs.
CoverageReport orbit_coverage_nd(const SigmaMap& s, const PointN& start, std::size_t depth,
                                 const GridN& grid, std::size_t frontier_cap = kFrontierCap);

}  // namespace transvecta
