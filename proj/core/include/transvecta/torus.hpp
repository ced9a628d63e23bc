#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace transvecta {

/// A circle map T -> T given by a descriptor:
///   const:<c>   y -> c mod 1
///   lin:<a>     y -> a y mod 1
///   sine:<c>    y -> y + c sin(2 pi y) / (2 pi) mod 1
class CircleMap {
 public:
  enum class Kind { kConstant, kLinear, kSine };

  static CircleMap constant(double c);
  static CircleMap linear(double a);
  static CircleMap sine(double c);
  static CircleMap parse(std::string_view descriptor);

  /// Value in [0, 1).
  double operator()(double y) const;
  Kind kind() const noexcept { return kind_; }
  double param() const noexcept { return p_; }
  std::string descriptor() const;

 private:
  CircleMap(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_;
};

/// Reduces into [0, 1).
double wrap_unit(double t) noexcept;

struct TorusPoint {
  double x = 0.0;
  double y = 0.0;
};

/// h(x, y) = (x + sigma2(y), y) and v(x, y) = (x, y + sigma1(x)) on the torus.
struct TorusMaps {
  CircleMap sigma1;
  CircleMap sigma2;
};

TorusPoint torus_h(const TorusMaps& m, TorusPoint p);
TorusPoint torus_v(const TorusMaps& m, TorusPoint p);
TorusPoint torus_h_inv(const TorusMaps& m, TorusPoint p);
TorusPoint torus_v_inv(const TorusMaps& m, TorusPoint p);

/// c0 + sum_k (a_k cos(2 pi k t) + b_k sin(2 pi k t)).
struct TrigPoly {
  struct Term {
    int freq = 1;
    double cos_coeff = 0.0;
    double sin_coeff = 0.0;
  };
  double constant = 0.0;
  std::vector<Term> terms;

  static TrigPoly one();
  static TrigPoly cosine(int freq);
  static TrigPoly sine(int freq);
  /// "one", "cos:<k>" or "sin:<k>".
  static TrigPoly parse(std::string_view descriptor);

  double operator()(double t) const;
  /// Integral over [0, 1).
  double mean() const noexcept { return constant; }
};

/// Distance from t to the nearest rational with denominator <= max_den.
double distance_to_rationals(double t, int max_den);

/// (1/n) sum_{k<n} phi1 (x) phi2 (h^k(p)).
double orbit_average(const TorusMaps& m, const TrigPoly& phi1, const TrigPoly& phi2,
                     TorusPoint p, std::size_t n);

struct BirkhoffReport {
  std::size_t starts = 0;
  std::size_t iterations = 0;
  double max_deviation = 0.0;
  std::size_t rational_warnings = 0;  // starts whose translation looks rational
  std::vector<double> deviations;
};

/// For random starts (x, y) compares (1/n) sum_{k<n} phi1 (x) phi2 (h^k(x, y))
/// with (mean phi1) phi2(y). A start counts as a rational-translation warning
/// when sigma2(y) is within 1e-9 of a rational with denominator <= 100.
/// Starts use per-start seeds derived from `seed`.
BirkhoffReport birkhoff_product_test(const TorusMaps& m, const TrigPoly& phi1,
                                     const TrigPoly& phi2, std::size_t n, std::size_t starts,
                                     std::uint64_t seed, unsigned threads = 0);

struct HistogramReport {
  std::size_t points = 0;
  std::size_t bins = 0;               // per axis
  double expected = 0.0;              // per cell
  double max_abs_z = 0.0;             // max |count - expected| / sqrt(expected)
  std::vector<std::uint64_t> counts;  // row-major, row = y bin
};

/// Pushes `points` uniform samples through `map` and bins the images on a
/// bins x bins grid.
enum class TorusLetter { kH, kV, kHInv, kVInv };
HistogramReport lebesgue_histogram(const TorusMaps& m, TorusLetter map, std::size_t points,
                                   std::size_t bins, std::uint64_t seed);

}  // namespace transvecta
