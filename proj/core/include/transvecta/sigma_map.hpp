#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace transvecta {

/// An odd, strictly increasing homeomorphism of the real line.
///
/// Four concrete families are supported:
///   - Identity
///   - Power(alpha):             sgn(x)|x|^alpha
///   - LinearNearOrigin(a, b):   a*x on [-b, b], slope 1 beyond
///   - SineWobble(c), |c| < 1:   x + c sin(2 pi x) / (2 pi)
///
/// Text descriptors: `id`, `pow:<alpha>`, `lin:<a>:<b>`, `sine:<c>`.
class SigmaMap {
 public:
  enum class Family { kIdentity, kPower, kLinearNearOrigin, kSineWobble };

  static SigmaMap identity();
  static SigmaMap power(double alpha);
  static SigmaMap linear_near_origin(double a, double b);
  static SigmaMap sine_wobble(double c);

  /// Parses a text descriptor; throws std::invalid_argument on malformed input.
  static SigmaMap parse(std::string_view descriptor);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double inverse(double y) const;

  Family family() const noexcept { return family_; }

  /// True for Identity and Power; these commute with the weighted flow and
  /// are multiplicative.
  bool is_power() const noexcept {
    return family_ == Family::kIdentity || family_ == Family::kPower;
  }
  /// Exponent of a power map (1 for Identity). Throws for other families.
  double alpha() const;

  /// True when sigma restricted to the integers is the identity.
  bool fixes_integers() const noexcept;

  std::string descriptor() const;

  double param_a() const noexcept { return p0_; }
  double param_b() const noexcept { return p1_; }

 private:
  SigmaMap(Family f, double p0, double p1) : family_(f), p0_(p0), p1_(p1) {}

  double power_eval(double x) const;
  double power_inverse(double y) const;
  double sine_inverse(double y) const;

  Family family_;
  double p0_;  // alpha | a | c
  double p1_;  // b
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  /// ||(x, y)|| = |x| + |y|
  double norm() const noexcept { return std::abs(x) + std::abs(y); }
  bool is_finite() const noexcept { return std::isfinite(x) && std::isfinite(y); }

  friend bool operator==(const Point2&, const Point2&) = default;
  friend Point2 operator-(const Point2& p) { return {-p.x, -p.y}; }
  friend Point2 operator-(const Point2& a, const Point2& b) { return {a.x - b.x, a.y - b.y}; }
};

/// A point of R^n, n >= 3.
class PointN {
 public:
  explicit PointN(std::vector<double> coords);
  PointN(std::initializer_list<double> coords) : PointN(std::vector<double>(coords)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const PointN&, const PointN&) = default;

 private:
  std::vector<double> coords_;
};

/// The four generators of the group: h, v and their inverses.
enum class Letter : std::uint8_t { kH, kV, kHInv, kVInv };

Letter inverse(Letter l) noexcept;
char to_char(Letter l) noexcept;

Point2 h(const SigmaMap& s, Point2 p);
Point2 h_inv(const SigmaMap& s, Point2 p);
Point2 v(const SigmaMap& s, Point2 p);
Point2 v_inv(const SigmaMap& s, Point2 p);

Point2 apply(const SigmaMap& s, Letter l, Point2 p);

/// The k-th power of a letter in closed form: h^k(x,y) = (x + k sigma^-1(y), y)
/// and v^k(x,y) = (x, y + k sigma(x)). Negative k gives inverse powers.
Point2 apply_power(const SigmaMap& s, Letter l, double k, Point2 p);

// n-dimensional transvections. Indices are 0-based and must satisfy i < j < n.
PointN h_ij(const SigmaMap& s, std::size_t i, std::size_t j, const PointN& p);
PointN v_ij(const SigmaMap& s, std::size_t i, std::size_t j, const PointN& p);
PointN h_ij_inv(const SigmaMap& s, std::size_t i, std::size_t j, const PointN& p);
PointN v_ij_inv(const SigmaMap& s, std::size_t i, std::size_t j, const PointN& p);

/// (x, y) -> (t x, sgn(t)|t|^alpha y), the flow that commutes with h and v
/// when sigma is a power map. Throws std::invalid_argument otherwise.
Point2 flow_scale(const SigmaMap& s, double t, Point2 p);

}  // namespace transvecta
