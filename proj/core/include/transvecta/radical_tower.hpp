#pragma once

#include <cstddef>
#include <utility>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace transvecta {

/// An element of the tower K_d = Q(sqrt g_0)(sqrt g_1)...(sqrt g_{d-1}).
///
/// Stored as 2^d rational coefficients over the monomial basis: coefficient i
/// multiplies the product of sqrt(g_k) over the bits k set in i. The low half
/// of the vector is `a` and the high half is `b` in a + b sqrt(g_{d-1}).
///
/// Addition and subtraction need no generators; multiplication, inversion and
/// sign go through a TowerContext.
class TowerElement {
 public:
  TowerElement() : coeffs_(1) {}
  explicit TowerElement(mpq_class q) : coeffs_{std::move(q)} {}
  TowerElement(long n) : TowerElement(mpq_class(n)) {}  // NOLINT(google-explicit-constructor)
  /// a + b sqrt(g_{d-1}); a and b are lifted to a common depth d - 1.
  TowerElement(const TowerElement& a, const TowerElement& b);

  /// The generator sqrt(g_{depth-1}) as an element of depth `depth` >= 1.
  static TowerElement sqrt_generator(std::size_t depth);

  std::size_t depth() const noexcept { return depth_; }
  std::span<const mpq_class> coeffs() const noexcept { return coeffs_; }

  /// Requires depth() >= 1.
  TowerElement low() const;
  TowerElement high() const;

  bool is_zero() const noexcept;
  /// True when every coefficient but the constant one vanishes.
  bool is_rational() const noexcept;

  /// Same value viewed at a larger depth.
  TowerElement lifted(std::size_t depth) const;
  /// Same value at the smallest depth that represents it.
  TowerElement normalized() const;

  /// Largest bit length of any numerator or denominator.
  std::size_t max_bits() const noexcept;

  TowerElement operator-() const;
  TowerElement& operator+=(const TowerElement& o);
  TowerElement& operator-=(const TowerElement& o);
  TowerElement& operator*=(const mpq_class& q);
  friend TowerElement operator+(TowerElement a, const TowerElement& b) { return a += b; }
  friend TowerElement operator-(TowerElement a, const TowerElement& b) { return a -= b; }
  friend TowerElement operator*(TowerElement a, const mpq_class& q) { return a *= q; }

  /// Value equality across depths.
  friend bool operator==(const TowerElement& a, const TowerElement& b);

 private:
  TowerElement(std::size_t depth, std::vector<mpq_class> coeffs)
      : depth_(depth), coeffs_(std::move(coeffs)) {}

  std::size_t depth_ = 0;
  std::vector<mpq_class> coeffs_;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The generator list y_0, ..., y_{d-1}. Generator i has depth <= i and is
/// positive and not a square in K_i; both facts are checked on extension.
/// Contexts are immutable values; extend() returns a new one.
class TowerContext {
 public:
  TowerContext() = default;

  /// Context with the single rational generator q. Throws
  /// std::invalid_argument unless q > 0 and q is not a rational square.
  static TowerContext over_rationals(const mpq_class& q);

  std::size_t depth() const noexcept { return gens_.size(); }
  const TowerElement& generator(std::size_t i) const { return gens_.at(i); }

  /// Context with y appended. y must live in K_depth(), be positive and not
  /// be a square there; throws std::invalid_argument otherwise.
  TowerContext extend(const TowerElement& y) const;

  TowerElement mul(const TowerElement& x, const TowerElement& y) const;
  TowerElement square(const TowerElement& x) const { return mul(x, x); }
  /// Throws DivisionByZero for 0.
  TowerElement inv(const TowerElement& x) const;
  TowerElement div(const TowerElement& x, const TowerElement& y) const { return mul(x, inv(y)); }

  /// Exact sign in {-1, 0, +1} of the real number x.
  int sign(const TowerElement& x) const;
  int compare(const TowerElement& x, const TowerElement& y) const { return sign(x - y); }

  /// Decides whether x is a square in K_level (level defaults to depth()).
  bool is_square(const TowerElement& x) const { return sqrt_in_field(x).has_value(); }
  bool is_square(const TowerElement& x, std::size_t level) const {
    return sqrt_in_field(x, level).has_value();
  }
  /// A square root of x in K_level, or nullopt when there is none. The root
  /// returned for a nonzero square is the nonnegative one.
  std::optional<TowerElement> sqrt_in_field(const TowerElement& x) const {
    return sqrt_in_field(x, depth());
  }
  std::optional<TowerElement> sqrt_in_field(const TowerElement& x, std::size_t level) const;

  /// Approximation with `bits` of mantissa precision.
  mpf_class approx(const TowerElement& x, mp_bitcnt_t bits = 256) const;
  double to_double(const TowerElement& x) const;

  /// Human-readable exact form, e.g. "-1 + sqrt(2)" or "3/2 - 2*s0*s1".
  /// Generator square roots print as sqrt(q) when the generator is rational
  /// and as s<i> otherwise.
  std::string str(const TowerElement& x) const;

 private:
  TowerElement mul_at(const TowerElement& x, const TowerElement& y, std::size_t d) const;
  TowerElement inv_at(const TowerElement& x, std::size_t d) const;
  int sign_at(const TowerElement& x, std::size_t d) const;
  mpf_class approx_at(const TowerElement& x, std::size_t d, mp_bitcnt_t bits) const;

  std::vector<TowerElement> gens_;
};

/// One certified step of the accelerated orbit in the tower.
struct OrbitState {
  std::size_t n = 0;
  TowerElement x;  // depth n + 1
  TowerElement y;  // depth <= n
  mpz_class k;     // exponent producing y from the previous y (0 for n = 0)
  mpz_class j;     // exponent producing x from the previous x (0 for n = 0)
  double x_approx = 0.0;
  double y_approx = 0.0;
  std::size_t bits = 0;  // max coefficient bit length of x and y
};

struct OrbitReport {
  TowerContext context;  // generators y_0, ..., y_N
  std::vector<OrbitState> states;
};

inline constexpr std::size_t kTowerDefaultDepth = 5;
inline constexpr std::size_t kTowerMaxDepth = 8;

/// Runs the accelerated algorithm for sigma(x) = sgn(x) x^2 from
/// (x0, y0) = (a0 + b0 sqrt(y0), y0) for `depth` steps, certifying exactly at
/// every step that
///   i:   y_n > 0 and y_n is not a square in K_n,
///   ii:  x_n > 0, x_n = a_n + b_n sqrt(y_n) with a_n != 0 and |b_n| >= 1,
///   iii: y_n > x_n^2.
/// Each step takes y_{n+1} = y_n - k x_n^2 with 0 < y_{n+1} < x_n^2, then
/// x_{n+1} = x_n - j sqrt(y_{n+1}) with 0 < x_{n+1} < sqrt(y_{n+1}).
/// Throws InvariantViolation naming the clause that fails, and
/// std::invalid_argument for depth > kTowerMaxDepth.
OrbitReport orbit_verify(const mpq_class& a0, const mpq_class& b0, const mpq_class& y0,
                         std::size_t depth);

struct IdentityCheck {
  bool holds = false;
  TowerContext context;  // Q(sqrt 2)
  TowerElement x;
  TowerElement y;
  std::vector<std::pair<TowerElement, TowerElement>> trace;  // after each letter
};

/// Evaluates h o v^2 o h^-1 o v^4 (1, 0) exactly in Q(sqrt 2) for
/// sigma(x) = sgn(x) x^2 and compares the result with (-1 + sqrt 2, 2).
IdentityCheck m0_identity_check();

}  // namespace transvecta
