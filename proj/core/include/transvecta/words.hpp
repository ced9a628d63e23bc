#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "transvecta/sigma_map.hpp"

namespace transvecta {

/// A finite word over {h, v, h^-1, v^-1}.
///
/// Composition convention: the first letter is the OUTERMOST map, so the word
/// w1 w2 ... wn acts as w1 ∘ w2 ∘ ... ∘ wn and eval(w, p) = w1(w2(...wn(p))).
///
/// Text form: 'H' and 'V' for h and v, lowercase 'h' and 'v' for their
/// inverses. "HVh" is h ∘ v ∘ h^-1.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }

  /// Only h and v: an element of the monoid M(h, v).
  bool is_positive() const noexcept;
  /// Only h^-1 and v^-1: an element of the monoid M(h^-1, v^-1).
  bool is_negative() const noexcept;

  Word inverse() const;
  Word operator*(const Word& rhs) const;  // concatenation = composition
  Word pow(std::size_t n) const;
  void push_back(Letter l) { letters_.push_back(l); }

  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex order (length first, then letters).
  friend bool operator<(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

Point2 eval_word(const SigmaMap& s, const Word& w, Point2 p);

struct Coding {
  Word word;    // p = word(image)
  Point2 image; // E^n(p)
};

/// The unique length-n word w with p ∈ w(X) (or w(Y) for p in Y), read off
/// the labels of the subtractive algorithm: A -> H, B -> V, C -> h, D -> v.
/// Throws AxisHit if an iterate reaches an axis before n letters.
Coding encode(const SigmaMap& s, Point2 p, std::size_t n);

/// Closed axis-parallel box [x0, x1] × [y0, y1].
struct Box {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  bool contains(Point2 p) const noexcept {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
};

/// True when no image of p under further letters of the monoid that fixes p's
/// quadrant can re-enter the box. Inside a closed quadrant h, v (for X) and
/// h^-1, v^-1 (for Y) never move a coordinate towards its axis, so a point
/// beyond the box on the far side of the origin stays beyond it.
bool beyond_box(const Box& box, Point2 p) noexcept;

enum class AxisSide { kOx, kOy };

struct LineSample {
  Word word;
  double t;
  Point2 point;
};

/// Samples the sigma-rational lines w(Ox) for all words w over {H, V} of
/// length <= depth (or w(Oy) with w over {h^-1, v^-1} when side == kOy) at the
/// parameters t: emits w((t,0)) (resp. w((0,t))) whenever it lies in `box`.
/// Subtrees are pruned with beyond_box. Output is sorted by (word shortlex, t).
std::vector<LineSample> rational_lines(const SigmaMap& s, std::size_t depth,
                                       std::span<const double> ts, const Box& box,
                                       AxisSide side = AxisSide::kOx, unsigned threads = 0);

/// Exact 2x2 integer matrix.
struct IntMatrix2 {
  mpz_class a{1}, b{0}, c{0}, d{1};

  static IntMatrix2 identity() { return {}; }
  IntMatrix2 operator*(const IntMatrix2& o) const;
  mpz_class det() const { return a * d - b * c; }
  friend bool operator==(const IntMatrix2& l, const IntMatrix2& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
  }
};

IntMatrix2 letter_matrix(Letter l);
/// Image of w under the morphism onto SL(2, Z): h -> [[1,1],[0,1]], v -> [[1,0],[1,1]].
IntMatrix2 word_matrix(const Word& w);

struct IntPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
};

/// For sigma fixing the integers, checks that w acts on the integer point q
/// exactly like its SL(2, Z) image. Throws std::invalid_argument when sigma
/// does not fix Z.
bool morphism_check(const SigmaMap& s, const Word& w, IntPoint q);

/// V_sigma = h^-1 v h^-1 and U_sigma = v^-1 h.
Word v_sigma();
Word u_sigma();
/// The two defining relators of SL(2, Z) in U, V: V^4 and V^2 U^3.
Word relator_v4();
Word relator_v2u3();

}  // namespace transvecta
