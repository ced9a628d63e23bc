#include "transvecta/words.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "transvecta/errors.hpp"
#include "transvecta/parallel.hpp"
#include "transvecta/regions.hpp"

namespace transvecta {

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'H':
        letters.push_back(Letter::kH);
        break;
      case 'V':
        letters.push_back(Letter::kV);
        break;
      case 'h':
        letters.push_back(Letter::kHInv);
        break;
      case 'v':
        letters.push_back(Letter::kVInv);
        break;
      default:
        throw std::invalid_argument("word '" + std::string(text) + "': unexpected character '" +
                                    std::string(1, ch) + "' (use H, V, h, v)");
    }
  }
  return Word(std::move(letters));
}

bool Word::is_positive() const noexcept {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](Letter l) { return l == Letter::kH || l == Letter::kV; });
}

bool Word::is_negative() const noexcept {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](Letter l) { return l == Letter::kHInv || l == Letter::kVInv; });
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = transvecta::inverse(l);
  return Word(std::move(out));
}

Word Word::operator*(const Word& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return Word(std::move(out));
}

Word Word::pow(std::size_t n) const {
  Word out;
  for (std::size_t i = 0; i < n; ++i) out = out * *this;
  return out;
}

std::string Word::str() const {
  std::string out;
  out.reserve(letters_.size());
  for (Letter l : letters_) out.push_back(to_char(l));
  return out;
}

bool operator<(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.letters_ < b.letters_;
}

Point2 eval_word(const SigmaMap& s, const Word& w, Point2 p) {
  const auto letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) p = apply(s, *it, p);
  return p;
}

Coding encode(const SigmaMap& s, Point2 p, std::size_t n) {
  Coding out{Word{}, p};
  for (std::size_t i = 0; i < n; ++i) {
    const EuclidStep st = euclid_step(s, out.image);
    if (!st.letter) {
      throw AxisHit("encode: iterate reached an axis after " + std::to_string(i) + " letters", i);
    }
    // E applied letter^-1, so the coding letter is its inverse.
    out.word.push_back(inverse(*st.letter));
    out.image = st.result;
  }
  return out;
}

bool beyond_box(const Box& box, Point2 p) noexcept {
  return (p.x > box.x1 && p.x > 0.0) || (p.x < box.x0 && p.x < 0.0) ||
         (p.y > box.y1 && p.y > 0.0) || (p.y < box.y0 && p.y < 0.0);
}

namespace {

struct LineWalker {
  const SigmaMap& s;
  const Box& box;
  std::size_t depth;
  Letter first;
  Letter second;
  double t;
  std::vector<Letter> path;  // innermost letter first
  std::vector<LineSample>* out;

  void emit(Point2 p) {
    out->push_back({Word(std::vector<Letter>(path.rbegin(), path.rend())), t, p});
  }

  void walk(Point2 p) {
    if (box.contains(p)) emit(p);
    if (path.size() == depth) return;
    for (Letter l : {first, second}) {
      const Point2 q = apply(s, l, p);
      if (beyond_box(box, q)) continue;
      path.push_back(l);
      walk(q);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<LineSample> rational_lines(const SigmaMap& s, std::size_t depth,
                                       std::span<const double> ts, const Box& box,
                                       AxisSide side, unsigned threads) {
  if (depth > 20) throw std::invalid_argument("rational_lines: depth must be <= 20");
  const Letter first = side == AxisSide::kOx ? Letter::kH : Letter::kHInv;
  const Letter second = side == AxisSide::kOx ? Letter::kV : Letter::kVInv;
  auto start = [&](double t) { return side == AxisSide::kOx ? Point2{t, 0.0} : Point2{0.0, t}; };

  // Nodes shallower than split_depth are emitted here; each deeper subtree is
  // one task.
  const std::size_t split_depth = std::min<std::size_t>(depth, 3);
  const std::size_t prefixes = std::size_t{1} << split_depth;
  std::vector<LineSample> shallow;
  for (double t : ts) {
    LineWalker w{s, box, split_depth == 0 ? 0 : split_depth - 1, first, second, t, {}, &shallow};
    if (split_depth > 0) w.walk(start(t));
  }

  const std::size_t tasks = ts.size() * prefixes;
  std::vector<std::vector<LineSample>> parts(tasks);
  parallel_for(tasks, threads, [&](std::size_t task) {
    const double t = ts[task / prefixes];
    const std::size_t code = task % prefixes;
    LineWalker w{s, box, depth, first, second, t, {}, &parts[task]};
    Point2 p = start(t);
    for (std::size_t i = 0; i < split_depth; ++i) {
      const Letter l = ((code >> i) & 1U) ? second : first;
      p = apply(s, l, p);
      if (beyond_box(box, p)) return;
      w.path.push_back(l);
    }
    w.walk(p);
  });

  std::vector<LineSample> out = std::move(shallow);
  for (auto& part : parts) {
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(out.begin(), out.end(), [](const LineSample& a, const LineSample& b) {
    if (a.word == b.word) return a.t < b.t;
    return a.word < b.word;
  });
  return out;
}

IntMatrix2 IntMatrix2::operator*(const IntMatrix2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

IntMatrix2 letter_matrix(Letter l) {
  switch (l) {
    case Letter::kH:
      return {1, 1, 0, 1};
    case Letter::kV:
      return {1, 0, 1, 1};
    case Letter::kHInv:
      return {1, -1, 0, 1};
    case Letter::kVInv:
      return {1, 0, -1, 1};
  }
  return {};
}

IntMatrix2 word_matrix(const Word& w) {
  IntMatrix2 m;
  for (Letter l : w.letters()) m = m * letter_matrix(l);
  return m;
}

namespace {

bool equals_exactly(double value, const mpz_class& expected) {
  if (!std::isfinite(value) || value != std::trunc(value)) return false;
  return mpz_class(value) == expected;
}

}  // namespace

bool morphism_check(const SigmaMap& s, const Word& w, IntPoint q) {
  if (!s.fixes_integers()) {
    throw std::invalid_argument("morphism_check requires sigma fixing the integers, got " +
                                s.descriptor());
  }
  const IntMatrix2 m = word_matrix(w);
  const mpz_class qx(static_cast<long>(q.x)), qy(static_cast<long>(q.y));
  const mpz_class ex = m.a * qx + m.b * qy;
  const mpz_class ey = m.c * qx + m.d * qy;
  const Point2 got =
      eval_word(s, w, Point2{static_cast<double>(q.x), static_cast<double>(q.y)});
  return equals_exactly(got.x, ex) && equals_exactly(got.y, ey);
}

Word v_sigma() { return Word::parse("hVh"); }
Word u_sigma() { return Word::parse("vH"); }
Word relator_v4() { return v_sigma().pow(4); }
Word relator_v2u3() { return v_sigma().pow(2) * u_sigma().pow(3); }

}  // namespace transvecta
