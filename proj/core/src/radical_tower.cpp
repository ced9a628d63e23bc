#include "transvecta/radical_tower.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "transvecta/errors.hpp"

namespace transvecta {

// ---------------------------------------------------------------------------
// TowerElement

TowerElement::TowerElement(const TowerElement& a, const TowerElement& b) {
  const std::size_t base = std::max(a.depth(), b.depth());
  const TowerElement la = a.lifted(base);
  const TowerElement lb = b.lifted(base);
  depth_ = base + 1;
  coeffs_.reserve(la.coeffs_.size() * 2);
  coeffs_.insert(coeffs_.end(), la.coeffs_.begin(), la.coeffs_.end());
  coeffs_.insert(coeffs_.end(), lb.coeffs_.begin(), lb.coeffs_.end());
}

TowerElement TowerElement::sqrt_generator(std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("sqrt_generator: depth must be >= 1");
  std::vector<mpq_class> c(std::size_t{1} << depth);
  c[std::size_t{1} << (depth - 1)] = 1;
  return TowerElement(depth, std::move(c));
}

TowerElement TowerElement::low() const {
  if (depth_ == 0) throw std::logic_error("low(): depth-0 element");
  const std::size_t half = coeffs_.size() / 2;
  return TowerElement(depth_ - 1, std::vector<mpq_class>(coeffs_.begin(), coeffs_.begin() + half));
}

TowerElement TowerElement::high() const {
  if (depth_ == 0) throw std::logic_error("high(): depth-0 element");
  const std::size_t half = coeffs_.size() / 2;
  return TowerElement(depth_ - 1, std::vector<mpq_class>(coeffs_.begin() + half, coeffs_.end()));
}

bool TowerElement::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& q) { return q == 0; });
}

bool TowerElement::is_rational() const noexcept {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpq_class& q) { return q == 0; });
}

TowerElement TowerElement::lifted(std::size_t depth) const {
  if (depth < depth_) throw std::logic_error("lifted(): cannot lower the depth");
  if (depth == depth_) return *this;
  std::vector<mpq_class> c(std::size_t{1} << depth);
  std::copy(coeffs_.begin(), coeffs_.end(), c.begin());
  return TowerElement(depth, std::move(c));
}

TowerElement TowerElement::normalized() const {
  std::size_t d = depth_;
  while (d > 0) {
    const std::size_t half = std::size_t{1} << (d - 1);
    const bool top_zero = std::all_of(coeffs_.begin() + half, coeffs_.begin() + 2 * half,
                                      [](const mpq_class& q) { return q == 0; });
    if (!top_zero) break;
    --d;
  }
  if (d == depth_) return *this;
  return TowerElement(
      d, std::vector<mpq_class>(coeffs_.begin(), coeffs_.begin() + (std::size_t{1} << d)));
}

std::size_t TowerElement::max_bits() const noexcept {
  std::size_t bits = 0;
  for (const mpq_class& q : coeffs_) {
    bits = std::max(bits, mpz_sizeinbase(q.get_num_mpz_t(), 2));
    bits = std::max(bits, mpz_sizeinbase(q.get_den_mpz_t(), 2));
  }
  return bits;
}

TowerElement TowerElement::operator-() const {
  TowerElement out = *this;
  for (mpq_class& q : out.coeffs_) q = -q;
  return out;
}

TowerElement& TowerElement::operator+=(const TowerElement& o) {
  if (o.depth_ > depth_) *this = lifted(o.depth_);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TowerElement& TowerElement::operator-=(const TowerElement& o) {
  if (o.depth_ > depth_) *this = lifted(o.depth_);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TowerElement& TowerElement::operator*=(const mpq_class& q) {
  for (mpq_class& c : coeffs_) c *= q;
  return *this;
}

bool operator==(const TowerElement& a, const TowerElement& b) {
  const std::size_t d = std::max(a.depth(), b.depth());
  const TowerElement la = a.lifted(d);
  const TowerElement lb = b.lifted(d);
  return la.coeffs_ == lb.coeffs_;
}

// ---------------------------------------------------------------------------
// TowerContext

namespace {

bool rational_sqrt(const mpq_class& q, mpq_class& root) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return false;
  }
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
  root = mpq_class(num, den);
  root.canonicalize();
  return true;
}

}  // namespace

TowerContext TowerContext::over_rationals(const mpq_class& q) {
  return TowerContext{}.extend(TowerElement(q));
}

TowerContext TowerContext::extend(const TowerElement& y) const {
  const TowerElement yn = y.normalized();
  if (yn.depth() > depth()) {
    throw std::invalid_argument("extend: generator does not live in the current field");
  }
  if (sign(yn) <= 0) throw std::invalid_argument("extend: generator must be positive");
  if (is_square(yn)) throw std::invalid_argument("extend: generator is already a square");
  TowerContext out = *this;
  out.gens_.push_back(yn);
  return out;
}

TowerElement TowerContext::mul(const TowerElement& x, const TowerElement& y) const {
  const std::size_t d = std::max(x.depth(), y.depth());
  if (d > depth()) throw std::invalid_argument("mul: element deeper than the context");
  return mul_at(x.lifted(d), y.lifted(d), d);
}

TowerElement TowerContext::mul_at(const TowerElement& x, const TowerElement& y,
                                  std::size_t d) const {
  if (d == 0) return TowerElement(x.coeffs()[0] * y.coeffs()[0]);
  const TowerElement a = x.low(), b = x.high();
  const TowerElement c = y.low(), e = y.high();
  const bool b_zero = b.is_zero(), e_zero = e.is_zero();
  // (a + b r)(c + e r) = (ac + be g) + (ae + bc) r with r^2 = g.
  if (b_zero && e_zero) return TowerElement(mul_at(a, c, d - 1), TowerElement().lifted(d - 1));
  if (b_zero) return TowerElement(mul_at(a, c, d - 1), mul_at(a, e, d - 1));
  if (e_zero) return TowerElement(mul_at(a, c, d - 1), mul_at(b, c, d - 1));
  const TowerElement g = gens_[d - 1].lifted(d - 1);
  const TowerElement ac = mul_at(a, c, d - 1);
  const TowerElement be = mul_at(b, e, d - 1);
  const TowerElement cross = mul_at(a + b, c + e, d - 1) - ac - be;
  return TowerElement(ac + mul_at(be, g, d - 1), cross);
}

TowerElement TowerContext::inv(const TowerElement& x) const {
  if (x.depth() > depth()) throw std::invalid_argument("inv: element deeper than the context");
  return inv_at(x, x.depth());
}

TowerElement TowerContext::inv_at(const TowerElement& x, std::size_t d) const {
  if (d == 0) {
    if (x.coeffs()[0] == 0) throw DivisionByZero("inverse of zero");
    return TowerElement(1 / mpq_class(x.coeffs()[0]));
  }
  const TowerElement a = x.low(), b = x.high();
  if (b.is_zero()) return TowerElement(inv_at(a, d - 1), TowerElement().lifted(d - 1));
  // (a + b r)^-1 = (a - b r) / (a^2 - b^2 g)
  const TowerElement g = gens_[d - 1].lifted(d - 1);
  const TowerElement den = mul_at(a, a, d - 1) - mul_at(mul_at(b, b, d - 1), g, d - 1);
  const TowerElement den_inv = inv_at(den, d - 1);
  return TowerElement(mul_at(a, den_inv, d - 1), -mul_at(b, den_inv, d - 1));
}

int TowerContext::sign(const TowerElement& x) const {
  const TowerElement n = x.normalized();
  if (n.depth() > depth()) throw std::invalid_argument("sign: element deeper than the context");
  return sign_at(n, n.depth());
}

int TowerContext::sign_at(const TowerElement& x, std::size_t d) const {
  if (d == 0) return sgn(x.coeffs()[0]);
  const TowerElement a = x.low(), b = x.high();
  const int sa = sign_at(a, d - 1);
  const int sb = sign_at(b, d - 1);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: |a| vs |b| sqrt(g), compared through a^2 - b^2 g.
  const TowerElement g = gens_[d - 1].lifted(d - 1);
  const int t = sign_at(mul_at(a, a, d - 1) - mul_at(mul_at(b, b, d - 1), g, d - 1), d - 1);
  if (t == 0) throw std::logic_error("sign: generator turned out to be a square");
  return t > 0 ? sa : sb;
}

std::optional<TowerElement> TowerContext::sqrt_in_field(const TowerElement& x,
                                                        std::size_t level) const {
  if (level > depth()) throw std::invalid_argument("sqrt_in_field: level exceeds the context");
  const TowerElement n = x.normalized();
  if (n.depth() > level) throw std::invalid_argument("sqrt_in_field: element is not in K_level");
  if (n.is_zero()) return TowerElement().lifted(level);
  if (level == 0) {
    mpq_class root;
    if (!rational_sqrt(n.coeffs()[0], root)) return std::nullopt;
    return TowerElement(root);
  }
  const TowerElement lx = n.lifted(level);
  const TowerElement xa = lx.low(), xb = lx.high();
  const TowerElement z = gens_[level - 1];
  const TowerElement zero = TowerElement().lifted(level - 1);
  auto positive_root = [&](TowerElement r) {
    if (sign(r) < 0) r = -r;
    return r.lifted(level);
  };

  // (a + b r)^2 = a^2 + b^2 z + 2ab r with r = sqrt(z).
  if (xb.is_zero()) {
    // ab = 0: either b = 0 and a^2 = x, or a = 0 and b^2 = x / z.
    if (auto a = sqrt_in_field(xa, level - 1)) return positive_root(TowerElement(*a, zero));
    if (auto b = sqrt_in_field(div(xa, z), level - 1)) return positive_root(TowerElement(zero, *b));
    return std::nullopt;
  }
  // A square has a^2 + b^2 z > 0.
  if (sign(xa) <= 0) return std::nullopt;
  // a^2 solves t^2 - x_a t + x_b^2 z / 4 = 0.
  const auto delta = sqrt_in_field(square(xa) - mul(square(xb), z), level - 1);
  if (!delta) return std::nullopt;
  const mpq_class half(1, 2);
  for (const TowerElement& cand : {(xa + *delta) * half, (xa - *delta) * half}) {
    const auto a = sqrt_in_field(cand, level - 1);
    if (!a || a->is_zero()) continue;
    const TowerElement b = div(xb * half, *a);
    const TowerElement root(*a, b);
    if (square(root) == lx) return positive_root(root);
  }
  return std::nullopt;
}

mpf_class TowerContext::approx(const TowerElement& x, mp_bitcnt_t bits) const {
  if (x.depth() > depth()) throw std::invalid_argument("approx: element deeper than the context");
  return approx_at(x, x.depth(), bits);
}

mpf_class TowerContext::approx_at(const TowerElement& x, std::size_t d, mp_bitcnt_t bits) const {
  if (d == 0) return mpf_class(x.coeffs()[0], bits);
  const TowerElement b = x.high();
  mpf_class out = approx_at(x.low(), d - 1, bits);
  if (!b.is_zero()) {
    const TowerElement& g = gens_[d - 1];
    mpf_class root(approx_at(g, g.depth(), bits), bits);
    root = sqrt(root);
    out += approx_at(b, d - 1, bits) * root;
  }
  return out;
}

double TowerContext::to_double(const TowerElement& x) const { return approx(x).get_d(); }

std::string TowerContext::str(const TowerElement& x) const {
  const TowerElement n = x.normalized();
  if (n.depth() > depth()) throw std::invalid_argument("str: element deeper than the context");
  std::string out;
  const auto coeffs = n.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const mpq_class& c = coeffs[i];
    if (c == 0) continue;
    std::string monomial;
    for (std::size_t k = 0; k < n.depth(); ++k) {
      if (((i >> k) & 1U) == 0) continue;
      if (!monomial.empty()) monomial += "*";
      monomial += gens_[k].is_rational() ? "sqrt(" + gens_[k].coeffs()[0].get_str() + ")"
                                         : "s" + std::to_string(k);
    }
    const mpq_class mag = abs(c);
    std::string term;
    if (monomial.empty()) {
      term = mag.get_str();
    } else if (mag == 1) {
      term = monomial;
    } else {
      term = mag.get_str() + "*" + monomial;
    }
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + term;
    } else {
      out += (c < 0 ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Orbit certification

namespace {

[[noreturn]] void violated(const std::string& clause, std::size_t n, const std::string& what) {
  throw InvariantViolation(clause + "(" + std::to_string(n) + ")",
                           "clause " + clause + "(" + std::to_string(n) + ") fails: " + what);
}

// Largest k >= 0 with pred(k) true, where pred is true at 0 and monotone.
template <class Pred>
mpz_class last_true(Pred pred) {
  mpz_class lo = 0;
  mpz_class hi = 1;
  while (pred(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const mpz_class mid = (lo + hi) / 2;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

OrbitState make_state(const TowerContext& ctx, std::size_t n, TowerElement x, TowerElement y,
                      mpz_class k, mpz_class j) {
  OrbitState s;
  s.n = n;
  s.x_approx = ctx.to_double(x);
  s.y_approx = ctx.to_double(y);
  s.bits = std::max(x.max_bits(), y.max_bits());
  s.x = std::move(x);
  s.y = std::move(y);
  s.k = std::move(k);
  s.j = std::move(j);
  return s;
}

}  // namespace

OrbitReport orbit_verify(const mpq_class& a0, const mpq_class& b0, const mpq_class& y0,
                         std::size_t depth) {
  if (depth > kTowerMaxDepth) {
    throw std::invalid_argument("orbit_verify: depth " + std::to_string(depth) +
                                " exceeds the cap of " + std::to_string(kTowerMaxDepth));
  }
  if (y0 <= 0) violated("i", 0, "y_0 is not positive");
  {
    mpq_class root;
    if (rational_sqrt(y0, root)) violated("i", 0, "y_0 is a rational square");
  }
  OrbitReport report;
  TowerContext ctx = TowerContext::over_rationals(y0);
  TowerElement x{TowerElement(a0), TowerElement(b0)};
  TowerElement y(y0);
  if (ctx.sign(x) <= 0) violated("ii", 0, "x_0 is not positive");
  if (a0 == 0) violated("ii", 0, "a_0 is zero");
  if (abs(b0) < 1) violated("ii", 0, "|b_0| < 1");
  if (ctx.compare(y, ctx.square(x)) <= 0) violated("iii", 0, "y_0 <= x_0^2");
  report.states.push_back(make_state(ctx, 0, x, y, 0, 0));

  for (std::size_t n = 0; n < depth; ++n) {
    const std::size_t m = n + 1;
    const TowerElement xsq = ctx.square(x);
    // k: largest integer with y - k x^2 > 0
    const mpz_class k =
        last_true([&](const mpz_class& t) { return ctx.sign(y - xsq * mpq_class(t)) > 0; });
    if (k < 1) violated("iii", n, "no k >= 1 with y_n - k x_n^2 > 0");
    const TowerElement y_next = (y - xsq * mpq_class(k)).normalized();
    if (ctx.sign(y_next) <= 0) violated("i", m, "y is not positive");
    if (ctx.compare(y_next, xsq) >= 0) violated("i", m, "y_{n+1} >= x_n^2");
    if (ctx.is_square(y_next)) violated("i", m, "y is a square in K");
    ctx = ctx.extend(y_next);

    // j: largest integer with x - j sqrt(y_next) > 0
    const TowerElement root = TowerElement::sqrt_generator(ctx.depth());
    const TowerElement lx = x.lifted(ctx.depth());
    const mpz_class j =
        last_true([&](const mpz_class& t) { return ctx.sign(lx - root * mpq_class(t)) > 0; });
    const TowerElement x_next(x, TowerElement(mpq_class(mpz_class(-j))));
    if (ctx.sign(x_next) <= 0) violated("ii", m, "x is not positive");
    if (ctx.compare(root, x_next) <= 0) violated("ii", m, "x_{n+1} >= sqrt(y_{n+1})");
    if (ctx.sign(x) == 0) violated("ii", m, "a is zero");
    if (j < 1) violated("ii", m, "|b| < 1");
    if (ctx.compare(y_next, ctx.square(x_next)) <= 0) violated("iii", m, "y <= x^2");

    x = x_next;
    y = y_next;
    report.states.push_back(make_state(ctx, m, x, y, k, j));
  }
  report.context = std::move(ctx);
  return report;
}

IdentityCheck m0_identity_check() {
  IdentityCheck out;
  const TowerContext ctx = TowerContext::over_rationals(2);
  auto sigma = [&](const TowerElement& t) {
    const TowerElement sq = ctx.square(t);
    return ctx.sign(t) < 0 ? -sq : sq;
  };
  auto sigma_inv = [&](const TowerElement& t) {
    const int s = ctx.sign(t);
    const auto root = ctx.sqrt_in_field(s < 0 ? -t : t);
    if (!root) throw std::logic_error("m0_identity_check: square root outside Q(sqrt 2)");
    return s < 0 ? -*root : *root;
  };
  TowerElement x(1), y(0);
  // h o v^2 o h^-1 o v^4, innermost first
  for (char letter : std::string("VVVVhVVH")) {
    switch (letter) {
      case 'V':
        y += sigma(x);
        break;
      case 'H':
        x += sigma_inv(y);
        break;
      case 'h':
        x -= sigma_inv(y);
        break;
    }
    out.trace.emplace_back(x.normalized(), y.normalized());
  }
  out.x = x.normalized();
  out.y = y.normalized();
  const TowerElement expected_x(TowerElement(-1), TowerElement(1));
  out.holds = out.x == expected_x && out.y == TowerElement(2);
  out.context = ctx;
  return out;
}

}  // namespace transvecta
