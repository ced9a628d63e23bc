#include "transvecta/cfrac.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "transvecta/errors.hpp"
#include "transvecta/regions.hpp"

namespace transvecta {

double s_ab(double alpha, std::uint64_t a, std::uint64_t b, double R) {
  if (a == 0 || b == 0) throw std::domain_error("s_ab: digits must be >= 1");
  if (!(R > 1.0)) throw std::domain_error("s_ab: R must exceed 1");
  const SigmaMap s = SigmaMap::power(alpha);
  return static_cast<double>(a) + 1.0 / s.inverse(static_cast<double>(b) + 1.0 / s(R));
}

double reconstruct(double alpha, const std::vector<DigitPair>& pairs, double R) {
  const SigmaMap s = SigmaMap::power(alpha);
  double r = R;
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
    // Same formula as s_ab without the R > 1 guard: the innermost residual
    // of a terminated expansion may be infinite.
    r = static_cast<double>(it->a) + 1.0 / s.inverse(static_cast<double>(it->b) + 1.0 / s(r));
  }
  return r;
}

Expansion expand(double alpha, Point2 p, std::size_t n) {
  const SigmaMap s = SigmaMap::power(alpha);
  if (!(p.y > 0.0) || !(s.inverse(p.y) < p.x)) {
    throw std::domain_error("digits: point must satisfy 0 < sigma^-1(y) < x");
  }
  Expansion out;
  out.point = p;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      const UStep st = u_step(s, out.point);
      out.pairs.push_back({st.first.digit, st.second.digit});
      out.point = st.result();
    } catch (const DiagonalOrAxis&) {
      out.terminated = true;
      break;
    }
  }
  out.residual = {out.point.x / s.inverse(out.point.y), out.point.y};
  return out;
}

Expansion digits(double alpha, Point2 p, std::size_t n) {
  Expansion e = expand(alpha, p, n);
  if (e.terminated) {
    throw AxisHit("digits: expansion terminated after " + std::to_string(e.pairs.size()) +
                      " pair(s)",
                  e.pairs.size());
  }
  return e;
}

double golden_slope(double alpha) {
  if (!(alpha > 0.0) || alpha > 64.0) {
    throw std::domain_error("golden_slope: alpha must lie in (0, 64]");
  }
  auto g = [alpha](double r) { return s_ab(alpha, 1, 1, r) - r; };
  double lo = 1.0 + 1e-9;
  double hi = 4.0;
  // g(lo) > 0 > g(hi): S_{1,1} maps (1, inf) into (1, 2).
  // bisect down to adjacent doubles
  while (true) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace transvecta
