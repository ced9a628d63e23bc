#include "transvecta/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "transvecta/parallel.hpp"
#include "transvecta/text.hpp"

namespace transvecta {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double wrap_unit(double t) noexcept {
  double r = t - std::floor(t);
  // floor can leave r == 1 for tiny negative t
  if (r >= 1.0) r = 0.0;
  return r;
}

CircleMap CircleMap::constant(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("const circle map needs a finite value");
  return CircleMap(Kind::kConstant, c);
}

CircleMap CircleMap::linear(double a) {
  if (!std::isfinite(a)) throw std::invalid_argument("lin circle map needs a finite slope");
  return CircleMap(Kind::kLinear, a);
}

CircleMap CircleMap::sine(double c) {
  if (!(std::abs(c) < 1.0)) throw std::invalid_argument("sine circle map requires |c| < 1");
  return CircleMap(Kind::kSine, c);
}

CircleMap CircleMap::parse(std::string_view descriptor) {
  const auto parts = split(descriptor, ':');
  if (parts.size() != 2) {
    throw std::invalid_argument("circle map '" + std::string(descriptor) +
                                "': expected const:<c>, lin:<a> or sine:<c>");
  }
  const double p = parse_real(parts[1]);
  if (parts[0] == "const") return constant(p);
  if (parts[0] == "lin") return linear(p);
  if (parts[0] == "sine") return sine(p);
  throw std::invalid_argument("unknown circle map '" + std::string(descriptor) + "'");
}

double CircleMap::operator()(double y) const {
  switch (kind_) {
    case Kind::kConstant:
      return wrap_unit(p_);
    case Kind::kLinear:
      return wrap_unit(p_ * y);
    case Kind::kSine:
      return wrap_unit(y + p_ * std::sin(kTwoPi * y) / kTwoPi);
  }
  return 0.0;
}

std::string CircleMap::descriptor() const {
  switch (kind_) {
    case Kind::kConstant:
      return "const:" + format_real(p_);
    case Kind::kLinear:
      return "lin:" + format_real(p_);
    case Kind::kSine:
      return "sine:" + format_real(p_);
  }
  return "?";
}

TorusPoint torus_h(const TorusMaps& m, TorusPoint p) { return {wrap_unit(p.x + m.sigma2(p.y)), p.y}; }
TorusPoint torus_v(const TorusMaps& m, TorusPoint p) { return {p.x, wrap_unit(p.y + m.sigma1(p.x))}; }
TorusPoint torus_h_inv(const TorusMaps& m, TorusPoint p) {
  return {wrap_unit(p.x - m.sigma2(p.y)), p.y};
}
TorusPoint torus_v_inv(const TorusMaps& m, TorusPoint p) {
  return {p.x, wrap_unit(p.y - m.sigma1(p.x))};
}

TrigPoly TrigPoly::one() { return TrigPoly{1.0, {}}; }
TrigPoly TrigPoly::cosine(int freq) { return TrigPoly{0.0, {{freq, 1.0, 0.0}}}; }
TrigPoly TrigPoly::sine(int freq) { return TrigPoly{0.0, {{freq, 0.0, 1.0}}}; }

TrigPoly TrigPoly::parse(std::string_view descriptor) {
  if (descriptor == "one") return one();
  const auto parts = split(descriptor, ':');
  if (parts.size() == 2 && (parts[0] == "cos" || parts[0] == "sin")) {
    const double f = parse_real(parts[1]);
    if (f < 1.0 || f != std::floor(f) || f > 1e6) {
      throw std::invalid_argument("trig term '" + std::string(descriptor) +
                                  "': frequency must be a positive integer");
    }
    return parts[0] == "cos" ? cosine(static_cast<int>(f)) : sine(static_cast<int>(f));
  }
  throw std::invalid_argument("trig term '" + std::string(descriptor) +
                              "': expected one, cos:<k> or sin:<k>");
}

double TrigPoly::operator()(double t) const {
  double out = constant;
  for (const Term& term : terms) {
    const double w = kTwoPi * term.freq * t;
    out += term.cos_coeff * std::cos(w) + term.sin_coeff * std::sin(w);
  }
  return out;
}

double distance_to_rationals(double t, int max_den) {
  double best = 1.0;
  for (int q = 1; q <= max_den; ++q) {
    const double p = std::nearbyint(t * q);
    best = std::min(best, std::abs(t - p / q));
  }
  return best;
}

double orbit_average(const TorusMaps& m, const TrigPoly& phi1, const TrigPoly& phi2,
                     TorusPoint p, std::size_t n) {
  if (n == 0) throw std::invalid_argument("orbit_average: n must be >= 1");
  // Kahan summation
  double sum = 0.0, comp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double term = phi1(p.x) * phi2(p.y) - comp;
    const double t = sum + term;
    comp = (t - sum) - term;
    sum = t;
    p = torus_h(m, p);
  }
  return sum / static_cast<double>(n);
}

BirkhoffReport birkhoff_product_test(const TorusMaps& m, const TrigPoly& phi1,
                                     const TrigPoly& phi2, std::size_t n, std::size_t starts,
                                     std::uint64_t seed, unsigned threads) {
  if (n == 0 || starts == 0) throw std::invalid_argument("birkhoff_product_test: n and starts must be >= 1");
  BirkhoffReport rep;
  rep.starts = starts;
  rep.iterations = n;
  rep.deviations.assign(starts, 0.0);
  std::vector<char> warned(starts, 0);
  parallel_for(starts, threads, [&](std::size_t i) {
    std::mt19937_64 rng(splitmix64(seed + i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const TorusPoint p{unit(rng), unit(rng)};
    warned[i] = distance_to_rationals(m.sigma2(p.y), 100) <= 1e-9 ? 1 : 0;
    rep.deviations[i] = std::abs(orbit_average(m, phi1, phi2, p, n) - phi1.mean() * phi2(p.y));
  });
  rep.max_deviation = *std::max_element(rep.deviations.begin(), rep.deviations.end());
  rep.rational_warnings = static_cast<std::size_t>(std::count(warned.begin(), warned.end(), 1));
  return rep;
}

HistogramReport lebesgue_histogram(const TorusMaps& m, TorusLetter map, std::size_t points,
                                   std::size_t bins, std::uint64_t seed) {
  if (points == 0 || bins == 0) throw std::invalid_argument("lebesgue_histogram: empty request");
  HistogramReport rep;
  rep.points = points;
  rep.bins = bins;
  rep.counts.assign(bins * bins, 0);
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < points; ++i) {
    TorusPoint p{unit(rng), unit(rng)};
    switch (map) {
      case TorusLetter::kH:
        p = torus_h(m, p);
        break;
      case TorusLetter::kV:
        p = torus_v(m, p);
        break;
      case TorusLetter::kHInv:
        p = torus_h_inv(m, p);
        break;
      case TorusLetter::kVInv:
        p = torus_v_inv(m, p);
        break;
    }
    const auto col = std::min(bins - 1, static_cast<std::size_t>(p.x * static_cast<double>(bins)));
    const auto row = std::min(bins - 1, static_cast<std::size_t>(p.y * static_cast<double>(bins)));
    ++rep.counts[row * bins + col];
  }
  rep.expected = static_cast<double>(points) / static_cast<double>(bins * bins);
  for (std::uint64_t c : rep.counts) {
    rep.max_abs_z = std::max(rep.max_abs_z, std::abs(static_cast<double>(c) - rep.expected) /
                                                std::sqrt(rep.expected));
  }
  return rep;
}

}  // namespace transvecta
