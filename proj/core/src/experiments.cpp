#include "transvecta/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "transvecta/parallel.hpp"
#include "transvecta/regions.hpp"
#include "transvecta/text.hpp"

namespace transvecta {

Ratio Ratio::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("ratio '" + std::string(text) + "': expected p/q integers");
    }
    return v;
  };
  Ratio r;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    r.p = parse_int(text);
  } else {
    r.p = parse_int(text.substr(0, slash));
    r.q = parse_int(text.substr(slash + 1));
  }
  if (r.p <= 0 || r.q <= 0) throw std::invalid_argument("ratio '" + std::string(text) + "' must be positive");
  const std::int64_t g = std::gcd(r.p, r.q);
  r.p /= g;
  r.q /= g;
  return r;
}

std::string Ratio::str() const {
  return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& k) const noexcept {
    const std::uint64_t a = static_cast<std::uint64_t>(k.first);
    const std::uint64_t b = static_cast<std::uint64_t>(k.second);
    return std::hash<std::uint64_t>{}(a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL + (a << 6)));
  }
};

using KeySet = std::unordered_set<std::pair<std::int64_t, std::int64_t>, KeyHash>;

// Depth-first walk of the monoid tree. `step(node, letter)` returns the child,
// `inside(node)` decides membership in the closed unit square, `beyond(node)`
// says the node and all its descendants are outside, and `key(node)`
// identifies points. Subtrees below a fixed split depth run as parallel tasks.
template <class Node, class Step, class Inside, class Beyond, class Key>
std::pair<KeySet, std::size_t> walk_monoid(Node root, Step step, Inside inside, Beyond beyond,
                                           Key key, const MertensOptions& opt) {
  const std::size_t cap = opt.max_depth.value_or(std::numeric_limits<std::size_t>::max());
  constexpr std::size_t kSplit = 4;
  const std::size_t split = std::min(cap, kSplit);

  struct Frame {
    Node node;
    std::size_t depth;
  };
  auto run = [&](Node start, std::size_t start_depth, std::size_t limit, KeySet& seen,
                 std::size_t& deepest, std::vector<Frame>* leaves) {
    std::vector<Frame> stack{{start, start_depth}};
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      if (opt.prune && beyond(f.node)) continue;
      if (leaves != nullptr && f.depth == limit) {
        leaves->push_back(f);
        continue;
      }
      deepest = std::max(deepest, f.depth);
      if (inside(f.node)) seen.insert(key(f.node));
      if (f.depth == limit) continue;
      stack.push_back({step(f.node, Letter::kV), f.depth + 1});
      stack.push_back({step(f.node, Letter::kH), f.depth + 1});
    }
  };

  KeySet seen;
  std::size_t deepest = 0;
  std::vector<Frame> leaves;
  run(root, 0, split, seen, deepest, &leaves);
  if (split == cap) {
    // Leaves at the cap still count.
    for (const Frame& f : leaves) {
      deepest = std::max(deepest, f.depth);
      if (inside(f.node)) seen.insert(key(f.node));
    }
    return {std::move(seen), deepest};
  }
  std::vector<KeySet> parts(leaves.size());
  std::vector<std::size_t> depths(leaves.size(), 0);
  parallel_for(leaves.size(), opt.threads, [&](std::size_t i) {
    run(leaves[i].node, leaves[i].depth, cap, parts[i], depths[i], nullptr);
  });
  for (std::size_t i = 0; i < parts.size(); ++i) {
    seen.merge(parts[i]);
    deepest = std::max(deepest, depths[i]);
  }
  return {std::move(seen), deepest};
}

void check_options(const MertensOptions& opt) {
  if (!opt.prune && !opt.max_depth) {
    throw std::invalid_argument("mertens_count: an unpruned walk needs a depth cap");
  }
}

}  // namespace

MertensReport mertens_count(const SigmaMap& s, Ratio r, const MertensOptions& opt) {
  check_options(opt);
  if (r.p > r.q) throw std::invalid_argument("mertens_count: r must lie in (0, 1]");
  if (!opt.exact) {
    MertensReport rep = mertens_count(s, r.value(), opt);
    rep.r_text = r.str();
    return rep;
  }
  if (s.family() != SigmaMap::Family::kIdentity) {
    throw std::invalid_argument("mertens_count: exact mode requires sigma = id");
  }
  // Coordinates are integer multiples (X, Y) of r; (X, Y) r <= 1 iff X p <= q.
  using Node = std::pair<std::int64_t, std::int64_t>;
  const std::int64_t bound = r.q / r.p;
  auto step = [](Node n, Letter l) {
    return l == Letter::kH ? Node{n.first + n.second, n.second} : Node{n.first, n.second + n.first};
  };
  auto inside = [&](Node n) { return n.first <= bound && n.second <= bound; };
  auto beyond = [&](Node n) { return n.first > bound || n.second > bound; };
  auto key = [](Node n) { return n; };
  auto [seen, deepest] = walk_monoid(Node{1, 1}, step, inside, beyond, key, opt);

  MertensReport rep;
  rep.sigma = s.descriptor();
  rep.r_text = r.str();
  rep.r = r.value();
  rep.exact = true;
  rep.count = seen.size();
  rep.normalized = rep.r * rep.r * static_cast<double>(rep.count);
  rep.max_depth_reached = deepest;
  return rep;
}

MertensReport mertens_count(const SigmaMap& s, double r, const MertensOptions& opt) {
  check_options(opt);
  if (!(r > 0.0) || r > 1.0) throw std::invalid_argument("mertens_count: r must lie in (0, 1]");
  if (opt.exact) throw std::invalid_argument("mertens_count: exact mode needs a rational r");
  // h and v never decrease a coordinate on the open first quadrant.
  auto step = [&](Point2 p, Letter l) { return apply(s, l, p); };
  auto inside = [](Point2 p) { return p.x <= 1.0 && p.y <= 1.0; };
  auto beyond = [](Point2 p) { return p.x > 1.0 || p.y > 1.0; };
  auto key = [](Point2 p) {
    return std::pair<std::int64_t, std::int64_t>{std::llround(p.x / kSnapGrid),
                                                 std::llround(p.y / kSnapGrid)};
  };
  auto [seen, deepest] = walk_monoid(Point2{r, r}, step, inside, beyond, key, opt);

  MertensReport rep;
  rep.sigma = s.descriptor();
  rep.r = r;
  rep.r_text = format_real(r);
  rep.count = seen.size();
  rep.normalized = r * r * static_cast<double>(rep.count);
  rep.max_depth_reached = deepest;
  return rep;
}

std::vector<double> uniform_parameters(std::size_t count) {
  std::vector<double> ts(count);
  for (std::size_t k = 0; k < count; ++k) {
    ts[k] = static_cast<double>(k + 1) / static_cast<double>(count);
  }
  return ts;
}

namespace {

struct Raster {
  const Grid2& grid;
  std::vector<bool> hits;
  double cw, ch;

  explicit Raster(const Grid2& g)
      : grid(g),
        hits(g.n * g.n, false),
        cw((g.box.x1 - g.box.x0) / static_cast<double>(g.n)),
        ch((g.box.y1 - g.box.y0) / static_cast<double>(g.n)) {}

  void mark(Point2 p) {
    if (!grid.box.contains(p)) return;
    const auto col = std::min(grid.n - 1, static_cast<std::size_t>((p.x - grid.box.x0) / cw));
    const auto row = std::min(grid.n - 1, static_cast<std::size_t>((p.y - grid.box.y0) / ch));
    hits[row * grid.n + col] = true;
  }

  void segment(Point2 a, Point2 b) {
    const double len = std::hypot((b.x - a.x) / cw, (b.y - a.y) / ch);
    const auto steps = static_cast<std::size_t>(std::ceil(len * 4.0)) + 1;
    for (std::size_t i = 0; i <= steps; ++i) {
      const double u = static_cast<double>(i) / static_cast<double>(steps);
      mark({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)});
    }
  }
};

void summarize(CoverageReport& rep, const std::vector<bool>& hits,
               const std::vector<std::vector<double>>& centers) {
  rep.cells = hits.size();
  rep.hit = static_cast<std::size_t>(std::count(hits.begin(), hits.end(), true));
  rep.fraction = rep.cells == 0 ? 0.0 : static_cast<double>(rep.hit) / static_cast<double>(rep.cells);
  rep.hits = hits;
  rep.max_empty_distance = 0.0;
  if (rep.hit == 0) {
    rep.max_empty_distance = std::numeric_limits<double>::infinity();
    return;
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i]) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < hits.size(); ++j) {
      if (!hits[j]) continue;
      double d2 = 0.0;
      for (std::size_t c = 0; c < centers[i].size(); ++c) {
        const double d = centers[i][c] - centers[j][c];
        d2 += d * d;
      }
      best = std::min(best, d2);
    }
    rep.max_empty_distance = std::max(rep.max_empty_distance, std::sqrt(best));
  }
}

}  // namespace

CoverageReport density_coverage(const SigmaMap& s, std::size_t depth, const Grid2& grid,
                                std::size_t parameters, unsigned threads) {
  const Box& b = grid.box;
  if (grid.n == 0 || !(b.x1 > b.x0) || !(b.y1 > b.y0) || b.x0 < 0.0 || b.y0 < 0.0) {
    throw std::invalid_argument("density_coverage: need n >= 1 and a box in the first quadrant");
  }
  if (parameters == 0) throw std::invalid_argument("density_coverage: no parameters");
  const std::vector<double> ts = uniform_parameters(parameters);
  const std::vector<LineSample> samples = rational_lines(s, depth, ts, b, AxisSide::kOx, threads);

  Raster raster(grid);
  // Samples are sorted by (word, t): neighbours on the same line are adjacent.
  for (std::size_t i = 0; i < samples.size(); ++i) {
    raster.mark(samples[i].point);
    if (i + 1 < samples.size() && samples[i + 1].word == samples[i].word) {
      const double dt = samples[i + 1].t - samples[i].t;
      if (dt <= 1.5 / static_cast<double>(parameters)) raster.segment(samples[i].point, samples[i + 1].point);
    }
  }

  std::vector<std::vector<double>> centers(grid.n * grid.n);
  for (std::size_t row = 0; row < grid.n; ++row) {
    for (std::size_t col = 0; col < grid.n; ++col) {
      centers[row * grid.n + col] = {b.x0 + (static_cast<double>(col) + 0.5) * raster.cw,
                                     b.y0 + (static_cast<double>(row) + 0.5) * raster.ch};
    }
  }
  CoverageReport rep;
  rep.samples = samples.size();
  summarize(rep, raster.hits, centers);
  return rep;
}

namespace {

double min_gap(const std::vector<Point2>& pts) {
  // pts sorted by x; sweep with an x-window.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size() && pts[j].x - pts[i].x < best; ++j) {
      best = std::min(best, std::hypot(pts[j].x - pts[i].x, pts[j].y - pts[i].y));
    }
  }
  return best;
}

}  // namespace

DiscretenessLevel backward_orbit(const Box& box, std::size_t depth) {
  const SigmaMap s = SigmaMap::power(2.0);
  const Point2 base{1.0, 0.0};
  KeySet seen;
  std::vector<Point2> pts;
  struct Frame {
    Point2 p;
    std::size_t len;
  };
  std::vector<Frame> stack{{base, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (box.contains(f.p)) {
      const Point2 back = euclid_iterate(s, f.p, f.len);
      const bool verified = std::abs(back.x - base.x) <= 1e-9 && std::abs(back.y - base.y) <= 1e-9;
      const std::pair<std::int64_t, std::int64_t> k{std::llround(f.p.x / kSnapGrid),
                                                    std::llround(f.p.y / kSnapGrid)};
      if (verified && seen.insert(k).second) pts.push_back(f.p);
    }
    if (f.len == depth) continue;
    for (Letter l : {Letter::kH, Letter::kV}) {
      const Point2 q = apply(s, l, f.p);
      if (!beyond_box(box, q)) stack.push_back({q, f.len + 1});
    }
  }
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  DiscretenessLevel out;
  out.depth = depth;
  out.count = pts.size();
  if (pts.size() >= 2) out.min_gap = min_gap(pts);
  out.points = std::move(pts);
  return out;
}

DiscretenessReport discreteness_probe(const Box& box, std::size_t depth) {
  DiscretenessReport rep;
  rep.box = box;
  rep.level = backward_orbit(box, depth);
  rep.previous = backward_orbit(box, depth >= 2 ? depth - 2 : 0);
  return rep;
}

CoverageReport orbit_coverage_nd(const SigmaMap& s, const PointN& start, std::size_t depth,
                                 const GridN& grid, std::size_t frontier_cap) {
  const std::size_t dim = start.dim();
  if (dim != 3 && dim != 4) throw std::invalid_argument("orbit_coverage_nd: dimension must be 3 or 4");
  if (grid.n == 0 || !(grid.hi > grid.lo)) throw std::invalid_argument("orbit_coverage_nd: bad grid");
  bool opposite = false;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) opposite = opposite || start[i] * start[j] < 0.0;
  }
  if (!opposite) {
    throw std::invalid_argument("orbit_coverage_nd: start needs two coordinates of opposite signs");
  }

  const double width = grid.hi - grid.lo;
  const double outer_lo = grid.lo - width, outer_hi = grid.hi + width;
  const double cell = width / static_cast<double>(grid.n);
  std::size_t cells = 1;
  for (std::size_t i = 0; i < dim; ++i) cells *= grid.n;
  std::vector<bool> hits(cells, false);

  auto mark = [&](const PointN& p) {
    std::size_t idx = 0;
    for (std::size_t i = dim; i-- > 0;) {
      if (p[i] < grid.lo || p[i] > grid.hi) return;
      const auto c = std::min(grid.n - 1, static_cast<std::size_t>((p[i] - grid.lo) / cell));
      idx = idx * grid.n + c;
    }
    hits[idx] = true;
  };
  auto in_outer = [&](const PointN& p) {
    return std::all_of(p.coords().begin(), p.coords().end(),
                       [&](double c) { return c >= outer_lo && c <= outer_hi; });
  };

  CoverageReport rep;
  std::vector<PointN> frontier{start};
  mark(start);
  std::size_t samples = 1;
  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<PointN> next;
    for (const PointN& p : frontier) {
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
          for (const PointN& q : {h_ij(s, i, j, p), v_ij(s, i, j, p)}) {
            if (!in_outer(q)) continue;
            if (next.size() >= frontier_cap) {
              rep.truncated = true;
              continue;
            }
            mark(q);
            ++samples;
            next.push_back(q);
          }
        }
      }
    }
    frontier = std::move(next);
  }

  std::vector<std::vector<double>> centers(cells);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    std::size_t rest = idx;
    centers[idx].resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      centers[idx][i] = grid.lo + (static_cast<double>(rest % grid.n) + 0.5) * cell;
      rest /= grid.n;
    }
  }
  rep.samples = samples;
  summarize(rep, hits, centers);
  return rep;
}

}  // namespace transvecta
