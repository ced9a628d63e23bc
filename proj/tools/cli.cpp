#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "json_out.hpp"
#include "transvecta/cfrac.hpp"
#include "transvecta/errors.hpp"
#include "transvecta/experiments.hpp"
#include "transvecta/parallel.hpp"
#include "transvecta/radical_tower.hpp"
#include "transvecta/regions.hpp"
#include "transvecta/sigma_lines.hpp"
#include "transvecta/sigma_map.hpp"
#include "transvecta/text.hpp"
#include "transvecta/torus.hpp"
#include "transvecta/words.hpp"

namespace transvecta::cli {
namespace {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<double> parse_list(std::string_view text, std::size_t expected, const char* what) {
  std::vector<double> out;
  for (std::string_view part : split(text, ',')) out.push_back(parse_real(trim(part)));
  if (expected != 0 && out.size() != expected) {
    throw ValidationError(std::string(what) + " expects " + std::to_string(expected) +
                          " comma-separated numbers");
  }
  return out;
}

Box parse_box(std::string_view text) {
  const auto v = parse_list(text, 4, "--box");
  if (!(v[2] > v[0]) || !(v[3] > v[1])) throw ValidationError("--box needs x0 < x1 and y0 < y1");
  return {v[0], v[1], v[2], v[3]};
}

// "t0:t1:steps" -> t0 + k (t1 - t0) / steps for k = 0..steps.
std::vector<double> parse_parameter_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ValidationError("--grid expects t0:t1:steps");
  const double t0 = parse_real(trim(parts[0]));
  const double t1 = parse_real(trim(parts[1]));
  const long steps = std::stol(trim(parts[2]));
  if (steps < 1 || steps > 1000000) throw ValidationError("--grid steps must lie in [1, 1e6]");
  if (!(t1 >= t0)) throw ValidationError("--grid needs t0 <= t1");
  std::vector<double> ts;
  for (long k = 0; k <= steps; ++k) ts.push_back(t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(steps));
  return ts;
}

Point2 parse_point(std::string_view text) {
  const auto v = parse_list(text, 2, "--point");
  return {v[0], v[1]};
}

// Appends `key = value` lines from a config file to args unless the flag was
// given on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ValidationError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;
  std::ifstream in(*path);
  if (!in) throw ValidationError("cannot read config file " + *path);
  auto given = [&](const std::string& key) {
    return std::any_of(rest.begin(), rest.end(), [&](const std::string& a) {
      return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(*path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ValidationError(*path + ":" + std::to_string(lineno) + ": empty key");
    if (given(key)) continue;
    if (value == "true") {
      extra.push_back("--" + key);
    } else if (value != "false") {
      extra.push_back("--" + key);
      extra.push_back(value);
    }
  }
  rest.insert(rest.end(), extra.begin(), extra.end());
  return rest;
}

std::string letter_text(std::optional<Letter> l) {
  return l ? std::string(1, to_char(*l)) : std::string();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string cell(double d) {
  if (!std::isfinite(d)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

void write_table(std::ostream& os, const Table& t) {
  auto join = [&](const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ',';
      os << v[i];
    }
    os << '\n';
  };
  join(t.header);
  for (const auto& r : t.rows) join(r);
}

// Flat one-row table of the scalar members of an object.
Table scalar_table(const Json& j) {
  Table t;
  std::vector<std::string> row;
  for (const auto& [key, value] : j.items()) {
    if (value.is_structured()) continue;
    t.header.push_back(key);
    if (value.is_number_float()) {
      row.push_back(cell(value.get<double>()));
    } else if (value.is_string()) {
      row.push_back(value.get<std::string>());
    } else if (value.is_null()) {
      row.emplace_back();
    } else {
      row.push_back(value.dump());
    }
  }
  t.rows.push_back(std::move(row));
  return t;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

struct Options {
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  std::string sigma = "id";
  double alpha = 2.0;
  std::string point = "3.141592653589793,1";
  std::string r = "1/10";
  bool exact = false;
  std::size_t depth = 0;
  std::size_t grid = 20;
  std::string box;
  std::size_t steps = 10;
  std::size_t digits = 4;
  std::string algorithm = "slow";
  std::string line_grid = "0.015625:1:64";
  std::size_t nd_grid = GridN{}.n;
  bool csv = false;
  std::string side = "ox";
  std::size_t params = kCoverageParameters;
  double slope = 0.0;
  std::string word = ":hv";
  double tol = 1e-12;
  std::string sigma1 = "const:0";
  std::string sigma2 = "const:0.41421356237309503";
  std::string phi1 = "cos:1";
  std::string phi2 = "cos:1";
  std::size_t n = 100000;
  std::size_t starts = 16;
  std::size_t points = 1000000;
  std::size_t bins = 10;
  std::string start = "-1,3.141592653589793,1";
  double lo = -1.0;
  double hi = 1.0;
  std::size_t frontier = kFrontierCap;
};

class Emitter {
 public:
  Emitter(const Options& o, std::ostream& os) : opt_(o), os_(os) {}
  bool csv() const { return opt_.format == "csv"; }

  void object(const Json& j, const std::optional<Table>& table = std::nullopt) {
    if (csv()) {
      write_table(os_, table ? *table : scalar_table(j));
    } else {
      os_ << dump(j) << '\n';
    }
  }

  // JSON Lines, or CSV whose header is the union of the record keys.
  void lines(const std::vector<Json>& records) {
    if (!csv()) {
      for (const Json& r : records) os_ << dump(r) << '\n';
      return;
    }
    Table t;
    std::vector<const Json*> by_size;
    for (const Json& r : records) by_size.push_back(&r);
    std::stable_sort(by_size.begin(), by_size.end(),
                     [](const Json* a, const Json* b) { return a->size() > b->size(); });
    for (const Json* r : by_size) {
      for (const auto& [key, value] : r->items()) {
        if (std::find(t.header.begin(), t.header.end(), key) == t.header.end()) t.header.push_back(key);
      }
    }
    for (const Json& r : records) {
      const Table one = scalar_table(r);
      std::vector<std::string> row(t.header.size());
      for (std::size_t i = 0; i < one.header.size(); ++i) {
        const auto at = std::find(t.header.begin(), t.header.end(), one.header[i]) - t.header.begin();
        row[static_cast<std::size_t>(at)] = one.rows.front()[i];
      }
      t.rows.push_back(std::move(row));
    }
    write_table(os_, t);
  }

 private:
  const Options& opt_;
  std::ostream& os_;
};

// ---------------------------------------------------------------------------
// Subcommands

void cmd_euclid(const Options& o, Emitter& em) {
  const SigmaMap s = SigmaMap::parse(o.sigma);
  Point2 p = parse_point(o.point);
  if (p == Point2{}) throw ValidationError("--point must not be the origin");
  std::vector<Json> records;
  records.push_back(Json{{"step", 0}, {"x", p.x}, {"y", p.y}, {"norm", std::abs(p.x) + std::abs(p.y)}});
  if (o.algorithm == "slow") {
    for (std::size_t i = 1; i <= o.steps; ++i) {
      const EuclidStep st = euclid_step(s, p);
      p = st.result;
      records.push_back(Json{{"step", i},
                             {"label", std::string(to_string(st.label))},
                             {"letter", letter_text(st.letter)},
                             {"x", p.x},
                             {"y", p.y},
                             {"norm", std::abs(p.x) + std::abs(p.y)}});
      if (!st.letter) break;
    }
  } else if (o.algorithm == "accel") {
    for (std::size_t i = 1; i <= o.steps; ++i) {
      AccelStep st;
      try {
        st = accel_step(s, p);
      } catch (const DiagonalOrAxis& e) {
        records.push_back(Json{{"step", i}, {"terminated", true}, {"reason", e.what()}});
        break;
      }
      p = st.result;
      records.push_back(Json{{"step", i},
                             {"label", std::string(to_string(st.source))},
                             {"letter", letter_text(st.letter)},
                             {"digit", st.digit},
                             {"x", p.x},
                             {"y", p.y},
                             {"norm", std::abs(p.x) + std::abs(p.y)}});
    }
  } else {
    throw ValidationError("--algorithm must be slow or accel");
  }
  em.lines(records);
}

void cmd_lines(const Options& o, Emitter& em) {
  const SigmaMap s = SigmaMap::parse(o.sigma);
  const Box box = o.box.empty() ? Box{0.0, 0.0, 1.0, 1.0} : parse_box(o.box);
  AxisSide side;
  if (o.side == "ox") {
    side = AxisSide::kOx;
  } else if (o.side == "oy") {
    side = AxisSide::kOy;
  } else {
    throw ValidationError("--side must be ox or oy");
  }
  const auto ts = parse_parameter_grid(o.line_grid);
  std::vector<Json> records;
  for (const LineSample& ls : rational_lines(s, o.depth, ts, box, side, o.threads)) {
    records.push_back(Json{{"word", ls.word.str()}, {"t", ls.t}, {"x", ls.point.x}, {"y", ls.point.y}});
  }
  em.lines(records);
}

void cmd_cfrac(const Options& o, Emitter& em) {
  if (!(o.slope > 1.0)) throw ValidationError("--slope must exceed 1");
  const SigmaMap s = SigmaMap::power(o.alpha);
  const Point2 p{o.slope * s.inverse(1.0), 1.0};
  const Expansion e = expand(o.alpha, p, o.digits);
  Json pairs = Json::array();
  Table t{{"index", "a", "b"}, {}};
  for (std::size_t i = 0; i < e.pairs.size(); ++i) {
    pairs.push_back(Json::array({e.pairs[i].a, e.pairs[i].b}));
    t.rows.push_back({std::to_string(i + 1), std::to_string(e.pairs[i].a), std::to_string(e.pairs[i].b)});
  }
  Json j{{"alpha", o.alpha},
         {"slope", o.slope},
         {"pairs", pairs},
         {"residual_slope", e.residual.r},
         {"terminated", e.terminated}};
  em.object(j, t);
}

void cmd_golden(const Options& o, Emitter& em) {
  const double r = golden_slope(o.alpha);
  Json j{{"alpha", o.alpha}, {"r", r}, {"residual", std::abs(s_ab(o.alpha, 1, 1, r) - r)}};
  if (o.alpha == 2.0) {
    j["quartic_residual"] = std::abs(r * r * r * r - 2 * r * r * r + r * r - 2 * r + 1);
  }
  em.object(j);
}

void cmd_tower_verify(const Options& o, Emitter& em, std::ostream& err, int& code) {
  if (o.depth > kTowerMaxDepth) {
    throw ValidationError("--depth is capped at " + std::to_string(kTowerMaxDepth));
  }
  Json steps = Json::array();
  Table t{{"n", "k", "j", "y_approx", "x_approx", "bits"}, {}};
  bool ok = true;
  std::string failed;
  try {
    const OrbitReport rep = orbit_verify(-1, 1, 2, o.depth);
    for (const OrbitState& st : rep.states) {
      steps.push_back(Json{{"n", st.n},
                           {"k", st.k.get_str()},
                           {"j", st.j.get_str()},
                           {"y_approx", st.y_approx},
                           {"x_approx", st.x_approx},
                           {"bits", st.bits}});
      t.rows.push_back({std::to_string(st.n), st.k.get_str(), st.j.get_str(), cell(st.y_approx),
                        cell(st.x_approx), std::to_string(st.bits)});
    }
  } catch (const InvariantViolation& e) {
    ok = false;
    failed = e.clause();
    err << "invariant violation: " << e.what() << '\n';
    code = kExitInvariant;
  }
  Json j{{"start", {{"x", "-1 + sqrt(2)"}, {"y", "2"}}},
         {"depth", o.depth},
         {"steps", steps},
         {"all_invariants_hold", ok}};
  if (!ok) j["failed_clause"] = failed;
  em.object(j, t);
}

void cmd_tower_identity(Emitter& em, int& code) {
  const IdentityCheck c = m0_identity_check();
  Json trace = Json::array();
  for (const auto& [x, y] : c.trace) trace.push_back(Json::array({c.context.str(x), c.context.str(y)}));
  Json j{{"word", "h v^2 h^-1 v^4"},
         {"start", Json::array({"1", "0"})},
         {"holds", c.holds},
         {"x", c.context.str(c.x)},
         {"y", c.context.str(c.y)},
         {"trace", trace}};
  if (!c.holds) code = kExitInvariant;
  em.object(j);
}

void cmd_lines_measure(const Options& o, Emitter& em) {
  const WordSpec w = WordSpec::parse(o.word);
  if (!(o.tol > 0.0)) throw ValidationError("--tol must be positive");
  const LineParam a = a_of_word(o.alpha, w, o.tol);
  Json j{{"alpha", o.alpha}, {"word", w.str()}};
  j["a"] = a.a.infinite ? Json(nullptr) : Json(a.a.value);
  j["a_infinite"] = a.a.infinite;
  j["k"] = a.a.infinite ? 1.0 : k_of_word(o.alpha, w, o.tol);
  j["letters_used"] = a.letters_used;
  j["fixed_point"] = optional_number(a.fixed_point);
  em.object(j);
}

void cmd_mertens(const Options& o, Emitter& em) {
  const SigmaMap s = SigmaMap::parse(o.sigma);
  MertensOptions mo;
  mo.exact = o.exact;
  mo.threads = o.threads;
  const MertensReport rep = mertens_count(s, Ratio::parse(o.r), mo);
  Json j{{"sigma", rep.sigma},
         {"r", rep.r_text},
         {"exact", rep.exact},
         {"count", rep.count},
         {"normalized", rep.normalized},
         {"max_depth", rep.max_depth_reached},
         {"counting", "distinct points, closed unit square"}};
  em.object(j);
}

void cmd_coverage(const Options& o, Emitter& em) {
  const SigmaMap s = SigmaMap::parse(o.sigma);
  Grid2 g;
  g.n = o.grid;
  if (!o.box.empty()) g.box = parse_box(o.box);
  const CoverageReport rep = density_coverage(s, o.depth, g, o.params, o.threads);
  Table t{{"row", "col", "hit"}, {}};
  for (std::size_t i = 0; i < rep.hits.size(); ++i) {
    t.rows.push_back({std::to_string(i / g.n), std::to_string(i % g.n), rep.hits[i] ? "1" : "0"});
  }
  Json j{{"sigma", s.descriptor()},
         {"depth", o.depth},
         {"grid", g.n},
         {"box", Json::array({g.box.x0, g.box.y0, g.box.x1, g.box.y1})},
         {"samples", rep.samples},
         {"cells", rep.cells},
         {"hit", rep.hit},
         {"fraction", rep.fraction},
         {"max_empty_distance", rep.max_empty_distance}};
  em.object(j, t);
}

Json level_json(const DiscretenessLevel& l) {
  Json pts = Json::array();
  for (const Point2& p : l.points) pts.push_back(Json::array({p.x, p.y}));
  return Json{{"depth", l.depth}, {"count", l.count}, {"min_gap", optional_number(l.min_gap)}, {"points", pts}};
}

void cmd_discrete(const Options& o, Emitter& em) {
  const Box box = o.box.empty() ? Box{0.0, 0.0, 2.0, 2.0} : parse_box(o.box);
  const DiscretenessReport rep = discreteness_probe(box, o.depth);
  Table t{{"x", "y"}, {}};
  for (const Point2& p : rep.level.points) t.rows.push_back({cell(p.x), cell(p.y)});
  Json j{{"sigma", "pow:2"},
         {"box", Json::array({box.x0, box.y0, box.x1, box.y1})},
         {"level", level_json(rep.level)},
         {"previous", level_json(rep.previous)},
         {"stable", rep.level.count == rep.previous.count}};
  em.object(j, t);
}

void cmd_torus(const Options& o, Emitter& em) {
  const TorusMaps m{CircleMap::parse(o.sigma1), CircleMap::parse(o.sigma2)};
  const TrigPoly phi1 = TrigPoly::parse(o.phi1);
  const TrigPoly phi2 = TrigPoly::parse(o.phi2);
  const BirkhoffReport b = birkhoff_product_test(m, phi1, phi2, o.n, o.starts, o.seed, o.threads);
  const HistogramReport hh = lebesgue_histogram(m, TorusLetter::kH, o.points, o.bins, o.seed);
  const HistogramReport hv = lebesgue_histogram(m, TorusLetter::kV, o.points, o.bins, o.seed);
  Json j{{"sigma1", m.sigma1.descriptor()},
         {"sigma2", m.sigma2.descriptor()},
         {"seed", o.seed},
         {"birkhoff",
          {{"phi1", o.phi1},
           {"phi2", o.phi2},
           {"n", b.iterations},
           {"starts", b.starts},
           {"max_deviation", b.max_deviation},
           {"rational_warnings", b.rational_warnings}}},
         {"histogram_h", {{"points", hh.points}, {"bins", hh.bins}, {"max_abs_z", hh.max_abs_z}}},
         {"histogram_v", {{"points", hv.points}, {"bins", hv.bins}, {"max_abs_z", hv.max_abs_z}}}};
  Table t{{"start", "deviation"}, {}};
  for (std::size_t i = 0; i < b.deviations.size(); ++i) {
    t.rows.push_back({std::to_string(i), cell(b.deviations[i])});
  }
  em.object(j, t);
}

void cmd_orbit_nd(const Options& o, Emitter& em) {
  const SigmaMap s = SigmaMap::parse(o.sigma);
  const PointN start(parse_list(o.start, 0, "--start"));
  GridN g;
  g.n = o.nd_grid;
  g.lo = o.lo;
  g.hi = o.hi;
  const CoverageReport rep = orbit_coverage_nd(s, start, o.depth, g, o.frontier);
  Json j{{"sigma", s.descriptor()},
         {"dimension", start.dim()},
         {"depth", o.depth},
         {"grid", g.n},
         {"range", Json::array({g.lo, g.hi})},
         {"samples", rep.samples},
         {"cells", rep.cells},
         {"hit", rep.hit},
         {"fraction", rep.fraction},
         {"max_empty_distance", rep.max_empty_distance},
         {"truncated", rep.truncated}};
  em.object(j);
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Generalized transvections: Euclidean algorithms, continued fractions and experiments",
               "transvecta"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto common = [&](CLI::App* sc) {
    sc->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sc->add_option("--out", o.out, "Write records to this file instead of standard output");
    sc->add_option("--seed", o.seed, "Master seed");
    sc->add_option("--threads", o.threads, "Worker threads (0: TRANSVECTA_THREADS or all cores)");
    sc->add_flag("--csv", o.csv, "Same as --format csv");
  };
  auto sigma_opt = [&](CLI::App* sc) {
    sc->add_option("--sigma", o.sigma, "sigma descriptor: id, pow:<a>, lin:<a>:<b>, sine:<c>");
  };

  auto* euclid = app.add_subcommand("euclid", "Iterate the subtractive or accelerated algorithm");
  common(euclid);
  sigma_opt(euclid);
  euclid->add_option("--point", o.point, "Start point x,y");
  euclid->add_option("--steps", o.steps, "Number of steps");
  euclid->add_option("--algorithm", o.algorithm, "slow or accel");

  auto* lines = app.add_subcommand("lines", "Sample rational lines w(Ox) or w(Oy)");
  common(lines);
  sigma_opt(lines);
  lines->add_option("--depth", o.depth, "Maximal word length")->check(CLI::Range(0, 20));
  lines->add_option("--box", o.box, "x0,y0,x1,y1 (default 0,0,1,1)");
  lines->add_option("--side", o.side, "ox or oy");
  lines->add_option("--grid", o.line_grid, "t0:t1:steps, samples t0 + k (t1 - t0) / steps, k = 0..steps");

  auto* cfrac = app.add_subcommand("cfrac", "sigma-continued-fraction digits of a slope");
  common(cfrac);
  cfrac->add_option("--alpha", o.alpha, "Exponent of the power map");
  cfrac->add_option("--slope", o.slope, "Slope r > 1")->required();
  cfrac->add_option("--digits", o.digits, "Number of digit pairs");

  auto* golden = app.add_subcommand("golden", "Golden sigma-slope");
  common(golden);
  golden->add_option("--alpha", o.alpha, "Exponent of the power map");

  auto* tower = app.add_subcommand("tower", "Exact radical-tower certification for sigma = x^2");
  tower->require_subcommand(1);
  auto* verify = tower->add_subcommand("verify-m0", "Certify the accelerated orbit of (-1+sqrt 2, 2)");
  common(verify);
  verify->add_option("--depth", o.depth, "Number of certified steps");
  auto* identity = tower->add_subcommand("identity-check", "Evaluate h v^2 h^-1 v^4 (1,0) exactly");
  common(identity);

  auto* lm = app.add_subcommand("lines-measure", "Curve parameter a(w) and scale k(w) of a word");
  common(lm);
  lm->add_option("--alpha", o.alpha, "Exponent of the power map");
  lm->add_option("--word", o.word, "Eventually periodic word pre:per over h, v");
  lm->add_option("--tol", o.tol, "Nested-interval tolerance");

  auto* mertens = app.add_subcommand("mertens", "Count monoid images of (r, r) in the unit square");
  common(mertens);
  sigma_opt(mertens);
  mertens->add_option("--r", o.r, "r as p/q");
  mertens->add_flag("--exact", o.exact, "Exact rational arithmetic (sigma = id)");

  auto* coverage = app.add_subcommand("coverage", "Grid coverage by rational lines");
  common(coverage);
  sigma_opt(coverage);
  coverage->add_option("--depth", o.depth, "Maximal word length")->check(CLI::Range(0, 20));
  coverage->add_option("--grid", o.grid, "Cells per axis");
  coverage->add_option("--box", o.box, "x0,y0,x1,y1 (default 0.05,0.05,1,1)");
  coverage->add_option("--params", o.params, "Parameters per line");

  auto* discrete = app.add_subcommand("discrete", "Backward orbit of (1,0) for sigma = x^2");
  common(discrete);
  discrete->add_option("--depth", o.depth, "Maximal word length")->check(CLI::Range(0, 24));
  discrete->add_option("--box", o.box, "x0,y0,x1,y1 (default 0,0,2,2)");

  auto* torus = app.add_subcommand("torus", "Birkhoff and Lebesgue-invariance tests on the torus");
  common(torus);
  torus->add_option("--sigma1", o.sigma1, "Circle map for v: const:<c>, lin:<a>, sine:<c>");
  torus->add_option("--sigma2", o.sigma2, "Circle map for h");
  torus->add_option("--phi1", o.phi1, "one, cos:<k> or sin:<k>");
  torus->add_option("--phi2", o.phi2, "one, cos:<k> or sin:<k>");
  torus->add_option("--n", o.n, "Orbit length")->check(CLI::PositiveNumber);
  torus->add_option("--starts", o.starts, "Random starts")->check(CLI::PositiveNumber);
  torus->add_option("--points", o.points, "Histogram sample size")->check(CLI::PositiveNumber);
  torus->add_option("--bins", o.bins, "Histogram bins per axis")->check(CLI::PositiveNumber);

  auto* nd = app.add_subcommand("orbit-nd", "Grid coverage of an n-dimensional monoid orbit");
  common(nd);
  sigma_opt(nd);
  nd->add_option("--start", o.start, "Start point, 3 or 4 comma-separated coordinates");
  nd->add_option("--depth", o.depth, "Breadth-first levels");
  nd->add_option("--grid", o.nd_grid, "Cells per axis");
  nd->add_option("--lo", o.lo, "Lower grid bound");
  nd->add_option("--hi", o.hi, "Upper grid bound");
  nd->add_option("--frontier", o.frontier, "Frontier cap per level");

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      err << "error: cannot open " << o.out << " for writing\n";
      return kExitValidation;
    }
  }
  std::ostream& os = o.out.empty() ? out : file;
  if (o.csv) o.format = "csv";
  if (lines->parsed() && lines->count("--format") == 0 && !o.csv) o.format = "csv";
  if (o.threads == 0) o.threads = default_thread_count();

  std::ostringstream buffer;
  Emitter em(o, buffer);
  int code = kExitOk;
  try {
    if (euclid->parsed()) cmd_euclid(o, em);
    else if (lines->parsed()) cmd_lines(o, em);
    else if (cfrac->parsed()) cmd_cfrac(o, em);
    else if (golden->parsed()) cmd_golden(o, em);
    else if (verify->parsed()) cmd_tower_verify(o, em, err, code);
    else if (identity->parsed()) cmd_tower_identity(em, code);
    else if (lm->parsed()) cmd_lines_measure(o, em);
    else if (mertens->parsed()) cmd_mertens(o, em);
    else if (coverage->parsed()) cmd_coverage(o, em);
    else if (discrete->parsed()) cmd_discrete(o, em);
    else if (torus->parsed()) cmd_torus(o, em);
    else if (nd->parsed()) cmd_orbit_nd(o, em);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  os << buffer.str();
  return code;
}

}  // namespace transvecta::cli
