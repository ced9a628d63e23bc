#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using transvecta::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("transvecta_test_" + name);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golden") {
  const Result r = call({"golden", "--alpha", "2"});
  REQUIRE(r.code == 0);
  const auto j = parse(r.out);
  CHECK(std::abs(j["r"].get<double>() - 1.883203506) <= 1e-8);
  CHECK(j["quartic_residual"].get<double>() <= 1e-9);
  CHECK_FALSE(parse(call({"golden", "--alpha", "1"}).out).contains("quartic_residual"));
}

TEST_CASE("cfrac") {
  const Result r = call({"cfrac", "--alpha", "1", "--slope", "3.141592653589793", "--digits", "4"});
  REQUIRE(r.code == 0);
  const auto j = parse(r.out);
  CHECK(j["pairs"] == nlohmann::json::parse("[[3,7],[15,1],[292,1],[1,1]]"));
  CHECK(j.contains("residual_slope"));
}

TEST_CASE("tower") {
  const Result v = call({"tower", "verify-m0", "--depth", "4"});
  REQUIRE(v.code == 0);
  const auto j = parse(v.out);
  CHECK(j["all_invariants_hold"] == true);
  CHECK(j["steps"].size() == 5);
  for (const char* key : {"n", "k", "j", "y_approx", "x_approx", "bits"}) CHECK(j["steps"][1].contains(key));
  const Result id = call({"tower", "identity-check"});
  REQUIRE(id.code == 0);
  const auto k = parse(id.out);
  CHECK(k["holds"] == true);
  CHECK(k["x"] == "-1 + sqrt(2)");
  CHECK(k["y"] == "2");
  CHECK(call({"tower", "verify-m0", "--depth", "99"}).code == 2);
}

TEST_CASE("mertens") {
  const Result r = call({"mertens", "--sigma", "id", "--r", "1/10", "--exact"});
  REQUIRE(r.code == 0);
  const auto j = parse(r.out);
  CHECK(j["count"] == 63);
  CHECK(j["normalized"].get<double>() == doctest::Approx(0.63));
  CHECK(call({"mertens", "--sigma", "pow:2", "--r", "1/10", "--exact"}).code == 2);
}

TEST_CASE("lines-measure") {
  const Result r = call({"lines-measure", "--alpha", "1", "--word", ":hv", "--tol", "1e-12"});
  REQUIRE(r.code == 0);
  const auto j = parse(r.out);
  CHECK(j["a"].get<double>() == doctest::Approx(0.618033988749895));
  CHECK(j["k"].get<double>() == doctest::Approx(0.381966011250105));
  CHECK(j["letters_used"].get<int>() > 0);
}

TEST_CASE("euclid streams JSON lines and CSV") {
  const Result r = call({"euclid", "--sigma", "id", "--point", "5,3", "--steps", "3"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto j = parse(line);
    CHECK(j["step"] == n);
    ++n;
  }
  CHECK(n == 4);
  const Result c = call({"euclid", "--point", "5,3", "--steps", "1", "--format", "csv"});
  CHECK(c.out.rfind("step,label,letter,x,y,norm\n", 0) == 0);
  const Result a = call({"euclid", "--point", "7,2", "--steps", "1", "--algorithm", "accel"});
  CHECK(a.out.find("\"digit\":3") != std::string::npos);
}

TEST_CASE("lines emits CSV by default") {
  const Result r = call({"lines", "--sigma", "id", "--depth", "1", "--grid", "0.5:1:1"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "word,t,x,y\n,0.5,0.5,0\n,1,1,0\nH,0.5,0.5,0\nH,1,1,0\nV,0.5,0.5,0.5\nV,1,1,1\n");
}

TEST_CASE("validation errors exit with 2 and one diagnostic line") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"nope"},
           {"golden", "--alpha", "x"},
           {"euclid", "--point", "1"},
           {"euclid", "--point", "0,0"},
           {"coverage", "--sigma", "pow:-2", "--depth", "2"},
           {"mertens", "--r", "3/2"},
           {"orbit-nd", "--start", "1,2,3", "--depth", "2"},
           {"golden", "--format", "xml"}}) {
    const Result r = call(args);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  }
}

TEST_CASE("identical runs give identical bytes") {
  const std::vector<std::string> args{"torus", "--n", "5000", "--starts", "4", "--points", "20000", "--seed", "9"};
  const Result a = call(args);
  const Result b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(call(threaded).out == a.out);
  const Result c = call({"coverage", "--sigma", "pow:2", "--depth", "8", "--grid", "5"});
  CHECK(c.out == call({"coverage", "--sigma", "pow:2", "--depth", "8", "--grid", "5"}).out);
}

TEST_CASE("config file") {
  const auto cfg = temp_file("config.cfg");
  {
    std::ofstream f(cfg);
    f << "# test config\nr = 1/10\n\nexact = true   # exact mode\nsigma=id\n";
  }
  const Result r = call({"mertens", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  CHECK(parse(r.out)["count"] == 63);
  // command-line flags take precedence
  const Result over = call({"mertens", "--config", cfg.string(), "--r", "1/5"});
  CHECK(parse(over.out)["r"] == "1/5");
  {
    std::ofstream f(cfg);
    f << "unknown = 3\n";
  }
  CHECK(call({"golden", "--config", cfg.string()}).code == 2);
  CHECK(call({"golden", "--config", temp_file("missing.cfg").string()}).code == 2);
  std::filesystem::remove(cfg);
}

TEST_CASE("--out writes to a file") {
  const auto path = temp_file("out.json");
  const Result r = call({"golden", "--alpha", "1", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(parse(line)["r"].get<double>() == doctest::Approx(1.618033988749895));
  std::filesystem::remove(path);
}

TEST_CASE("floats use 17 significant digits") {
  const Result r = call({"golden", "--alpha", "1"});
  CHECK(r.out.find("\"r\":1.6180339887498949") != std::string::npos);
}

}  // TEST_SUITE
