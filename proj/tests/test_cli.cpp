#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using nlohmann::json;

namespace {

int run(std::vector<std::string> args) {
  std::vector<const char*> argv{"tfspec"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return tfspec::cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

const std::string tmp = "/tmp/tfspec_cli_test_";

}  // namespace

TEST_CASE("spectrum command") {
  const std::string out = tmp + "spec.csv";
  CHECK(run({"spectrum", "--c-min", "1", "--c-max", "8", "--points", "4", "--n-max", "3",
             "--out", out}) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 5);  // header + 4
  CHECK(rows[0].size() == 6);  // c, lambda_0..3, asymptotic
  CHECK(rows[0][1] == "lambda_0");
  // asymptotic column within 1e-3 of the accurate one for c >= 4
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double c = std::stod(rows[r][0]);
    if (c >= 4.0) {
      CHECK(std::abs(std::stod(rows[r][1]) - std::stod(rows[r][5])) <= 1e-3);
    }
  }
  // n-max 0 gives a single eigenvalue column
  CHECK(run({"spectrum", "--points", "2", "--n-max", "0", "--out", out}) == 0);
  CHECK(parse_csv(slurp(out))[0].size() == 3);
  // invalid range is a usage error
  CHECK(run({"spectrum", "--c-min", "-1", "--out", out}) == 2);
}

TEST_CASE("check command verdicts and exit codes") {
  const std::string cfg = tmp + "spec.json";
  const std::string out = tmp + "verdict.json";

  spit(cfg, R"({"T":1.0,"delta":0.05,"E":4.0,"W":8.0,"beta":0.999})");
  CHECK(run({"check", "--config", cfg, "--out", out}) == 0);
  const json v = json::parse(slurp(out));
  CHECK(v.at("feasible").get<bool>());
  CHECK(v.at("governing_test") == "eq14");
  CHECK(v.at("margin").get<double>() > 0.9);
  bool has_eq15 = false;
  for (const auto& d : v.at("details")) has_eq15 |= (d.at("name") == "eq15");
  CHECK(has_eq15);

  // over-specified sheet: full concentration demanded in both domains
  spit(cfg, R"({"T":1.0,"delta":0.0,"E":1.0,"W":8.0,"beta":1.0})");
  CHECK(run({"check", "--config", cfg, "--out", out}) == 1);
  const json w = json::parse(slurp(out));
  CHECK_FALSE(w.at("feasible").get<bool>());
  CHECK(w.at("governing_test") == "eq15");

  // missing field lists its name on stderr and exits 2
  spit(cfg, R"({"T":1.0,"delta":0.05,"W":8.0})");
  CHECK(run({"check", "--config", cfg, "--out", out}) == 2);
  // unknown field rejected
  spit(cfg, R"({"T":1.0,"delta":0.05,"E":4.0,"W":8.0,"banana":1})");
  CHECK(run({"check", "--config", cfg, "--out", out}) == 2);
  // malformed json
  spit(cfg, "{T:");
  CHECK(run({"check", "--config", cfg, "--out", out}) == 2);
}

TEST_CASE("verdict json round-trips losslessly") {
  const std::string cfg = tmp + "spec_rt.json";
  const std::string out = tmp + "verdict_rt.json";
  spit(cfg, R"({"T":1.0,"delta":0.05,"E":4.0,"W":8.0,"beta":0.999,"E1":2.0})");
  CHECK(run({"check", "--config", cfg, "--out", out}) == 0);
  const json rec = json::parse(slurp(out));
  const tfspec::Verdict v = tfspec::cli::verdict_from_json(rec);
  const json again = tfspec::cli::verdict_to_json(v);
  // the verdict subtree reproduces byte-for-byte
  json orig = rec;
  orig.erase("inputs");
  CHECK(orig.dump() == again.dump());
}

TEST_CASE("deterministic output") {
  const std::string cfg = tmp + "spec_det.json";
  const std::string o1 = tmp + "det1.json";
  const std::string o2 = tmp + "det2.json";
  spit(cfg, R"({"T":1.0,"delta":0.05,"E":4.0,"W":8.0,"beta":0.999})");
  CHECK(run({"check", "--config", cfg, "--out", o1}) == 0);
  CHECK(run({"check", "--config", cfg, "--out", o2}) == 0);
  CHECK(slurp(o1) == slurp(o2));

  const std::string f1 = tmp + "fig1.csv";
  const std::string f2 = tmp + "fig2.csv";
  CHECK(run({"figdata", "--figure", "3", "--out", f1}) == 0);
  CHECK(run({"figdata", "--figure", "3", "--out", f2}) == 0);
  CHECK(slurp(f1) == slurp(f2));
}

TEST_CASE("design command") {
  const std::string out = tmp + "design.json";
  CHECK(run({"design", "--rise-time", "1.0742", "--out", out}) == 0);
  const json d = json::parse(slurp(out));
  CHECK(d.at("a").get<double>() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(d.at("rise_product").get<double>() == doctest::Approx(1.5192).epsilon(1e-3));

  CHECK(run({"design", "--freq-std", "1.4142135", "--out", out}) == 0);
  CHECK(json::parse(slurp(out)).at("a").get<double>() == doctest::Approx(1.0).epsilon(1e-6));

  // exactly one target required
  CHECK(run({"design", "--out", out}) == 2);
  CHECK(run({"design", "--rise-time", "1.0", "--freq-std", "2.0", "--out", out}) == 2);

  const std::string curves = tmp + "curves.csv";
  CHECK(run({"design", "--settling-time", "1.5341", "--out", out, "--curves", curves}) == 0);
  const auto rows = parse_csv(slurp(curves));
  CHECK(rows.size() == 1002);
  CHECK(rows[0] == std::vector<std::string>{"t", "step", "impulse"});
}

TEST_CASE("analyze command") {
  const std::string out = tmp + "analyze.json";
  CHECK(run({"analyze", "--num", "1", "--den", "1,2,1", "--out", out}) == 0);
  const json a = json::parse(slurp(out));
  CHECK(a.at("rise_bandwidth_product").get<double>() ==
        doctest::Approx(std::exp(1.0) / 2.0).epsilon(1e-4));
  CHECK(a.at("bandwidth_integral").get<double>() == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(a.at("metrics").at("t_p").is_null());

  // relative degree one reports the divergence instead of a number
  CHECK(run({"analyze", "--num", "1", "--den", "1,1", "--out", out}) == 0);
  const json b = json::parse(slurp(out));
  CHECK(b.at("bandwidth_integral").is_null());
  CHECK(b.contains("bandwidth_integral_error"));

  // unstable systems are input errors
  CHECK(run({"analyze", "--num", "1", "--den", "-1,1", "--out", out}) == 2);
  CHECK(run({"analyze", "--num", "1", "--out", out}) == 2);

  // config-file route
  const std::string cfg = tmp + "sys.json";
  spit(cfg, R"({"num":[1.0],"den":[1.0,2.0,1.0]})");
  CHECK(run({"analyze", "--config", cfg, "--out", out}) == 0);
  CHECK(json::parse(slurp(out)).at("bandwidth_integral").get<double>() ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("extremal command") {
  const std::string out = tmp + "ext.json";
  const std::string sig = tmp + "ext.csv";
  CHECK(run({"extremal", "--alpha", "0.999", "--c", "4", "--out", out, "--signal-out",
             sig}) == 0);
  const json e = json::parse(slurp(out));
  CHECK(e.at("alpha_measured").get<double>() == doctest::Approx(0.999).epsilon(1e-4));
  CHECK(std::abs(e.at("eq8_margin").get<double>()) < 1e-4);
  const auto rows = parse_csv(slurp(sig));
  CHECK(rows.size() > 1000);
  CHECK(rows[0] == std::vector<std::string>{"t", "h"});

  CHECK(run({"extremal", "--alpha", "0.9", "--out", out}) == 2);  // needs c or W+T
  CHECK(run({"extremal", "--alpha", "1.5", "--c", "2", "--out", out}) == 2);
}

TEST_CASE("figdata command") {
  const std::string out = tmp + "fig.csv";

  CHECK(run({"figdata", "--figure", "2", "--out", out}) == 0);
  auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 2002);
  CHECK(rows[0].size() == 6);
  // every family column is monotone toward one
  for (std::size_t col = 1; col < 6; ++col) {
    double prev = -1.0;
    for (std::size_t r = 1; r < rows.size(); r += 100) {
      const double v = std::stod(rows[r][col]);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
    CHECK(std::stod(rows.back()[col]) == doctest::Approx(1.0).epsilon(1e-6));
  }

  CHECK(run({"figdata", "--figure", "4", "--out", out}) == 0);
  rows = parse_csv(slurp(out));
  CHECK(rows[0] == std::vector<std::string>{"tau", "psi0_c8", "psi0_c4", "psi0_c2"});

  CHECK(run({"figdata", "--figure", "5", "--out", out}) == 0);
  rows = parse_csv(slurp(out));
  for (std::size_t r = 1; r < rows.size(); r += 50) {
    CHECK(std::abs(std::stod(rows[r][1])) < 0.01);  // tiny oscillation at c = 8
  }

  CHECK(run({"figdata", "--figure", "7", "--out", out}) == 2);
}

TEST_CASE("csv record format") {
  const std::string cfg = tmp + "spec_fmt.json";
  const std::string out = tmp + "verdict.csv";
  spit(cfg, R"({"T":1.0,"delta":0.05,"E":4.0,"W":8.0,"beta":0.999})");
  CHECK(run({"check", "--config", cfg, "--out", out, "--format", "csv"}) == 0);
  const auto rows = parse_csv(slurp(out));
  CHECK(rows[0] == std::vector<std::string>{"key", "value"});
  bool found = false;
  for (const auto& r : rows) found |= (r.size() == 2 && r[0] == "feasible");
  CHECK(found);
  CHECK(run({"check", "--config", cfg, "--format", "yaml"}) == 2);
}
