#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <set>
#include <sstream>

#include "pdolab/experiments.hpp"

using namespace pdolab;

namespace {

// Minimal RFC-4180 reader used as an oracle for the writer.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      row.push_back(field);
      rows.push_back(row);
      row.clear();
      field.clear();
      ++i;
    } else {
      field += c;
    }
  }
  return rows;
}

std::string csv_of(const RunResult& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

ExperimentConfig cfg(const std::string& scenario) {
  ExperimentConfig c;
  c.scenario = scenario;
  return c;
}

}  // namespace

TEST_CASE("registry contents") {
  const auto& reg = scenarios();
  std::set<std::string> names;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    names.insert(reg[i].name);
    if (i) CHECK(reg[i - 1].name < reg[i].name);
    CHECK_FALSE(reg[i].anchors.empty());
    CHECK_FALSE(reg[i].description.empty());
    for (const auto& [k, v] : reg[i].tolerances) CHECK(v > 0);
  }
  for (const char* n : {"partition-check", "oscint-consistency", "mollify-convergence", "smoothing-split",
                        "composition-order", "parametrix-residual", "boundedness-calibration", "index-invariance",
                        "perturbation-openness", "interpolation-suite"})
    CHECK(names.count(n) == 1);
  std::set<int> crit;
  for (const auto& s : reg)
    if (s.criterion) CHECK(crit.insert(s.criterion).second);
  CHECK(crit.size() == 10u);
  CHECK(find_scenario("no-such") == nullptr);
}

TEST_CASE("registry tolerances match the acceptance contract") {
  auto tol = [](const char* s, const char* k) { return find_scenario(s)->tolerances.at(k); };
  CHECK(tol("partition-check", "partition_sum") == 1e-10);
  CHECK(tol("quantization-anchors", "identity") == 1e-12);
  CHECK(tol("quantization-anchors", "derivative") == 1e-8);
  CHECK(tol("quantization-anchors", "bessel") == 1e-10);
  CHECK(tol("oscint-consistency", "route_agreement") == 1e-5);
  CHECK(tol("oscint-consistency", "dirac") == 1e-6);
  CHECK(tol("oscint-consistency", "order_invariance") == 1e-6);
  CHECK(tol("mollify-convergence", "final_ratio") == 0.05);
  CHECK(tol("mollify-convergence", "slope") == 0.2);
  CHECK(tol("smoothing-split", "split_sum") == 1e-12);
  CHECK(tol("smoothing-split", "decay_exponent") == 0.15);
  CHECK(tol("composition-order", "leibniz") == 1e-8);
  CHECK(tol("parametrix-residual", "residual") == 0.1);
  CHECK(tol("index-invariance", "gap") == 10.0);
  CHECK(tol("perturbation-openness", "radius_ratio") == 4.0);
}

TEST_CASE("case streams are order independent") {
  auto a = case_stream(7, 3);
  auto b0 = case_stream(7, 0);
  (void)b0();
  auto b = case_stream(7, 3);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
  CHECK(case_stream(7, 3)() != case_stream(7, 4)());
  CHECK(case_stream(7, 3)() != case_stream(8, 3)());
  CHECK(case_stream(1ull << 40, 0)() != case_stream(0, 0)());
}

TEST_CASE("records and verdicts") {
  ReportRecord r;
  r.report("x", 1.0).require("y", 0.5, "<=", 1.0);
  CHECK(r.verdict() == Verdict::Pass);
  r.flagged = true;
  CHECK(r.verdict() == Verdict::Flagged);
  r.require("z", std::nan(""), ">=", 0.0);
  CHECK(r.verdict() == Verdict::Fail);
  CHECK(Quantity{"a", 2.0, "==", 2.0}.holds());
  CHECK_FALSE(Quantity{"a", 2.0, ">=", 3.0}.holds());
  CHECK(Quantity{"a", 1e300, "", 0.0}.holds());
}

TEST_CASE("CSV quoting round trip") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  RunResult res;
  res.scenario = "demo";
  ReportRecord r;
  r.scenario = "demo";
  r.label = "s=0,p=2 \"quoted\"\nnext";
  r.note = "a, b";
  r.require("v", 0.1, "<=", 1.0).report("w", -3.5e-300);
  res.records.push_back(r);
  res.records.push_back(ReportRecord{"demo", 1, "empty", {}, false, "", 0.0});
  auto rows = parse_csv(csv_of(res));
  REQUIRE(rows.size() == 4u);
  for (const auto& row : rows) CHECK(row.size() == 9u);
  CHECK(rows[1][2] == r.label);
  CHECK(rows[1][4] == "0.1");
  CHECK(rows[1][8] == "a, b");
  CHECK(std::stod(rows[2][4]) == -3.5e-300);
  CHECK(rows[2][5].empty());
  CHECK(rows[3][2] == "empty");
  CHECK(rows[3][7] == "pass");
}

TEST_CASE("config parsing and validation") {
  auto c = parse_config(R"({"scenario": "interpolation-suite", "seed": 5, "workers": 2, "cases": 7,
                             "grid": {"L": 3.14159, "N": 128}, "tolerances": {"product": 2.0}})");
  CHECK(c.seed == 5u);
  CHECK(c.workers == 2);
  CHECK(c.cases == 7);
  REQUIRE(c.grid);
  CHECK(c.grid->N == 128);
  CHECK(c.tolerances.at("product") == 2.0);
  validate(c);

  auto s = parse_config(R"({"scenario": "index-invariance",
                            "symbols": [{"name": "ladder"}, {"name": "rough_profile", "params": {"m": 1}, "scale": -1}],
                            "specs": [{"s": -1}, {"s": 0, "p": 4}]})");
  REQUIRE(s.symbols.size() == 2u);
  CHECK(s.symbols[1].scale == -1.0);
  CHECK(s.symbols[1].params.at("m") == 1.0);
  CHECK(s.specs[1].p == 4.0);

  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seed": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "partition-check", "colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "partition-check", "grid": {"L": 1, "N": 100}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "partition-check", "workers": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "partition-check", "tolerances": {"partition_sum": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "partition-check", "specs": [{"s": 0, "p": 0.5}]})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);

  CHECK_THROWS_AS(validate(cfg("no-such-scenario")), ConfigError);
  auto bad_sym = cfg("index-invariance");
  bad_sym.symbols.push_back({"no_such_symbol", {}, 1.0});
  CHECK_THROWS_AS(validate(bad_sym), ConfigError);
  auto bad_tol = cfg("partition-check");
  bad_tol.tolerances["nope"] = 1.0;
  CHECK_THROWS_AS(validate(bad_tol), ConfigError);
  auto bad_key = cfg("oscint-consistency");
  bad_key.grid = GridParams{1, 1.0, 64};
  CHECK_THROWS_AS(validate(bad_key), ConfigError);
}

TEST_CASE("seed override from the environment") {
  auto c = cfg("interpolation-suite");
  c.seed = 11;
  unsetenv("PDO_LAB_SEED");
  apply_seed_override(c);
  CHECK(c.seed == 11u);
  setenv("PDO_LAB_SEED", "424242", 1);
  apply_seed_override(c);
  CHECK(c.seed == 424242u);
  setenv("PDO_LAB_SEED", "12x", 1);
  CHECK_THROWS_AS(apply_seed_override(c), ConfigError);
  unsetenv("PDO_LAB_SEED");
}

TEST_CASE("partition-check passes with defaults") {
  auto r = run(cfg("partition-check"));
  CHECK(r.failures() == 0);
  CHECK(r.exit_status() == 0);
  CHECK(r.records.size() == 2u);
}

TEST_CASE("index-invariance reports a constant index for the ladder") {
  auto c = cfg("index-invariance");
  c.symbols.push_back({"ladder", {}, 1.0});
  auto r = run(c);
  CHECK(r.failures() == 0);
  int seen = 0;
  for (const auto& rec : r.records)
    for (const auto& q : rec.quantities)
      if (q.name.rfind("index[", 0) == 0) {
        CHECK(q.value == 1.0);
        ++seen;
      }
  CHECK(seen == 10);
}

TEST_CASE("determinism and worker independence") {
  auto c = cfg("interpolation-suite");
  c.cases = 12;
  c.seed = 99;
  std::string a = csv_of(run(c));
  c.workers = 3;
  std::string b = csv_of(run(c));
  CHECK(a == b);
  c.seed = 100;
  CHECK(csv_of(run(c)) != a);
}

TEST_CASE("tolerance overrides and failures") {
  auto c = cfg("quantization-anchors");
  c.tolerances["bessel"] = 1e-300;
  auto r = run(c);
  CHECK(r.failures() > 0);
  CHECK(r.exit_status() == 1);
}

TEST_CASE("runtime errors carry the case id") {
  auto c = cfg("parametrix-residual");
  c.symbols.push_back({"cos_profile", {{"m", 1.0}}, 1.0});
  c.symbols.push_back({"sin_profile", {}, 1.0});
  try {
    run(c);
    FAIL("expected a scenario error");
  } catch (const ScenarioError& e) {
    CHECK(e.case_id() == 1);
  }
}

TEST_CASE("JSON report mirrors the records") {
  auto r = run(cfg("composition-order"));
  std::ostringstream os;
  write_json(os, r);
  auto j = nlohmann::json::parse(os.str());
  CHECK(j["scenario"] == "composition-order");
  CHECK(j["records"].size() == r.records.size());
  CHECK(j["summary"]["fail"] == 0);
  CHECK(j["summary"]["pass"].get<int>() + j["summary"]["flagged"].get<int>() == static_cast<int>(r.records.size()));
  for (const char* k : {"compiler", "eigen", "fftw", "hardware_threads", "generated_utc"})
    CHECK(j["environment"].contains(k));
  std::size_t rows = 0;
  for (const auto& rec : r.records) rows += std::max<std::size_t>(1, rec.quantities.size());
  CHECK(parse_csv(csv_of(r)).size() == rows + 1);
}
