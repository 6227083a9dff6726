#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>

#include "pdolab/pdolab.h"

TEST_CASE("registry through the C interface") {
  int n = pdolab_scenario_count();
  CHECK(n >= 10);
  std::string prev;
  for (int i = 0; i < n; ++i) {
    const char *name = nullptr, *desc = nullptr;
    int crit = -1;
    double budget = 0;
    REQUIRE(pdolab_scenario_info(i, &name, &desc, &crit, &budget) == PDOLAB_OK);
    CHECK(std::string(name) > prev);
    prev = name;
    CHECK(pdolab_scenario_anchor_count(i) >= 1);
    CHECK(pdolab_scenario_anchor(i, 0) != nullptr);
    CHECK(budget > 0);
  }
  CHECK(pdolab_scenario_info(n, nullptr, nullptr, nullptr, nullptr) == PDOLAB_ERR_ARGUMENT);
  CHECK(pdolab_scenario_anchor(0, 99) == nullptr);
}

TEST_CASE("config errors") {
  pdolab_config* c = nullptr;
  CHECK(pdolab_config_for_scenario("no-such-scenario", &c) == PDOLAB_ERR_CONFIG);
  CHECK(std::strstr(pdolab_last_error(), "no-such-scenario") != nullptr);
  CHECK(pdolab_config_from_json("{]", &c) == PDOLAB_ERR_CONFIG);
  CHECK(pdolab_config_from_json(nullptr, &c) == PDOLAB_ERR_ARGUMENT);
  CHECK(pdolab_config_from_file("/nonexistent.json", &c) == PDOLAB_ERR_CONFIG);
  REQUIRE(pdolab_config_from_json(R"({"scenario": "oscint-consistency", "grid": {"L": 1, "N": 16}})", &c) ==
          PDOLAB_OK);
  pdolab_result* r = nullptr;
  CHECK(pdolab_run(c, &r) == PDOLAB_ERR_CONFIG);
  CHECK(r == nullptr);
  CHECK(pdolab_config_set_workers(c, 0) == PDOLAB_ERR_CONFIG);
  pdolab_config_free(c);
}

TEST_CASE("run, inspect and write") {
  pdolab_config* c = nullptr;
  REQUIRE(pdolab_config_for_scenario("partition-check", &c) == PDOLAB_OK);
  CHECK(std::string(pdolab_config_scenario(c)) == "partition-check");
  CHECK(pdolab_config_set_workers(c, 2) == PDOLAB_OK);
  pdolab_result* r = nullptr;
  REQUIRE(pdolab_run(c, &r) == PDOLAB_OK);
  CHECK(pdolab_result_exit_status(r) == 0);
  CHECK(pdolab_result_failures(r) == 0);
  int n = pdolab_result_record_count(r);
  CHECK(n == 2);
  const char *label = nullptr, *note = nullptr;
  pdolab_verdict v;
  int nq = 0;
  REQUIRE(pdolab_result_record(r, 0, &label, &v, &nq, &note) == PDOLAB_OK);
  CHECK(v == PDOLAB_PASS);
  CHECK(nq == 2);
  const char *qn = nullptr, *rel = nullptr;
  double val = -1, tol = 0;
  REQUIRE(pdolab_result_quantity(r, 0, 1, &qn, &val, &rel, &tol) == PDOLAB_OK);
  CHECK(std::string(qn) == "partition_sum");
  CHECK(std::string(rel) == "<=");
  CHECK(tol == 1e-10);
  CHECK(val <= tol);
  CHECK(pdolab_result_quantity(r, 0, 7, nullptr, nullptr, nullptr, nullptr) == PDOLAB_ERR_ARGUMENT);
  CHECK(pdolab_result_record(r, -1, nullptr, nullptr, nullptr, nullptr) == PDOLAB_ERR_ARGUMENT);
  CHECK(std::string(pdolab_result_csv(r)).rfind("scenario,case_id,", 0) == 0);

  auto dir = std::filesystem::temp_directory_path() / "pdolab_capi_test";
  std::filesystem::remove_all(dir);
  REQUIRE(pdolab_result_write(r, dir.string().c_str()) == PDOLAB_OK);
  CHECK(std::filesystem::exists(dir / "partition-check.csv"));
  CHECK(std::filesystem::exists(dir / "partition-check.json"));
  std::filesystem::remove_all(dir);
  pdolab_result_free(r);
  pdolab_config_free(c);
}

TEST_CASE("seed handling") {
  pdolab_config* c = nullptr;
  REQUIRE(pdolab_config_from_json(R"({"scenario": "interpolation-suite", "seed": 3, "cases": 3})", &c) == PDOLAB_OK);
  CHECK(pdolab_config_seed(c) == 3u);
  setenv("PDO_LAB_SEED", "17", 1);
  CHECK(pdolab_config_apply_env(c) == PDOLAB_OK);
  CHECK(pdolab_config_seed(c) == 17u);
  setenv("PDO_LAB_SEED", "-4", 1);
  CHECK(pdolab_config_apply_env(c) == PDOLAB_ERR_CONFIG);
  unsetenv("PDO_LAB_SEED");
  pdolab_config_free(c);
}

TEST_CASE("runtime error reports the case") {
  pdolab_config* c = nullptr;
  REQUIRE(pdolab_config_from_json(R"({"scenario": "parametrix-residual", "symbols": [{"name": "sin_profile"}]})", &c) ==
          PDOLAB_OK);
  pdolab_result* r = nullptr;
  CHECK(pdolab_run(c, &r) == PDOLAB_ERR_RUNTIME);
  CHECK(pdolab_last_error_case() == 0);
  pdolab_config_free(c);
}

TEST_CASE("direct index probes") {
  int k = -1, ck = -1, idx = 0, w = 0;
  double gap = 0;
  REQUIRE(pdolab_numerical_index("ladder", nullptr, 8.0, 128, 0.0, 2.0, &k, &ck, &idx, &gap) == PDOLAB_OK);
  CHECK(k == 1);
  CHECK(ck == 0);
  CHECK(idx == 1);
  CHECK(gap >= 10);
  REQUIRE(pdolab_winding_index("ladder_adjoint", nullptr, 8.0, 128, &w) == PDOLAB_OK);
  CHECK(w == -1);
  REQUIRE(pdolab_numerical_index("bracket_power", R"({"m": 2})", 3.0, 64, 1.0, 2.0, &k, &ck, &idx, nullptr) ==
          PDOLAB_OK);
  CHECK(idx == 0);
  CHECK(pdolab_numerical_index("nope", nullptr, 8.0, 64, 0.0, 2.0, &k, &ck, &idx, &gap) == PDOLAB_ERR_CONFIG);
  CHECK(pdolab_numerical_index("ladder", "[1]", 8.0, 64, 0.0, 2.0, &k, &ck, &idx, &gap) == PDOLAB_ERR_CONFIG);
  CHECK(pdolab_winding_index("sin_profile", nullptr, 8.0, 64, &w) == PDOLAB_ERR_RUNTIME);
  CHECK(std::string(pdolab_version()).size() > 0);
}
