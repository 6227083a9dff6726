#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdolab/spaces.hpp"

namespace pdolab {

// Independent stream per (seed, case id); the draw order of other cases does not matter.
std::mt19937_64 case_stream(std::uint64_t seed, std::uint64_t case_id);

// ---------------------------------------------------------------- config

struct SymbolSelection {
  std::string name;
  std::map<std::string, double> params;
  double scale = 1.0;
};

struct GridParams {
  int n = 1;
  double L = 0.0;
  int N = 0;
};

struct ExperimentConfig {
  std::string scenario;
  std::optional<GridParams> grid;  // unset: scenario default
  std::vector<SymbolSelection> symbols;
  std::vector<SpaceSpec> specs;
  std::map<std::string, double> tolerances;  // overrides of registry values
  std::string out_dir;
  std::uint64_t seed = 20240917;
  int workers = 1;
  int cases = 0;  // randomized corpus size, 0: scenario default
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ConfigError. PDO_LAB_SEED, when set, replaces the seed.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
void apply_seed_override(ExperimentConfig& c);

// ---------------------------------------------------------------- records

enum class Verdict { Pass, Fail, Flagged };
const char* verdict_name(Verdict v);

struct Quantity {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=", ">=", "==", or empty when only reported
  double tolerance = 0.0;
  bool holds() const;
};

struct ReportRecord {
  std::string scenario;
  int case_id = 0;
  std::string label;
  std::vector<Quantity> quantities;
  bool flagged = false;
  std::string note;
  double runtime = 0.0;  // seconds, JSON only

  ReportRecord& report(const std::string& name, double v);
  ReportRecord& require(const std::string& name, double v, const std::string& rel, double tol);
  Verdict verdict() const;
};

struct RunResult {
  std::string scenario;
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<ReportRecord> records;
  double runtime = 0.0;
  int failures() const;
  int exit_status() const { return failures() ? 1 : 0; }
};

// RFC-4180; one row per quantity. Deterministic for a fixed config and seed.
void write_csv(std::ostream& os, const RunResult& r);
std::string csv_escape(const std::string& field);
// Mirrors the CSV rows and adds per-case runtime and environment metadata.
void write_json(std::ostream& os, const RunResult& r);
void write_outputs(const RunResult& r, const std::string& dir);

// ---------------------------------------------------------------- registry

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& scenario, int case_id, const std::string& what)
      : std::runtime_error(scenario + " case " + std::to_string(case_id) + ": " + what), case_id_(case_id) {}
  int case_id() const { return case_id_; }

 private:
  int case_id_;
};

struct Context;
using CaseFn = std::function<void(const Context&, ReportRecord&)>;

// What a scenario body sees: resolved config, tolerances, and a parallel case runner.
struct Context {
  const ExperimentConfig& config;
  const std::map<std::string, double>& tol;
  double t(const std::string& name) const;
  std::vector<ReportRecord> run_cases(const std::string& scenario, std::vector<std::string> labels,
                                      const CaseFn& fn) const;
};

struct ScenarioInfo {
  std::string name;
  std::string description;
  std::vector<std::string> anchors;
  std::map<std::string, double> tolerances;
  double budget_seconds = 0.0;
  int criterion = 0;                 // acceptance criterion number, 0 if none
  std::vector<std::string> accepts;  // optional config keys read: grid, symbols, specs, cases
  std::function<std::vector<ReportRecord>(const Context&)> body;
};

// Sorted by name.
const std::vector<ScenarioInfo>& scenarios();
const ScenarioInfo* find_scenario(const std::string& name);
void validate(const ExperimentConfig& c);  // throws ConfigError

RunResult run(const ExperimentConfig& c);  // throws ConfigError, ScenarioError

}  // namespace pdolab
