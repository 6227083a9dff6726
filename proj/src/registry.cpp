#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>

#include "pdolab/symbols.hpp"
#include "scenarios.hpp"

namespace pdolab {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<ScenarioInfo> build_registry() {
  std::vector<ScenarioInfo> r = {
      {"boundedness-calibration",
       "operator norm of op(a) from (s+m, p) to (s, p) under grid refinement, inside and outside the window",
       {"op(a) bounded from H^{s+m}_p to H^s_p inside the admissible s-window", "smooth symbols: bounded for every s"},
       {{"norm_growth", 1.1}},
       60, 0, {"grid", "symbols", "specs"}, scenario::boundedness_calibration},
      {"composition-order",
       "operator error of the truncated composition expansion for k = 1, 2, 3",
       {"composition: asymptotic expansion a_1 #_k a_2 plus a remainder of lower order"},
       {{"leibniz", 1e-8}, {"floor", 1e-8}},
       60, 6, {"grid"}, scenario::composition_order},
      {"index-invariance",
       "numerical index across (s, p) specs against the phase-space winding number",
       {"Fredholm index independent of (s, p)", "index = dim ker - dim coker"},
       {{"gap", 10.0}, {"rank_tol", 1e-8}},
       120, 8, {"symbols", "specs"}, scenario::index_invariance},
      {"interpolation-suite",
       "translate-difference, interpolation and product ratios on a randomized corpus",
       {"translate differences bounded by |y|^{tau-t}", "interpolation inequalities between Sobolev and Hoelder scales", "product estimate"},
       // Frozen calibration: translate difference at 2 + pi^0.3, product at 1 (Leibniz with C = 1),
       // the rest at about 1.35x the worst ratio over a 3000-case corpus drawn with seed 777.
       {{"translate_diff", 3.4098}, {"interp_result", 1.25}, {"interp1_i", 2.5}, {"interp1_ii", 3.5},
        {"interp1_iii", 1.5}, {"interp2", 2.5}, {"interp3", 2.2}, {"product", 1.0}},
       120, 10, {"grid", "cases"}, scenario::interpolation_suite},
      {"mollify-convergence",
       "seminorm of a_eps - a in the rough Hoelder class over a dyadic eps sequence",
       {"mollified symbols converge to the symbol", "positive mollifier families"},
       {{"final_ratio", 0.05}, {"slope", 0.2}, {"floor", 1e-10}},
       60, 4, {"grid", "symbols"}, scenario::mollify_convergence},
      {"oscint-consistency",
       "cutoff and integration-by-parts routes for oscillatory integrals",
       {"oscillatory integrals via cutoff limits", "oscillatory integrals via the <D>-regularizer"},
       {{"route_agreement", 1e-5}, {"dirac", 1e-6}, {"order_invariance", 1e-6}},
       30, 3, {}, scenario::oscint_consistency},
      {"parametrix-residual",
       "||(QA - I)u|| / ||u|| for u band-limited above a doubling floor",
       {"inverse symbol away from a compact set in phase space", "parametrix with compact residual"},
       {{"residual", 0.1}, {"floor", 1e-8}},
       30, 7, {"grid", "symbols"}, scenario::parametrix_residual},
      {"partition-check",
       "dyadic partition of unity sums to one on the lattice",
       {"dyadic partition of unity"},
       {{"partition_sum", 1e-10}},
       1, 1, {"grid"}, scenario::partition_check},
      {"perturbation-openness",
       "invertibility radius of a + r h across specs, and kernel triviality",
       {"Fredholm property is open under small perturbations", "invertibility independent of (s, p)"},
       {{"radius_ratio", 4.0}, {"gap", 10.0}, {"rank_tol", 1e-8}, {"drop", 0.1}},
       60, 9, {"grid", "symbols", "specs"}, scenario::perturbation_openness},
      {"quantization-anchors",
       "op(1) = I, op(i xi) sin = cos, <D>^s <D>^-s = I",
       {"quantization of symbols", "Bessel potentials <D>^s"},
       {{"identity", 1e-12}, {"derivative", 1e-8}, {"bessel", 1e-10}},
       5, 2, {"grid"}, scenario::quantization_anchors},
      {"smoothing-split",
       "a = a_sharp + a_flat and the <xi>-decay of a_flat",
       {"symbol smoothing a = a^sharp + a^flat", "decay of the rough part"},
       {{"split_sum", 1e-12}, {"decay_exponent", 0.15}},
       60, 5, {"grid", "symbols"}, scenario::smoothing_split},
  };
  std::sort(r.begin(), r.end(), [](const ScenarioInfo& a, const ScenarioInfo& b) { return a.name < b.name; });
  return r;
}

}  // namespace

const std::vector<ScenarioInfo>& scenarios() {
  static const std::vector<ScenarioInfo> reg = build_registry();
  return reg;
}

const ScenarioInfo* find_scenario(const std::string& name) {
  for (const auto& s : scenarios())
    if (s.name == name) return &s;
  return nullptr;
}

void validate(const ExperimentConfig& c) {
  const ScenarioInfo* info = find_scenario(c.scenario);
  if (!info) throw ConfigError("unknown scenario '" + c.scenario + "' (see 'pdo-lab list')");
  auto accepts = [&](const char* key) {
    return std::find(info->accepts.begin(), info->accepts.end(), key) != info->accepts.end();
  };
  if (c.grid && !accepts("grid")) throw ConfigError(c.scenario + ": does not take a grid");
  if (!c.symbols.empty() && !accepts("symbols")) throw ConfigError(c.scenario + ": does not take symbols");
  if (!c.specs.empty() && !accepts("specs")) throw ConfigError(c.scenario + ": does not take specs");
  if (c.cases && !accepts("cases")) throw ConfigError(c.scenario + ": does not take a case count");
  for (const auto& s : c.symbols)
    if (!has_symbol(s.name)) throw ConfigError("unknown symbol '" + s.name + "'");
  for (const auto& [k, v] : c.tolerances) {
    if (!info->tolerances.count(k)) throw ConfigError(c.scenario + ": unknown tolerance '" + k + "'");
    if (!(v > 0)) throw ConfigError("tolerance '" + k + "' must be positive");
  }
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
}

double Context::t(const std::string& name) const {
  auto it = tol.find(name);
  if (it == tol.end()) throw Error("no tolerance named " + name);
  return it->second;
}

std::vector<ReportRecord> Context::run_cases(const std::string& scenario, std::vector<std::string> labels,
                                             const CaseFn& fn) const {
  const std::size_t n = labels.size();
  std::vector<ReportRecord> out(n);
  std::vector<std::exception_ptr> err(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      ReportRecord& rec = out[i];
      rec.scenario = scenario;
      rec.case_id = static_cast<int>(i);
      rec.label = labels[i];
      auto t0 = std::chrono::steady_clock::now();
      try {
        fn(*this, rec);
      } catch (...) {
        err[i] = std::current_exception();
      }
      rec.runtime = seconds_since(t0);
    }
  };
  std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, config.workers)), n);
  if (k <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < k; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!err[i]) continue;
    try {
      std::rethrow_exception(err[i]);
    } catch (const std::exception& e) {
      throw ScenarioError(scenario, static_cast<int>(i), e.what());
    } catch (...) {
      throw ScenarioError(scenario, static_cast<int>(i), "unknown exception");
    }
  }
  return out;
}

RunResult run(const ExperimentConfig& c) {
  validate(c);
  const ScenarioInfo& info = *find_scenario(c.scenario);
  std::map<std::string, double> tol = info.tolerances;
  for (const auto& [k, v] : c.tolerances) tol[k] = v;
  Context ctx{c, tol};
  RunResult res;
  res.scenario = c.scenario;
  res.seed = c.seed;
  res.workers = c.workers;
  auto t0 = std::chrono::steady_clock::now();
  res.records = info.body(ctx);
  res.runtime = seconds_since(t0);
  for (std::size_t i = 0; i < res.records.size(); ++i) res.records[i].case_id = static_cast<int>(i);
  return res;
}

}  // namespace pdolab
