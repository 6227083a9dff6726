#include "pdolab/pdolab.h"

#include <filesystem>
#include <ios>
#include <json.hpp>
#include <sstream>
#include <string>

#include "pdolab/experiments.hpp"
#include "pdolab/fredholm.hpp"

struct pdolab_config {
  pdolab::ExperimentConfig c;
};

struct pdolab_result {
  pdolab::RunResult r;
  std::string csv;
};

namespace {

thread_local std::string last_error;
thread_local int last_case = -1;

pdolab_status fail(pdolab_status s, const std::string& msg, int case_id = -1) {
  last_error = msg;
  last_case = case_id;
  return s;
}

// Maps exceptions from the core onto status codes.
template <class F>
pdolab_status guarded(F&& f) {
  last_error.clear();
  last_case = -1;
  try {
    f();
    return PDOLAB_OK;
  } catch (const pdolab::ConfigError& e) {
    return fail(PDOLAB_ERR_CONFIG, e.what());
  } catch (const pdolab::ScenarioError& e) {
    return fail(PDOLAB_ERR_RUNTIME, e.what(), e.case_id());
  } catch (const std::ios_base::failure& e) {
    return fail(PDOLAB_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(PDOLAB_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(PDOLAB_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(PDOLAB_ERR_RUNTIME, "unknown error");
  }
}

pdolab::SymbolParams parse_params(const char* text) {
  pdolab::SymbolParams p;
  if (!text || !*text) return p;
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw pdolab::ConfigError("params: expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it.value().is_number()) throw pdolab::ConfigError("params." + it.key() + ": expected a number");
    p[it.key()] = it.value().get<double>();
  }
  return p;
}

pdolab::Symbol symbol_for(const char* name, const char* params) {
  if (!name || !pdolab::has_symbol(name)) throw pdolab::ConfigError(std::string("unknown symbol '") + (name ? name : "") + "'");
  return pdolab::make_symbol(name, parse_params(params));
}

}  // namespace

extern "C" {

const char* pdolab_version(void) { return "0.1.0"; }
const char* pdolab_last_error(void) { return last_error.c_str(); }
int pdolab_last_error_case(void) { return last_case; }

int pdolab_scenario_count(void) { return static_cast<int>(pdolab::scenarios().size()); }

pdolab_status pdolab_scenario_info(int i, const char** name, const char** description, int* criterion,
                                   double* budget_seconds) {
  const auto& reg = pdolab::scenarios();
  if (i < 0 || i >= static_cast<int>(reg.size())) return fail(PDOLAB_ERR_ARGUMENT, "scenario index out of range");
  const auto& s = reg[i];
  if (name) *name = s.name.c_str();
  if (description) *description = s.description.c_str();
  if (criterion) *criterion = s.criterion;
  if (budget_seconds) *budget_seconds = s.budget_seconds;
  return PDOLAB_OK;
}

int pdolab_scenario_anchor_count(int i) {
  const auto& reg = pdolab::scenarios();
  if (i < 0 || i >= static_cast<int>(reg.size())) return 0;
  return static_cast<int>(reg[i].anchors.size());
}

const char* pdolab_scenario_anchor(int i, int k) {
  const auto& reg = pdolab::scenarios();
  if (i < 0 || i >= static_cast<int>(reg.size())) return nullptr;
  if (k < 0 || k >= static_cast<int>(reg[i].anchors.size())) return nullptr;
  return reg[i].anchors[k].c_str();
}

pdolab_status pdolab_config_from_json(const char* json, pdolab_config** out) {
  if (!json || !out) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = new pdolab_config{pdolab::parse_config(json)}; });
}

pdolab_status pdolab_config_from_file(const char* path, pdolab_config** out) {
  if (!path || !out) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] { *out = new pdolab_config{pdolab::load_config(path)}; });
}

pdolab_status pdolab_config_for_scenario(const char* name, pdolab_config** out) {
  if (!name || !out) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    if (!pdolab::find_scenario(name))
      throw pdolab::ConfigError(std::string("unknown scenario '") + name + "' (see 'pdo-lab list')");
    auto* c = new pdolab_config{};
    c->c.scenario = name;
    *out = c;
  });
}

pdolab_status pdolab_config_set_out_dir(pdolab_config* c, const char* dir) {
  if (!c || !dir) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  c->c.out_dir = dir;
  return PDOLAB_OK;
}

pdolab_status pdolab_config_set_workers(pdolab_config* c, int workers) {
  if (!c) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  if (workers < 1) return fail(PDOLAB_ERR_CONFIG, "workers must be >= 1");
  c->c.workers = workers;
  return PDOLAB_OK;
}

pdolab_status pdolab_config_set_seed(pdolab_config* c, uint64_t seed) {
  if (!c) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  c->c.seed = seed;
  return PDOLAB_OK;
}

pdolab_status pdolab_config_apply_env(pdolab_config* c) {
  if (!c) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] { pdolab::apply_seed_override(c->c); });
}

const char* pdolab_config_scenario(const pdolab_config* c) { return c ? c->c.scenario.c_str() : nullptr; }
const char* pdolab_config_out_dir(const pdolab_config* c) { return c ? c->c.out_dir.c_str() : nullptr; }
uint64_t pdolab_config_seed(const pdolab_config* c) { return c ? c->c.seed : 0; }
void pdolab_config_free(pdolab_config* c) { delete c; }

pdolab_status pdolab_run(const pdolab_config* c, pdolab_result** out) {
  if (!c || !out) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    auto* r = new pdolab_result{pdolab::run(c->c), {}};
    std::ostringstream os;
    pdolab::write_csv(os, r->r);
    r->csv = os.str();
    *out = r;
  });
}

int pdolab_result_record_count(const pdolab_result* r) { return r ? static_cast<int>(r->r.records.size()) : 0; }
int pdolab_result_failures(const pdolab_result* r) { return r ? r->r.failures() : 0; }
int pdolab_result_exit_status(const pdolab_result* r) { return r ? r->r.exit_status() : 1; }

pdolab_status pdolab_result_record(const pdolab_result* r, int i, const char** label, pdolab_verdict* verdict,
                                   int* quantity_count, const char** note) {
  if (!r) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  if (i < 0 || i >= static_cast<int>(r->r.records.size())) return fail(PDOLAB_ERR_ARGUMENT, "record index out of range");
  const auto& rec = r->r.records[i];
  if (label) *label = rec.label.c_str();
  if (verdict) *verdict = static_cast<pdolab_verdict>(rec.verdict());
  if (quantity_count) *quantity_count = static_cast<int>(rec.quantities.size());
  if (note) *note = rec.note.c_str();
  return PDOLAB_OK;
}

pdolab_status pdolab_result_quantity(const pdolab_result* r, int i, int q, const char** name, double* value,
                                     const char** relation, double* tolerance) {
  if (!r) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  if (i < 0 || i >= static_cast<int>(r->r.records.size())) return fail(PDOLAB_ERR_ARGUMENT, "record index out of range");
  const auto& qs = r->r.records[i].quantities;
  if (q < 0 || q >= static_cast<int>(qs.size())) return fail(PDOLAB_ERR_ARGUMENT, "quantity index out of range");
  if (name) *name = qs[q].name.c_str();
  if (value) *value = qs[q].value;
  if (relation) *relation = qs[q].relation.c_str();
  if (tolerance) *tolerance = qs[q].tolerance;
  return PDOLAB_OK;
}

pdolab_status pdolab_result_write(const pdolab_result* r, const char* dir) {
  if (!r || !dir) return fail(PDOLAB_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    try {
      pdolab::write_outputs(r->r, dir);
    } catch (const std::runtime_error& e) {
      throw std::ios_base::failure(e.what());
    }
  });
}

const char* pdolab_result_csv(const pdolab_result* r) { return r ? r->csv.c_str() : nullptr; }
void pdolab_result_free(pdolab_result* r) { delete r; }

pdolab_status pdolab_numerical_index(const char* symbol, const char* params_json, double L, int N, double s, double p,
                                     int* kernel_dim, int* cokernel_dim, int* index, double* gap) {
  return guarded([&] {
    auto a = symbol_for(symbol, params_json);
    auto g = pdolab::Grid::make(1, L, N);
    auto rep = pdolab::numerical_index(pdolab::assemble(a, g, {s, p}));
    if (kernel_dim) *kernel_dim = rep.kernel_dim;
    if (cokernel_dim) *cokernel_dim = rep.cokernel_dim;
    if (index) *index = rep.index;
    if (gap) *gap = rep.gap;
  });
}

pdolab_status pdolab_winding_index(const char* symbol, const char* params_json, double L, int N, int* winding) {
  return guarded([&] {
    auto a = symbol_for(symbol, params_json);
    auto g = pdolab::Grid::make(1, L, N);
    auto w = pdolab::winding_index(a, g, 2.0, 0.5);
    if (winding) *winding = w.winding;
  });
}

}  // extern "C"
