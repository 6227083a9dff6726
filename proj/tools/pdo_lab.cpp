#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "pdolab/pdolab.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int report_error(pdolab_status s) {
  if (s == PDOLAB_ERR_RUNTIME || s == PDOLAB_ERR_IO) {
    int c = pdolab_last_error_case();
    if (c >= 0) std::fprintf(stderr, "pdo-lab: runtime error in case %d: %s\n", c, pdolab_last_error());
    else std::fprintf(stderr, "pdo-lab: runtime error: %s\n", pdolab_last_error());
    return kExitRuntime;
  }
  std::fprintf(stderr, "pdo-lab: config error: %s\n", pdolab_last_error());
  return kExitConfig;
}

int list() {
  for (int i = 0; i < pdolab_scenario_count(); ++i) {
    const char *name = nullptr, *desc = nullptr;
    int crit = 0;
    double budget = 0;
    pdolab_scenario_info(i, &name, &desc, &crit, &budget);
    std::printf("%s\n    %s\n", name, desc);
    if (crit) std::printf("    acceptance criterion %d, budget %gs\n", crit, budget);
    for (int k = 0; k < pdolab_scenario_anchor_count(i); ++k) std::printf("    anchor: %s\n", pdolab_scenario_anchor(i, k));
  }
  return 0;
}

int run(const std::string& config, const std::string& scenario, const std::string& out, int workers) {
  pdolab_config* cfg = nullptr;
  pdolab_status s = config.empty() ? pdolab_config_for_scenario(scenario.c_str(), &cfg)
                                   : pdolab_config_from_file(config.c_str(), &cfg);
  if (s != PDOLAB_OK) return report_error(s);
  struct Guard {
    pdolab_config* c;
    pdolab_result* r = nullptr;
    ~Guard() {
      pdolab_result_free(r);
      pdolab_config_free(c);
    }
  } guard{cfg};
  if ((s = pdolab_config_apply_env(cfg)) != PDOLAB_OK) return report_error(s);
  if (workers > 0 && (s = pdolab_config_set_workers(cfg, workers)) != PDOLAB_OK) return report_error(s);
  if (!out.empty()) pdolab_config_set_out_dir(cfg, out.c_str());
  std::string dir = pdolab_config_out_dir(cfg);
  if (dir.empty()) dir = "pdo-lab-out";

  if ((s = pdolab_run(cfg, &guard.r)) != PDOLAB_OK) return report_error(s);
  if ((s = pdolab_result_write(guard.r, dir.c_str())) != PDOLAB_OK) return report_error(s);

  int n = pdolab_result_record_count(guard.r), pass = 0, fail = 0, flagged = 0;
  for (int i = 0; i < n; ++i) {
    const char *label = nullptr, *note = nullptr;
    pdolab_verdict v;
    int nq = 0;
    pdolab_result_record(guard.r, i, &label, &v, &nq, &note);
    pass += v == PDOLAB_PASS;
    flagged += v == PDOLAB_FLAGGED;
    if (v != PDOLAB_FAIL) continue;
    ++fail;
    std::fprintf(stderr, "FAIL case %d (%s)\n", i, label);
    for (int q = 0; q < nq; ++q) {
      const char *name = nullptr, *rel = nullptr;
      double val = 0, tol = 0;
      pdolab_result_quantity(guard.r, i, q, &name, &val, &rel, &tol);
      if (*rel) std::fprintf(stderr, "    %s = %.6g (required %s %.6g)\n", name, val, rel, tol);
    }
  }
  std::printf("%s: %d records, %d pass, %d fail, %d flagged (seed %llu) -> %s/%s.{csv,json}\n",
              pdolab_config_scenario(cfg), n, pass, fail, flagged,
              static_cast<unsigned long long>(pdolab_config_seed(cfg)), dir.c_str(), pdolab_config_scenario(cfg));
  return pdolab_result_exit_status(guard.r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdo-lab: desk-scale pseudodifferential operator experiments"};
  app.require_subcommand(1);
  app.add_subcommand("list", "list registered scenarios");
  auto* run_cmd = app.add_subcommand("run", "run one scenario");
  std::string config, scenario, out;
  int workers = 0;
  auto* opt_config = run_cmd->add_option("--config", config, "JSON experiment config");
  auto* opt_scenario = run_cmd->add_option("--scenario", scenario, "registered scenario with its defaults");
  opt_config->excludes(opt_scenario);
  run_cmd->add_option("--out", out, "output directory (default: config 'out' or ./pdo-lab-out)");
  run_cmd->add_option("--workers", workers, "parallel cases")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  if (app.got_subcommand("list")) return list();
  if (config.empty() && scenario.empty()) {
    std::fprintf(stderr, "pdo-lab: config error: run needs --config or --scenario\n");
    return kExitConfig;
  }
  return run(config, scenario, out, workers);
}
