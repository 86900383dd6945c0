//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfwsee/campaign.hpp"
#include "cfwsee/properties.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

struct CommonFlags {
  std::string config_path;
  std::string preset = "desk";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = -1;
  double omega = -1.0;
  std::string algos;
  std::string out_dir;
  int threads = -1;
};

cfwsee::CampaignConfig resolve_config(const CommonFlags& flags) {
  cfwsee::CampaignConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = cfwsee::load_config_file(flags.config_path);
  } else if (flags.preset == "desk") {
    cfg = cfwsee::desk_preset();
  } else if (flags.preset == "paper") {
    cfg = cfwsee::paper_preset();
  } else {
    throw std::invalid_argument("unknown preset: " + flags.preset + " (expected desk or paper)");
  }
  if (flags.seed_set) cfg.sim.rng_seed = flags.seed;
  if (flags.trials >= 0) cfg.num_trials = flags.trials;
  if (flags.omega > 0.0) cfg.omega = flags.omega;
  if (!flags.algos.empty()) {
    cfg.algorithms.clear();
    std::stringstream ss(flags.algos);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cfg.algorithms.push_back(item);
    }
  }
  if (!flags.out_dir.empty()) cfg.output_dir = flags.out_dir;
  if (const char* env = std::getenv("CFWSEE_OUT_DIR"); env && *env) cfg.output_dir = env;
  if (flags.threads >= 0) cfg.threads = flags.threads;
  return cfg;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON campaign config file");
  cmd->add_option("--preset", flags.preset, "Built-in config: desk or paper")->default_val("desk");
  cmd->add_option("--seed", flags.seed, "Master seed override")->each([&](const std::string&) {
    flags.seed_set = true;
  });
  cmd->add_option("--trials", flags.trials, "Trial count override");
  cmd->add_option("--omega", flags.omega, "Priority weight ratio override");
  cmd->add_option("--algos", flags.algos,
                  "Comma list of nested_qt,dinkelbach_like,wgee,full_power");
  cmd->add_option("--out", flags.out_dir, "Output directory (env CFWSEE_OUT_DIR overrides)");
  cmd->add_option("--threads", flags.threads, "Worker threads (0 = hardware)");
}

int cmd_run(const CommonFlags& flags) {
  const cfwsee::CampaignConfig cfg = resolve_config(flags);
  for (const auto& w : cfg.validate()) std::fprintf(stderr, "warning: %s\n", w.c_str());

  const cfwsee::CampaignReport report = cfwsee::run_campaign(cfg);
  cfwsee::export_report(report, cfg.output_dir);

  int infeasible_total = 0;
  for (const auto& agg : report.aggregates) {
    std::printf("%-16s mean WSEE %.6e bits/J  mean WGEE %.6e bits/J  (%d feasible, %d infeasible)\n",
                agg.algorithm.c_str(), agg.mean_wsee, agg.mean_wgee, agg.feasible_trials,
                agg.infeasible_trials);
    infeasible_total += agg.infeasible_trials;
  }
  std::printf("report written to %s\n", cfg.output_dir.c_str());
  const bool any_feasible =
      report.trials.empty() ||
      std::any_of(report.trials.begin(), report.trials.end(), [](const auto& t) { return t.feasible; });
  if (!any_feasible) {
    std::fprintf(stderr, "error: every trial was rate-infeasible\n");
    return kExitRuntimeError;
  }
  return kExitOk;
}

int cmd_check(const CommonFlags& flags) {
  const cfwsee::CampaignConfig cfg = resolve_config(flags);
  const auto warnings = cfg.validate();
  for (const auto& w : warnings) std::printf("warning: %s\n", w.c_str());
  std::printf("config OK: M=%d N=%d K=%d trials=%d omega=%g\n", cfg.sim.num_aps,
              cfg.sim.antennas_per_ap, cfg.sim.num_ues, cfg.num_trials, cfg.omega);
  return kExitOk;
}

int cmd_props(std::uint64_t seed, double scale) {
  const auto results = cfwsee::props::run_all(seed, scale);
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("[%s] %-32s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitRuntimeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink cell-free massive MIMO energy-efficiency simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run a Monte-Carlo campaign and export reports");
  add_common_flags(run, run_flags);

  CommonFlags check_flags;
  CLI::App* check = app.add_subcommand("check", "Validate a config and exit");
  add_common_flags(check, check_flags);

  std::uint64_t props_seed = 20260101;
  double props_scale = 1.0;
  CLI::App* props = app.add_subcommand("props", "Run the randomized property suites");
  props->add_option("--seed", props_seed, "Property suite seed");
  props->add_option("--scale", props_scale, "Instance-count scale factor");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (check->parsed()) return cmd_check(check_flags);
    if (props->parsed()) return cmd_props(props_seed, props_scale);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntimeError;
  }
  return kExitConfigError;
}
