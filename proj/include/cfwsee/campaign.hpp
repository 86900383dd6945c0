//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cfwsee/optimizer.hpp"
#include "cfwsee/scenario.hpp"

namespace cfwsee {

inline constexpr const char* kAlgoNestedQt = "nested_qt";
inline constexpr const char* kAlgoDinkelbachLike = "dinkelbach_like";
inline constexpr const char* kAlgoWgee = "wgee";
inline constexpr const char* kAlgoFullPower = "full_power";

// A block of UEs sharing one profile. When two groups are configured the
// first is the high-priority one (omega scales its weight over the second's).
struct PriorityGroup {
  std::string name = "default";
  int count = 0;
  double p_max_w = 0.2;
  double min_rate_bps_hz = 0.0;
  double pa_efficiency = 0.4;
  double circuit_power_w = 1.0;
  double pilot_power_w = -1.0;  // < 0 means "use p_max_w"
};

struct CampaignConfig {
  SimConfig sim;
  std::vector<PriorityGroup> priority_groups;
  double omega = 1.0;  // weight ratio first group / second group
  std::vector<std::string> algorithms = {kAlgoNestedQt, kAlgoDinkelbachLike, kAlgoWgee, kAlgoFullPower};
  int num_trials = 1;
  std::string output_dir = "out";
  SolveOptions solve;
  int threads = 0;  // 0 -> hardware concurrency

  std::vector<std::string> validate() const;  // throws on hard errors, returns warnings
};

// Per-group weights with ratio omega between the two groups and the UE
// weights summing to the number of UEs.
std::vector<double> weights_from_omega(const std::vector<PriorityGroup>& groups, double omega);

// K profiles in group order, weights applied and normalized, pilot SNR
// resolved against the configured noise power.
std::vector<UEProfile> build_profiles(const CampaignConfig& cfg);

CampaignConfig desk_preset();   // M=64, N=2, K=8; CI-sized runs
CampaignConfig paper_preset();  // M=256, N=4, K=16 full-scale layout

CampaignConfig config_from_json_text(const std::string& text);
CampaignConfig load_config_file(const std::string& path);
std::string config_to_json_text(const CampaignConfig& cfg);

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t scenario_hash = 0;
  std::string algorithm;
  bool feasible = true;
  bool converged = false;
  int iterations = 0;
  double final_wsee = 0.0;
  double final_wgee = 0.0;
  std::vector<double> q_w;   // per UE
  std::vector<double> se;    // per UE, bits/s/Hz
  std::vector<double> ee;    // per UE, bits/joule
  std::vector<double> trace; // objective per iteration (incl. initial value)
};

struct GroupAggregate {
  std::string name;
  double mean_ee = 0.0;
  double mean_se = 0.0;
};

struct AlgoAggregate {
  std::string algorithm;
  int feasible_trials = 0;
  int infeasible_trials = 0;
  double mean_wsee = 0.0;
  double mean_wgee = 0.0;
  std::vector<GroupAggregate> groups;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<UEProfile> profiles;       // shared by all trials
  std::vector<std::string> group_of_ue;  // group name per UE
  std::vector<TrialResult> trials;       // trial-major, algorithm order as configured
  std::vector<AlgoAggregate> aggregates;
};

// Runs every configured algorithm on the same per-trial scenario. Trials are
// dispatched to a worker pool and merged by index, so the report is a pure
// function of the config (including the master seed) regardless of thread
// count.
CampaignReport run_campaign(const CampaignConfig& cfg);

// Rendered report files, keyed by file name. Writing them is export_report;
// keeping the rendering separate makes byte-identity checks trivial.
std::map<std::string, std::string> render_report_files(const CampaignReport& report);

void export_report(const CampaignReport& report, const std::string& out_dir);

}  // namespace cfwsee
