//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#include "cfwsee/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace cfwsee {

namespace {

using ordered_json = nlohmann::ordered_json;

// Full round-trip precision so aggregates recompute exactly from the files.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool known_algorithm(const std::string& name) {
  return name == kAlgoNestedQt || name == kAlgoDinkelbachLike || name == kAlgoWgee ||
         name == kAlgoFullPower;
}

}  // namespace

std::vector<std::string> CampaignConfig::validate() const {
  std::vector<std::string> warnings = sim.validate();
  if (priority_groups.empty()) throw std::invalid_argument("priority_groups must not be empty");
  if (priority_groups.size() > 2) {
    throw std::invalid_argument("priority_groups supports at most two groups (high, low)");
  }
  int total = 0;
  for (const auto& g : priority_groups) {
    if (g.count < 0) throw std::invalid_argument("priority_groups[].count must be >= 0");
    if (!(g.p_max_w > 0.0)) throw std::invalid_argument("priority_groups[].p_max_w must be > 0");
    if (!(g.pa_efficiency > 0.0 && g.pa_efficiency <= 1.0)) {
      throw std::invalid_argument("priority_groups[].pa_efficiency must be in (0, 1]");
    }
    if (!(g.circuit_power_w >= 0.0)) {
      throw std::invalid_argument("priority_groups[].circuit_power_w must be >= 0");
    }
    if (!(g.min_rate_bps_hz >= 0.0)) {
      throw std::invalid_argument("priority_groups[].min_rate_bps_hz must be >= 0");
    }
    total += g.count;
  }
  if (total != sim.num_ues) {
    throw std::invalid_argument("priority group counts must sum to sim.num_ues");
  }
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  if (algorithms.empty()) throw std::invalid_argument("algorithms must not be empty");
  std::set<std::string> seen;
  for (const auto& a : algorithms) {
    if (!known_algorithm(a)) throw std::invalid_argument("unknown algorithm: " + a);
    if (!seen.insert(a).second) throw std::invalid_argument("duplicate algorithm: " + a);
  }
  if (num_trials < 0) throw std::invalid_argument("num_trials must be >= 0");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  solve.validate();
  return warnings;
}

std::vector<double> weights_from_omega(const std::vector<PriorityGroup>& groups, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("weights_from_omega: omega must be > 0");
  double total = 0.0;
  for (const auto& g : groups) total += g.count;
  if (groups.size() == 1) return {1.0};
  if (groups.size() != 2) throw std::invalid_argument("weights_from_omega: expected 1 or 2 groups");
  const double n_high = groups[0].count;
  const double n_low = groups[1].count;
  const double w_low = total / (n_high * omega + n_low);
  return {omega * w_low, w_low};
}

std::vector<UEProfile> build_profiles(const CampaignConfig& cfg) {
  const std::vector<double> group_weights = weights_from_omega(cfg.priority_groups, cfg.omega);
  const double noise = cfg.sim.noise_power_w();
  std::vector<UEProfile> profiles;
  profiles.reserve(static_cast<std::size_t>(cfg.sim.num_ues));
  for (std::size_t g = 0; g < cfg.priority_groups.size(); ++g) {
    const auto& group = cfg.priority_groups[g];
    UEProfile p;
    p.weight = group_weights[g];
    p.p_max_w = group.p_max_w;
    p.min_rate_bps_hz = group.min_rate_bps_hz;
    p.pa_efficiency = group.pa_efficiency;
    p.circuit_power_w = group.circuit_power_w;
    const double pilot_power = group.pilot_power_w >= 0.0 ? group.pilot_power_w : group.p_max_w;
    p.pilot_snr = pilot_power / noise;
    p.validate();
    for (int i = 0; i < group.count; ++i) profiles.push_back(p);
  }
  normalize_weights(profiles);
  return profiles;
}

CampaignConfig paper_preset() {
  CampaignConfig cfg;
  cfg.sim = SimConfig{};  // 1 km square, M=256, N=4, K=16, Table-style radio numbers
  cfg.priority_groups = {
      {.name = "high", .count = 8, .p_max_w = 0.5, .min_rate_bps_hz = 1.0, .pa_efficiency = 0.4,
       .circuit_power_w = 1.0, .pilot_power_w = 0.5},
      {.name = "low", .count = 8, .p_max_w = 0.2, .min_rate_bps_hz = 0.5, .pa_efficiency = 0.4,
       .circuit_power_w = 1.0, .pilot_power_w = 0.2},
  };
  cfg.omega = 1.0;
  cfg.num_trials = 50;
  cfg.output_dir = "out";
  cfg.solve.tolerance = 1e2;
  cfg.solve.relative_tolerance = 1e-5;
  cfg.solve.max_iter = 150;
  return cfg;
}

CampaignConfig desk_preset() {
  CampaignConfig cfg = paper_preset();
  cfg.sim.num_aps = 64;
  cfg.sim.antennas_per_ap = 2;
  cfg.sim.num_ues = 8;
  cfg.priority_groups[0].count = 4;
  cfg.priority_groups[1].count = 4;
  return cfg;
}

namespace {

void apply_sim_json(SimConfig& sim, const ordered_json& j) {
  if (j.contains("area_side_m")) sim.area_side_m = j.at("area_side_m").get<double>();
  if (j.contains("num_aps")) sim.num_aps = j.at("num_aps").get<int>();
  if (j.contains("antennas_per_ap")) sim.antennas_per_ap = j.at("antennas_per_ap").get<int>();
  if (j.contains("num_ues")) sim.num_ues = j.at("num_ues").get<int>();
  if (j.contains("bandwidth_hz")) sim.bandwidth_hz = j.at("bandwidth_hz").get<double>();
  if (j.contains("noise_figure_db")) sim.noise_figure_db = j.at("noise_figure_db").get<double>();
  if (j.contains("carrier_freq_hz")) sim.carrier_freq_hz = j.at("carrier_freq_hz").get<double>();
  if (j.contains("coherence_len")) sim.coherence_len = j.at("coherence_len").get<int>();
  if (j.contains("pilot_len")) sim.pilot_len = j.at("pilot_len").get<int>();
  if (j.contains("assoc_threshold")) sim.assoc_threshold = j.at("assoc_threshold").get<double>();
  if (j.contains("shadowing_std_db")) sim.shadowing_std_db = j.at("shadowing_std_db").get<double>();
  if (j.contains("pathloss_const_db")) sim.pathloss_const_db = j.at("pathloss_const_db").get<double>();
  if (j.contains("d0_m")) sim.d0_m = j.at("d0_m").get<double>();
  if (j.contains("d1_m")) sim.d1_m = j.at("d1_m").get<double>();
  if (j.contains("pathloss_dist_scale_m")) {
    sim.pathloss_dist_scale_m = j.at("pathloss_dist_scale_m").get<double>();
  }
  if (j.contains("equal_pilot_snr_in_sinr")) {
    sim.equal_pilot_snr_in_sinr = j.at("equal_pilot_snr_in_sinr").get<bool>();
  }
  if (j.contains("rng_seed")) sim.rng_seed = j.at("rng_seed").get<std::uint64_t>();
}

void apply_solve_json(SolveOptions& solve, const ordered_json& j) {
  if (j.contains("tolerance")) solve.tolerance = j.at("tolerance").get<double>();
  if (j.contains("relative_tolerance")) solve.relative_tolerance = j.at("relative_tolerance").get<double>();
  if (j.contains("max_iter")) solve.max_iter = j.at("max_iter").get<int>();
  if (j.contains("inner_tolerance")) solve.inner_tolerance = j.at("inner_tolerance").get<double>();
  if (j.contains("step_shrink")) solve.step_shrink = j.at("step_shrink").get<double>();
  if (j.contains("enforce_qos")) solve.enforce_qos = j.at("enforce_qos").get<bool>();
  if (j.contains("max_inner_iter")) solve.max_inner_iter = j.at("max_inner_iter").get<int>();
}

PriorityGroup group_from_json(const ordered_json& j) {
  PriorityGroup g;
  if (j.contains("name")) g.name = j.at("name").get<std::string>();
  g.count = j.at("count").get<int>();
  if (j.contains("p_max_w")) g.p_max_w = j.at("p_max_w").get<double>();
  if (j.contains("min_rate_bps_hz")) g.min_rate_bps_hz = j.at("min_rate_bps_hz").get<double>();
  if (j.contains("pa_efficiency")) g.pa_efficiency = j.at("pa_efficiency").get<double>();
  if (j.contains("circuit_power_w")) g.circuit_power_w = j.at("circuit_power_w").get<double>();
  if (j.contains("pilot_power_w")) g.pilot_power_w = j.at("pilot_power_w").get<double>();
  return g;
}

}  // namespace

CampaignConfig config_from_json_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  CampaignConfig cfg;
  cfg.priority_groups.clear();
  try {
    if (j.contains("sim")) apply_sim_json(cfg.sim, j.at("sim"));
    if (j.contains("priority_groups")) {
      for (const auto& gj : j.at("priority_groups")) cfg.priority_groups.push_back(group_from_json(gj));
    }
    if (j.contains("omega")) cfg.omega = j.at("omega").get<double>();
    if (j.contains("algorithms")) cfg.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    if (j.contains("num_trials")) cfg.num_trials = j.at("num_trials").get<int>();
    if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("solve")) apply_solve_json(cfg.solve, j.at("solve"));
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config field error: ") + e.what());
  }
  if (cfg.priority_groups.empty()) {
    PriorityGroup g;
    g.count = cfg.sim.num_ues;
    cfg.priority_groups.push_back(g);
  }
  return cfg;
}

CampaignConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json_text(text);
}

std::string config_to_json_text(const CampaignConfig& cfg) {
  ordered_json sim{
      {"area_side_m", cfg.sim.area_side_m},
      {"num_aps", cfg.sim.num_aps},
      {"antennas_per_ap", cfg.sim.antennas_per_ap},
      {"num_ues", cfg.sim.num_ues},
      {"bandwidth_hz", cfg.sim.bandwidth_hz},
      {"noise_figure_db", cfg.sim.noise_figure_db},
      {"carrier_freq_hz", cfg.sim.carrier_freq_hz},
      {"coherence_len", cfg.sim.coherence_len},
      {"pilot_len", cfg.sim.pilot_len},
      {"assoc_threshold", cfg.sim.assoc_threshold},
      {"shadowing_std_db", cfg.sim.shadowing_std_db},
      {"pathloss_const_db", cfg.sim.pathloss_const_db},
      {"d0_m", cfg.sim.d0_m},
      {"d1_m", cfg.sim.d1_m},
      {"pathloss_dist_scale_m", cfg.sim.pathloss_dist_scale_m},
      {"equal_pilot_snr_in_sinr", cfg.sim.equal_pilot_snr_in_sinr},
      {"rng_seed", cfg.sim.rng_seed},
  };
  ordered_json groups = ordered_json::array();
  for (const auto& g : cfg.priority_groups) {
    groups.push_back(ordered_json{
        {"name", g.name},
        {"count", g.count},
        {"p_max_w", g.p_max_w},
        {"min_rate_bps_hz", g.min_rate_bps_hz},
        {"pa_efficiency", g.pa_efficiency},
        {"circuit_power_w", g.circuit_power_w},
        {"pilot_power_w", g.pilot_power_w},
    });
  }
  ordered_json solve{
      {"tolerance", cfg.solve.tolerance},
      {"relative_tolerance", cfg.solve.relative_tolerance},
      {"max_iter", cfg.solve.max_iter},
      {"inner_tolerance", cfg.solve.inner_tolerance},
      {"step_shrink", cfg.solve.step_shrink},
      {"enforce_qos", cfg.solve.enforce_qos},
      {"max_inner_iter", cfg.solve.max_inner_iter},
  };
  ordered_json root{
      {"sim", sim},
      {"priority_groups", groups},
      {"omega", cfg.omega},
      {"algorithms", cfg.algorithms},
      {"num_trials", cfg.num_trials},
      {"output_dir", cfg.output_dir},
      {"solve", solve},
      {"threads", cfg.threads},
  };
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Campaign execution

namespace {

SolverState dispatch_algorithm(const std::string& name, const NetworkScenario& scen,
                               const ChannelStatistics& stats, const SimConfig& sim,
                               const SolveOptions& solve) {
  if (name == kAlgoNestedQt) return algorithm2_nested_qt(scen, stats, sim, solve);
  if (name == kAlgoDinkelbachLike) return algorithm1_dinkelbach_like(scen, stats, sim, solve);
  if (name == kAlgoWgee) return algorithm3_wgee(scen, stats, sim, solve);
  if (name == kAlgoFullPower) return full_power_baseline(scen, stats, sim, solve);
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::vector<TrialResult> run_trial(const CampaignConfig& cfg, const std::vector<UEProfile>& profiles,
                                   int trial) {
  const std::uint64_t seed = RandomStream::derive_child(cfg.sim.rng_seed, static_cast<std::uint64_t>(trial));
  RandomStream rng(seed);
  const NetworkScenario scen = generate_scenario(cfg.sim, profiles, rng);
  const ChannelStatistics stats = compute_statistics(scen, cfg.sim);
  const std::uint64_t hash = scenario_hash(scen);

  std::vector<TrialResult> records;
  records.reserve(cfg.algorithms.size());
  for (const auto& algo : cfg.algorithms) {
    const SolverState st = dispatch_algorithm(algo, scen, stats, cfg.sim, cfg.solve);
    TrialResult r;
    r.trial = trial;
    r.seed = seed;
    r.scenario_hash = hash;
    r.algorithm = algo;
    r.feasible = st.feasible;
    r.converged = st.converged;
    r.iterations = st.iterations_used;
    r.final_wsee = wsee(st.q, st.U, scen, stats, cfg.sim);
    r.final_wgee = wgee(st.q, st.U, scen, stats, cfg.sim);
    r.q_w = st.q;
    r.se.resize(st.q.size());
    r.ee.resize(st.q.size());
    for (int k = 0; k < static_cast<int>(st.q.size()); ++k) {
      r.se[k] = se_ul(k, st.q, st.U.column(k), scen, stats, cfg.sim);
      r.ee[k] = ee_k(k, st.q, st.U, scen, stats, cfg.sim);
    }
    r.trace = st.objective_trace;
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<std::string> group_names_of_ues(const CampaignConfig& cfg) {
  std::vector<std::string> names;
  for (const auto& g : cfg.priority_groups) {
    for (int i = 0; i < g.count; ++i) names.push_back(g.name);
  }
  return names;
}

void aggregate_report(CampaignReport& report) {
  const auto& cfg = report.config;
  for (const auto& algo : cfg.algorithms) {
    AlgoAggregate agg;
    agg.algorithm = algo;
    double wsee_sum = 0.0;
    double wgee_sum = 0.0;
    struct Acc {
      double ee = 0.0;
      double se = 0.0;
      long long n = 0;
    };
    std::vector<Acc> group_acc(cfg.priority_groups.size());
    for (const auto& trial : report.trials) {
      if (trial.algorithm != algo) continue;
      if (!trial.feasible) {
        ++agg.infeasible_trials;
        continue;
      }
      ++agg.feasible_trials;
      wsee_sum += trial.final_wsee;
      wgee_sum += trial.final_wgee;
      int ue = 0;
      for (std::size_t g = 0; g < cfg.priority_groups.size(); ++g) {
        for (int i = 0; i < cfg.priority_groups[g].count; ++i, ++ue) {
          group_acc[g].ee += trial.ee[ue];
          group_acc[g].se += trial.se[ue];
          ++group_acc[g].n;
        }
      }
    }
    if (agg.feasible_trials > 0) {
      agg.mean_wsee = wsee_sum / agg.feasible_trials;
      agg.mean_wgee = wgee_sum / agg.feasible_trials;
    }
    for (std::size_t g = 0; g < cfg.priority_groups.size(); ++g) {
      GroupAggregate ga;
      ga.name = cfg.priority_groups[g].name;
      if (group_acc[g].n > 0) {
        ga.mean_ee = group_acc[g].ee / static_cast<double>(group_acc[g].n);
        ga.mean_se = group_acc[g].se / static_cast<double>(group_acc[g].n);
      }
      agg.groups.push_back(std::move(ga));
    }
    report.aggregates.push_back(std::move(agg));
  }
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  CampaignReport report;
  report.config = cfg;
  report.profiles = build_profiles(cfg);
  report.group_of_ue = group_names_of_ues(cfg);

  std::vector<std::vector<TrialResult>> per_trial(static_cast<std::size_t>(cfg.num_trials));
  int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min(workers, std::max(1, cfg.num_trials)));

  if (workers == 1) {
    for (int t = 0; t < cfg.num_trials; ++t) per_trial[t] = run_trial(cfg, report.profiles, t);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      try {
        while (true) {
          const int t = next.fetch_add(1);
          if (t >= cfg.num_trials) break;
          per_trial[t] = run_trial(cfg, report.profiles, t);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  for (auto& records : per_trial) {
    for (auto& r : records) report.trials.push_back(std::move(r));
  }
  aggregate_report(report);
  return report;
}

// ---------------------------------------------------------------------------
// Report rendering

namespace {

std::string render_per_trial_csv(const CampaignReport& report) {
  std::string out =
      "trial,seed,scenario_hash,algorithm,feasible,converged,iterations,ue,priority,weight,"
      "q_w,se_bits_per_hz,ee_bits_per_joule,wsee_bits_per_joule,wgee_bits_per_joule\n";
  for (const auto& t : report.trials) {
    for (std::size_t ue = 0; ue < t.q_w.size(); ++ue) {
      out += std::to_string(t.trial) + ',' + std::to_string(t.seed) + ',' +
             std::to_string(t.scenario_hash) + ',' + t.algorithm + ',' +
             (t.feasible ? "1" : "0") + ',' + (t.converged ? "1" : "0") + ',' +
             std::to_string(t.iterations) + ',' + std::to_string(ue) + ',' +
             report.group_of_ue[ue] + ',' + fmt(report.profiles[ue].weight) + ',' +
             fmt(t.q_w[ue]) + ',' + fmt(t.se[ue]) + ',' + fmt(t.ee[ue]) + ',' +
             fmt(t.final_wsee) + ',' + fmt(t.final_wgee) + '\n';
    }
  }
  return out;
}

std::string render_traces_csv(const CampaignReport& report) {
  std::string out = "trial,algorithm,iteration,objective\n";
  for (const auto& t : report.trials) {
    for (std::size_t i = 0; i < t.trace.size(); ++i) {
      out += std::to_string(t.trial) + ',' + t.algorithm + ',' + std::to_string(i) + ',' +
             fmt(t.trace[i]) + '\n';
    }
  }
  return out;
}

std::string render_cdf_csv(const CampaignReport& report, const std::string& algo,
                           const std::string& group, bool use_ee) {
  std::vector<double> samples;
  for (const auto& t : report.trials) {
    if (t.algorithm != algo || !t.feasible) continue;
    for (std::size_t ue = 0; ue < t.q_w.size(); ++ue) {
      if (group != "all" && report.group_of_ue[ue] != group) continue;
      samples.push_back(use_ee ? t.ee[ue] : t.se[ue]);
    }
  }
  std::sort(samples.begin(), samples.end());
  std::string out = use_ee ? "ee_bits_per_joule,cdf\n" : "se_bits_per_hz,cdf\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out += fmt(samples[i]) + ',' + fmt(static_cast<double>(i + 1) / static_cast<double>(samples.size())) +
           '\n';
  }
  return out;
}

ordered_json summary_json(const CampaignReport& report) {
  ordered_json algos = ordered_json::array();
  for (const auto& a : report.aggregates) {
    ordered_json groups = ordered_json::array();
    for (const auto& g : a.groups) {
      groups.push_back(ordered_json{
          {"name", g.name},
          {"mean_ee_bits_per_joule", g.mean_ee},
          {"mean_se_bits_per_hz", g.mean_se},
      });
    }
    algos.push_back(ordered_json{
        {"algorithm", a.algorithm},
        {"feasible_trials", a.feasible_trials},
        {"infeasible_trials", a.infeasible_trials},
        {"mean_wsee_bits_per_joule", a.mean_wsee},
        {"mean_wgee_bits_per_joule", a.mean_wgee},
        {"groups", groups},
    });
  }
  ordered_json config_echo = ordered_json::parse(config_to_json_text(report.config));
  config_echo.erase("threads");  // worker count does not affect any reported number
  return ordered_json{
      {"config", config_echo},
      {"num_trials", report.config.num_trials},
      {"aggregates", algos},
  };
}

}  // namespace

std::map<std::string, std::string> render_report_files(const CampaignReport& report) {
  std::map<std::string, std::string> files;
  files["per_trial.csv"] = render_per_trial_csv(report);
  files["traces.csv"] = render_traces_csv(report);
  files["summary.json"] = summary_json(report).dump(2) + "\n";

  std::vector<std::string> groups{"all"};
  for (const auto& g : report.config.priority_groups) groups.push_back(g.name);
  for (const auto& algo : report.config.algorithms) {
    for (const auto& g : groups) {
      files["cdf_ee_" + algo + "_" + g + ".csv"] = render_cdf_csv(report, algo, g, true);
      files["cdf_se_" + algo + "_" + g + ".csv"] = render_cdf_csv(report, algo, g, false);
    }
  }
  return files;
}

void export_report(const CampaignReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + out_dir + ": " + ec.message());
  for (const auto& [name, contents] : render_report_files(report)) {
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace cfwsee
