//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints one PASS/FAIL line with the
// measured quantities; the process exits nonzero when any criterion fails.
//
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "cfwsee/campaign.hpp"
#include "cfwsee/properties.hpp"

using namespace cfwsee;

namespace {

struct Criterion {
  std::string id;
  bool pass = false;
  std::string detail;
};

std::vector<Criterion> g_results;

void record(const std::string& id, bool pass, const std::string& detail) {
  std::printf("[%s] %-4s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  std::fflush(stdout);
  g_results.push_back({id, pass, detail});
}

std::string fmt2(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[240];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
  return buf;
}

CampaignConfig desk_campaign(std::uint64_t seed, int trials, double omega,
                             std::vector<std::string> algorithms) {
  CampaignConfig cfg = desk_preset();
  cfg.sim.rng_seed = seed;
  cfg.num_trials = trials;
  cfg.omega = omega;
  cfg.algorithms = std::move(algorithms);
  cfg.solve.enforce_qos = false;
  cfg.threads = 0;
  return cfg;
}

double mean_final_wsee(const CampaignReport& report, const std::string& algo) {
  for (const auto& agg : report.aggregates) {
    if (agg.algorithm == algo) return agg.mean_wsee;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Criterion 1: desk-scale ordering of the three schemes.
void criterion1() {
  const CampaignConfig cfg =
      desk_campaign(101, 50, 1.0, {kAlgoNestedQt, kAlgoDinkelbachLike, kAlgoFullPower});
  const CampaignReport report = run_campaign(cfg);
  const double qt = mean_final_wsee(report, kAlgoNestedQt);
  const double dink = mean_final_wsee(report, kAlgoDinkelbachLike);
  const double full = mean_final_wsee(report, kAlgoFullPower);
  const bool gap_full = qt >= 1.05 * full;
  const bool gap_dink = qt >= 1.02 * dink;
  record("C1", gap_full && gap_dink,
         fmt2("mean WSEE: QT %.4e, Dinkelbach %.4e, full %.4e", qt, dink, full) +
             fmt2("; QT/full %.4f (need >= 1.05)", qt / full) +
             fmt2("; QT/Dinkelbach %.6f (need >= 1.02)", qt / dink));
}

// Criterion 2: monotone nested-QT traces and the stepwise surrogate chain.
void criterion2() {
  const int trials = 100;
  CampaignConfig cfg = desk_campaign(202, trials, 1.0, {kAlgoNestedQt});
  const auto profiles = build_profiles(cfg);
  int bad_traces = 0;
  double worst_trace_drop = 0.0;
  // chain deltas indexed: 0 = combiner step (d), 1 = z step (c), 2 = y step (b), 3 = power step (a)
  int bad_trials_per_step[4] = {0, 0, 0, 0};
  double worst_drop_per_step[4] = {0.0, 0.0, 0.0, 0.0};
  for (int t = 0; t < trials; ++t) {
    RandomStream rng(RandomStream::derive_child(cfg.sim.rng_seed, static_cast<std::uint64_t>(t)));
    const NetworkScenario scen = generate_scenario(cfg.sim, profiles, rng);
    const ChannelStatistics stats = compute_statistics(scen, cfg.sim);
    const SolverState st = algorithm2_nested_qt(scen, stats, cfg.sim, cfg.solve);

    bool trace_ok = true;
    for (std::size_t i = 1; i < st.objective_trace.size(); ++i) {
      const double a = st.objective_trace[i - 1];
      const double b = st.objective_trace[i];
      const double drop = (a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
      worst_trace_drop = std::max(worst_trace_drop, drop);
      if (drop > 1e-8) trace_ok = false;
    }
    if (!trace_ok) ++bad_traces;

    bool step_bad[4] = {false, false, false, false};
    auto drop_of = [](double before, double after) {
      if (!std::isfinite(before) || !std::isfinite(after)) {
        return std::numeric_limits<double>::infinity();
      }
      return (before - after) / std::max({std::abs(before), std::abs(after), 1.0});
    };
    for (const auto& c : st.qt_chain) {
      const double drops[4] = {drop_of(c.before_u, c.after_u), drop_of(c.after_u, c.after_z),
                               drop_of(c.after_z, c.after_y), drop_of(c.after_y, c.after_q)};
      for (int s = 0; s < 4; ++s) {
        worst_drop_per_step[s] = std::max(worst_drop_per_step[s], drops[s]);
        if (drops[s] > 1e-8) step_bad[s] = true;
      }
    }
    for (int s = 0; s < 4; ++s) bad_trials_per_step[s] += step_bad[s] ? 1 : 0;
  }
  const bool pass = bad_traces == 0 && bad_trials_per_step[0] == 0 && bad_trials_per_step[1] == 0 &&
                    bad_trials_per_step[2] == 0 && bad_trials_per_step[3] == 0;
  record("C2", pass,
         fmt2("100 trials: %g non-monotone traces (worst rel. drop %.2e); ",
              static_cast<double>(bad_traces), worst_trace_drop) +
             fmt2("power step (a): %g bad trials (worst %.2e); ",
                  static_cast<double>(bad_trials_per_step[3]), worst_drop_per_step[3]) +
             fmt2("y step (b): %g bad trials (worst %.2e); ",
                  static_cast<double>(bad_trials_per_step[2]), worst_drop_per_step[2]) +
             fmt2("z step (c): %g bad trials (worst %.2e); ",
                  static_cast<double>(bad_trials_per_step[1]), worst_drop_per_step[1]) +
             fmt2("combiner step (d): %g bad trials (worst %.2e)",
                  static_cast<double>(bad_trials_per_step[0]), worst_drop_per_step[0]));
}

// Criterion 3: the per-ratio loop's characteristic rise-then-decay.
void criterion3() {
  const int trials = 100;
  CampaignConfig cfg = desk_campaign(303, trials, 1.0, {kAlgoDinkelbachLike});
  const auto profiles = build_profiles(cfg);
  int decayed = 0;
  for (int t = 0; t < trials; ++t) {
    RandomStream rng(RandomStream::derive_child(cfg.sim.rng_seed, static_cast<std::uint64_t>(t)));
    const NetworkScenario scen = generate_scenario(cfg.sim, profiles, rng);
    const ChannelStatistics stats = compute_statistics(scen, cfg.sim);
    const SolverState st = algorithm1_dinkelbach_like(scen, stats, cfg.sim, cfg.solve);
    const auto& trace = st.objective_trace;
    const auto peak_it = std::max_element(trace.begin(), trace.end());
    const std::size_t peak = static_cast<std::size_t>(peak_it - trace.begin());
    for (std::size_t j = peak + 1; j < trace.size(); ++j) {
      if (trace[j] < *peak_it * (1.0 - 1e-9)) {
        ++decayed;
        break;
      }
    }
  }
  record("C3", decayed >= 1,
         fmt2("%g of 100 trials decay strictly below their peak after reaching it",
              static_cast<double>(decayed)));
}

// Criterion 4: priority weights steer group EE and SE.
void criterion4() {
  const int trials = 50;
  auto run_with_omega = [&](double omega) {
    const CampaignConfig cfg = desk_campaign(404, trials, omega, {kAlgoNestedQt});
    return run_campaign(cfg);
  };
  const CampaignReport low = run_with_omega(1.0);
  const CampaignReport high = run_with_omega(10.0);
  auto group_means = [](const CampaignReport& r, const std::string& group) {
    for (const auto& agg : r.aggregates) {
      for (const auto& g : agg.groups) {
        if (g.name == group) return std::pair<double, double>{g.mean_ee, g.mean_se};
      }
    }
    return std::pair<double, double>{0.0, 0.0};
  };
  const auto [hi_ee_1, hi_se_1] = group_means(low, "high");
  const auto [hi_ee_10, hi_se_10] = group_means(high, "high");
  const auto [lo_ee_1, lo_se_1] = group_means(low, "low");
  const auto [lo_ee_10, lo_se_10] = group_means(high, "low");
  const bool pass = hi_ee_10 > hi_ee_1 && hi_se_10 > hi_se_1 && lo_ee_10 < lo_ee_1 && lo_se_10 < lo_se_1;
  record("C4", pass,
         fmt2("high group: EE %.4e -> %.4e, SE %.4f -> %.4f (must rise); ", hi_ee_1, hi_ee_10, hi_se_1,
              hi_se_10) +
             fmt2("low group: EE %.4e -> %.4e, SE %.4f -> %.4f (must fall)", lo_ee_1, lo_ee_10, lo_se_1,
                  lo_se_10));
}

void from_property(const std::string& id, const props::PropertyResult& r) {
  record(id, r.pass, r.name + ": " + r.detail);
}

// Criterion 10: byte-identical reports for a fixed master seed, serial and parallel.
void criterion10() {
  CampaignConfig cfg = desk_campaign(505, 8, 1.0,
                                     {kAlgoNestedQt, kAlgoDinkelbachLike, kAlgoWgee, kAlgoFullPower});
  cfg.threads = 1;
  const auto serial = render_report_files(run_campaign(cfg));
  const auto serial_again = render_report_files(run_campaign(cfg));
  cfg.threads = 4;
  const auto parallel = render_report_files(run_campaign(cfg));
  bool identical = serial.size() == parallel.size() && serial.size() == serial_again.size();
  std::string mismatch = "none";
  for (const auto& [name, contents] : serial) {
    const auto it_p = parallel.find(name);
    const auto it_r = serial_again.find(name);
    if (it_p == parallel.end() || it_p->second != contents || it_r == serial_again.end() ||
        it_r->second != contents) {
      identical = false;
      mismatch = name;
      break;
    }
  }
  record("C10", identical,
         "rerun and 4-thread reports byte-identical to the serial run (first mismatch: " + mismatch +
             ")");
}

}  // namespace

int main() {
  std::printf("acceptance suite: desk preset M=64 N=2 K=8, fixed seeds\n");

  criterion1();
  criterion2();
  criterion3();
  criterion4();

  // Criterion 5: fixed-point touch properties and maximizer scans.
  {
    const auto touch = props::touch_properties(5001, 1000);
    const auto scans = props::surrogate_maximizer_scans(5002, 300);
    record("C5", touch.pass && scans.pass, touch.detail + "; " + scans.detail);
  }

  // Criterion 6: concavity of the weighted surrogate and of sqrt(num).
  {
    const auto hess = props::concavity_hessian(6001, 100);
    const auto mid = props::sqrt_num_midpoint_concavity(6002, 200);
    const auto signs = props::outer_function_derivative_signs();
    record("C6", hess.pass && mid.pass && signs.pass,
           hess.detail + "; " + mid.detail + "; " + signs.detail);
  }

  // Criterion 7: closed-form combiner dominance and scale invariance.
  {
    const auto dom = props::lsfd_dominance(7001, 100, 1000);
    const auto scale = props::lsfd_scale_invariance(7002, 200);
    record("C7", dom.pass && scale.pass, dom.detail + "; " + scale.detail);
  }

  // Criterion 8: rate-constraint reformulation sign equivalence.
  from_property("C8", props::qos_reformulation_equivalence(8001, 10000));

  // Criterion 9: q-subproblem vs golden section, and probe dominance.
  {
    const auto golden = props::q_solver_golden_section(9001, 50);
    const auto probes = props::q_solver_probe_dominance(9002, 30, 100);
    record("C9", golden.pass && probes.pass, golden.detail + "; " + probes.detail);
  }

  criterion10();

  int failed = 0;
  for (const auto& r : g_results) failed += r.pass ? 0 : 1;
  std::printf("acceptance: %d/%d criteria passed\n", static_cast<int>(g_results.size()) - failed,
              static_cast<int>(g_results.size()));
  return failed == 0 ? 0 : 1;
}
