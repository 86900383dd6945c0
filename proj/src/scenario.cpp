//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#include "cfwsee/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cfwsee {

void UEProfile::validate() const {
  if (!(weight >= 0.0)) throw std::invalid_argument("ue_profile.weight must be >= 0");
  if (!(p_max_w >= 0.0)) throw std::invalid_argument("ue_profile.p_max_w must be >= 0");
  if (!(min_rate_bps_hz >= 0.0)) throw std::invalid_argument("ue_profile.min_rate_bps_hz must be >= 0");
  if (!(pa_efficiency > 0.0 && pa_efficiency <= 1.0)) {
    throw std::invalid_argument("ue_profile.pa_efficiency must be in (0, 1]");
  }
  if (!(circuit_power_w >= 0.0)) throw std::invalid_argument("ue_profile.circuit_power_w must be >= 0");
  if (!(pilot_snr >= 0.0)) throw std::invalid_argument("ue_profile.pilot_snr must be >= 0");
}

double normalize_weights(std::vector<UEProfile>& profiles) {
  double sum = 0.0;
  for (const auto& p : profiles) sum += p.weight;
  if (!(sum > 0.0)) throw std::invalid_argument("weight normalization needs a positive weight sum");
  const double scale = static_cast<double>(profiles.size()) / sum;
  for (auto& p : profiles) p.weight *= scale;
  return scale;
}

std::vector<std::string> SimConfig::validate() const {
  if (!(area_side_m >= 0.0)) throw std::invalid_argument("sim.area_side_m must be >= 0");
  if (num_aps < 1) throw std::invalid_argument("sim.num_aps must be >= 1");
  if (antennas_per_ap < 1) throw std::invalid_argument("sim.antennas_per_ap must be >= 1");
  if (num_ues < 1) throw std::invalid_argument("sim.num_ues must be >= 1");
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("sim.bandwidth_hz must be > 0");
  if (!(noise_figure_db >= 0.0)) throw std::invalid_argument("sim.noise_figure_db must be >= 0");
  if (pilot_len < 1 || pilot_len > coherence_len) {
    throw std::invalid_argument("sim.pilot_len must satisfy 0 < pilot_len <= coherence_len");
  }
  if (!(assoc_threshold > 0.0 && assoc_threshold <= 1.0)) {
    throw std::invalid_argument("sim.assoc_threshold must be in (0, 1]");
  }
  if (!(shadowing_std_db >= 0.0)) throw std::invalid_argument("sim.shadowing_std_db must be >= 0");
  if (!(d0_m < d1_m && d1_m < area_side_m)) {
    throw std::invalid_argument("sim geometry must satisfy d0_m < d1_m < area_side_m");
  }
  if (!(pathloss_dist_scale_m > 0.0)) {
    throw std::invalid_argument("sim.pathloss_dist_scale_m must be > 0");
  }
  std::vector<std::string> warnings;
  if (static_cast<long long>(num_aps) * antennas_per_ap < 4LL * num_ues) {
    warnings.push_back("sim: num_aps * antennas_per_ap < 4 * num_ues; favorable propagation "
                       "assumptions behind the closed-form rates get weak at this size");
  }
  return warnings;
}

std::pair<Matrix, Matrix> place_network(const SimConfig& cfg, RandomStream& rng) {
  Matrix aps(cfg.num_aps, 2);
  Matrix ues(cfg.num_ues, 2);
  for (int m = 0; m < cfg.num_aps; ++m) {
    aps(m, 0) = rng.uniform(0.0, cfg.area_side_m);
    aps(m, 1) = rng.uniform(0.0, cfg.area_side_m);
  }
  for (int k = 0; k < cfg.num_ues; ++k) {
    ues(k, 0) = rng.uniform(0.0, cfg.area_side_m);
    ues(k, 1) = rng.uniform(0.0, cfg.area_side_m);
  }
  return {std::move(aps), std::move(ues)};
}

double three_slope_pl_db(double d, double d0, double d1, double loss_const_db) {
  if (d > d1) return -loss_const_db - 35.0 * std::log10(d);
  if (d > d0) return -loss_const_db - 15.0 * std::log10(d1) - 20.0 * std::log10(d);
  return -loss_const_db - 15.0 * std::log10(d1) - 20.0 * std::log10(d0);
}

double path_loss_db(double d_m, const SimConfig& cfg) {
  return three_slope_pl_db(d_m, cfg.d0_m, cfg.d1_m, cfg.pathloss_const_db);
}

double link_path_loss_db(double d_m, const SimConfig& cfg) {
  const double s = cfg.pathloss_dist_scale_m;
  return three_slope_pl_db(d_m / s, cfg.d0_m / s, cfg.d1_m / s, cfg.pathloss_const_db);
}

double large_scale_fading(double pl_db, RandomStream& rng, const SimConfig& cfg) {
  const double shadow_db = cfg.shadowing_std_db * rng.normal();
  return std::pow(10.0, (pl_db + shadow_db) / 10.0);
}

std::vector<int> associate(std::span<const double> beta_col, double delta) {
  const int m_count = static_cast<int>(beta_col.size());
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("associate: delta must be in (0, 1]");
  double total = 0.0;
  for (double b : beta_col) {
    if (!(b > 0.0)) throw std::invalid_argument("associate: beta entries must be > 0");
    total += b;
  }
  std::vector<int> order(m_count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return beta_col[a] > beta_col[b]; });

  const double target = delta * total;
  std::vector<int> chosen;
  double cum = 0.0;
  for (int i = 0; i < m_count; ++i) {
    chosen.push_back(order[i]);
    cum += beta_col[order[i]];
    if (cum >= target || i == m_count - 1) break;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<int> assign_pilots(int num_ues, int tau_p, const Matrix& beta, RandomStream& /*rng*/) {
  if (tau_p < 1) throw std::invalid_argument("assign_pilots: tau_p must be >= 1");
  std::vector<int> pilots(num_ues, 0);
  if (num_ues <= tau_p) {
    for (int k = 0; k < num_ues; ++k) pilots[k] = k;
    return pilots;
  }
  // Strongest UEs first, then round-robin, so the heavy hitters spread over
  // distinct pilots and group sizes differ by at most one.
  std::vector<double> strongest(num_ues, 0.0);
  for (int k = 0; k < num_ues; ++k) {
    for (int m = 0; m < beta.rows(); ++m) strongest[k] = std::max(strongest[k], beta(m, k));
  }
  std::vector<int> order(num_ues);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return strongest[a] > strongest[b]; });
  for (int i = 0; i < num_ues; ++i) pilots[order[i]] = i % tau_p;
  return pilots;
}

std::vector<std::vector<int>> pilot_groups_from_index(std::span<const int> pilot_index) {
  const int k_count = static_cast<int>(pilot_index.size());
  std::vector<std::vector<int>> groups(k_count);
  for (int k = 0; k < k_count; ++k) {
    for (int j = 0; j < k_count; ++j) {
      if (pilot_index[j] == pilot_index[k]) groups[k].push_back(j);
    }
  }
  return groups;
}

Matrix compute_gamma(const Matrix& beta, const std::vector<std::vector<int>>& pilot_groups,
                     std::span<const UEProfile> profiles, int tau_p) {
  const int m_count = beta.rows();
  const int k_count = beta.cols();
  Matrix gamma(m_count, k_count);
  const double tau = static_cast<double>(tau_p);
  for (int m = 0; m < m_count; ++m) {
    for (int k = 0; k < k_count; ++k) {
      const double b = beta(m, k);
      if (!(b > 0.0)) throw std::invalid_argument("compute_gamma: beta entries must be > 0");
      double contamination = 0.0;
      for (int j : pilot_groups[k]) contamination += profiles[j].pilot_snr * beta(m, j);
      gamma(m, k) = tau * profiles[k].pilot_snr * b * b / (tau * contamination + 1.0);
    }
  }
  return gamma;
}

NetworkScenario generate_scenario(const SimConfig& cfg, std::span<const UEProfile> profiles,
                                  RandomStream& rng) {
  if (static_cast<int>(profiles.size()) != cfg.num_ues) {
    throw std::invalid_argument("generate_scenario: profile count must equal num_ues");
  }
  NetworkScenario scen;
  auto [aps, ues] = place_network(cfg, rng);
  scen.ap_positions = std::move(aps);
  scen.ue_positions = std::move(ues);

  scen.beta = Matrix(cfg.num_aps, cfg.num_ues);
  for (int m = 0; m < cfg.num_aps; ++m) {
    for (int k = 0; k < cfg.num_ues; ++k) {
      const double dx = scen.ap_positions(m, 0) - scen.ue_positions(k, 0);
      const double dy = scen.ap_positions(m, 1) - scen.ue_positions(k, 1);
      const double d = std::hypot(dx, dy);
      scen.beta(m, k) = large_scale_fading(link_path_loss_db(d, cfg), rng, cfg);
    }
  }

  scen.pilot_index = assign_pilots(cfg.num_ues, cfg.pilot_len, scen.beta, rng);

  scen.assoc_sets.resize(cfg.num_ues);
  std::vector<double> col(cfg.num_aps);
  for (int k = 0; k < cfg.num_ues; ++k) {
    for (int m = 0; m < cfg.num_aps; ++m) col[m] = scen.beta(m, k);
    scen.assoc_sets[k] = associate(col, cfg.assoc_threshold);
  }

  scen.ue_profiles.assign(profiles.begin(), profiles.end());
  return scen;
}

ChannelStatistics compute_statistics(const NetworkScenario& scen, const SimConfig& cfg) {
  ChannelStatistics stats;
  stats.pilot_groups = pilot_groups_from_index(scen.pilot_index);
  stats.gamma = compute_gamma(scen.beta, stats.pilot_groups, scen.ue_profiles, cfg.pilot_len);
  stats.beta = scen.beta;
  return stats;
}

std::uint64_t scenario_hash(const NetworkScenario& scen) {
  std::uint64_t h = fnv1a64(scen.beta.data().data(), scen.beta.data().size() * sizeof(double));
  h = fnv1a64(scen.ap_positions.data().data(), scen.ap_positions.data().size() * sizeof(double), h);
  h = fnv1a64(scen.ue_positions.data().data(), scen.ue_positions.data().size() * sizeof(double), h);
  h = fnv1a64(scen.pilot_index.data(), scen.pilot_index.size() * sizeof(int), h);
  return h;
}

}  // namespace cfwsee
