//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cfwsee/config.hpp"
#include "cfwsee/core.hpp"
#include "cfwsee/random.hpp"

namespace cfwsee {

// One network realization: geometry, large-scale gains, pilot assignment and
// the per-UE serving AP sets.
struct NetworkScenario {
  Matrix ap_positions;                       // M x 2, meters
  Matrix ue_positions;                       // K x 2, meters
  Matrix beta;                               // M x K, linear gains
  std::vector<int> pilot_index;              // K, values in [0, tau_p)
  std::vector<std::vector<int>> assoc_sets;  // per UE, ascending AP ids
  std::vector<UEProfile> ue_profiles;        // K
};

// Second-order channel-estimation statistics derived from a scenario.
struct ChannelStatistics {
  Matrix gamma;                               // M x K, mean-square estimate quality
  Matrix beta;                                // M x K copy
  std::vector<std::vector<int>> pilot_groups; // per UE, UEs sharing its pilot (incl. itself)
};

// M and K points i.i.d. uniform on [0, D]^2. Draw order: AP (x, y) pairs
// first, then UE pairs.
std::pair<Matrix, Matrix> place_network(const SimConfig& cfg, RandomStream& rng);

// Three-slope path loss, evaluated on whatever unit its arguments share.
double three_slope_pl_db(double d, double d0, double d1, double loss_const_db);

// Slope model evaluated directly on meter values.
double path_loss_db(double d_m, const SimConfig& cfg);

// Slope model evaluated at the scale the constants are calibrated for
// (cfg.pathloss_dist_scale_m); this is what the beta pipeline uses.
double link_path_loss_db(double d_m, const SimConfig& cfg);

// Applies log-normal shadowing on top of a path loss and returns the linear
// gain beta = 10^((pl_db + x)/10), x ~ N(0, shadowing_std_db^2).
double large_scale_fading(double pl_db, RandomStream& rng, const SimConfig& cfg);

// Smallest set of strongest APs whose cumulative share of the UE's total
// large-scale gain reaches delta. Returned ascending by AP id.
std::vector<int> associate(std::span<const double> beta_col, double delta);

// Orthogonal pilots when K <= tau_p; otherwise a balanced round-robin over
// UEs ordered by their strongest link, so strong UEs land on distinct pilots.
std::vector<int> assign_pilots(int num_ues, int tau_p, const Matrix& beta, RandomStream& rng);

std::vector<std::vector<int>> pilot_groups_from_index(std::span<const int> pilot_index);

// Mean-square channel-estimate quality per (AP, UE). Rejects nonpositive beta.
Matrix compute_gamma(const Matrix& beta, const std::vector<std::vector<int>>& pilot_groups,
                     std::span<const UEProfile> profiles, int tau_p);

// Full pipeline: placement, path loss + shadowing, pilots, association.
// Pure function of (cfg, profiles, rng state).
NetworkScenario generate_scenario(const SimConfig& cfg, std::span<const UEProfile> profiles,
                                  RandomStream& rng);

ChannelStatistics compute_statistics(const NetworkScenario& scen, const SimConfig& cfg);

// Stable fingerprint of geometry, gains and pilot assignment.
std::uint64_t scenario_hash(const NetworkScenario& scen);

}  // namespace cfwsee
