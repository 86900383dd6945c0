//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cfwsee/core.hpp"

namespace cfwsee {

// Per-UE traits: weight, power budget, rate requirement, amplifier and
// circuit parameters, and the linear pilot SNR (pilot power / noise power).
struct UEProfile {
  double weight = 1.0;
  double p_max_w = 0.2;
  double min_rate_bps_hz = 0.0;
  double pa_efficiency = 0.4;   // in (0, 1]
  double circuit_power_w = 1.0;
  double pilot_snr = 0.0;       // linear

  void validate() const;  // throws std::invalid_argument
};

// Rescales weights so they sum to the number of UEs. Returns the applied scale.
double normalize_weights(std::vector<UEProfile>& profiles);

struct SimConfig {
  double area_side_m = 1000.0;     // D
  int num_aps = 256;               // M
  int antennas_per_ap = 4;         // N
  int num_ues = 16;                // K
  double bandwidth_hz = 20e6;      // B
  double noise_figure_db = 7.0;
  double carrier_freq_hz = 1.9e9;  // informational; folded into pathloss_const_db
  int coherence_len = 200;         // tau_c, samples
  int pilot_len = 20;              // tau_p, samples
  double assoc_threshold = 0.99;   // delta in (0, 1]
  double shadowing_std_db = 8.0;
  double pathloss_const_db = 140.7;
  double d0_m = 10.0;
  double d1_m = 50.0;
  // The three-slope constants (pathloss_const_db and the 35/20 dB-per-decade
  // terms) are calibrated for log-distances in kilometers. Distances are kept
  // in meters everywhere else, so the slope evaluation divides by this scale.
  // Setting 1.0 evaluates the slopes on raw meter values instead.
  double pathloss_dist_scale_m = 1000.0;
  // Replaces the sqrt(rho_k'/rho_k) factor of the coherent pilot-contamination
  // term by 1, i.e. evaluates the SINR as if all pilots used the same power.
  bool equal_pilot_snr_in_sinr = false;
  std::uint64_t rng_seed = 1;

  double prelog() const { return 1.0 - static_cast<double>(pilot_len) / static_cast<double>(coherence_len); }

  double noise_power_w() const {
    return kBoltzmannJPerK * kNoiseTemperatureK * bandwidth_hz * std::pow(10.0, noise_figure_db / 10.0);
  }

  // Hard violations throw std::invalid_argument with the offending field;
  // soft issues (e.g. too few antennas for favorable propagation) come back
  // as warning strings.
  std::vector<std::string> validate() const;
};

}  // namespace cfwsee
