//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cfwsee/scenario.hpp"

namespace cfwsee {

// Per-UE uplink transmit signal powers, watts.
using PowerVector = std::vector<double>;

// CPU-side combining weights; column k is UE k's vector, nonzero only on its
// serving AP set and kept at unit norm.
struct LsfdMatrix {
  int num_aps = 0;
  int num_ues = 0;
  std::vector<std::complex<double>> coeff;  // column-major M x K

  LsfdMatrix() = default;
  LsfdMatrix(int m, int k) : num_aps(m), num_ues(k), coeff(static_cast<std::size_t>(m) * k) {}

  std::span<std::complex<double>> column(int k) {
    return {coeff.data() + static_cast<std::size_t>(k) * num_aps, static_cast<std::size_t>(num_aps)};
  }
  std::span<const std::complex<double>> column(int k) const {
    return {coeff.data() + static_cast<std::size_t>(k) * num_aps, static_cast<std::size_t>(num_aps)};
  }
};

struct SinrParts {
  double numerator = 0.0;
  double denominator = 0.0;
  double value() const { return denominator > 0.0 ? numerator / denominator : 0.0; }
};

// With the combiner fixed, both SINR parts are affine in the power vector:
//   numerator(q)   = num_coeff * q_k
//   denominator(q) = den_lin . q + den_const
struct SinrAffineModel {
  int ue = 0;
  double num_coeff = 0.0;
  std::vector<double> den_lin;
  double den_const = 0.0;

  double numerator(std::span<const double> q) const { return num_coeff * q[ue]; }
  double denominator(std::span<const double> q) const {
    double d = den_const;
    for (std::size_t j = 0; j < den_lin.size(); ++j) d += den_lin[j] * q[j];
    return d;
  }
};

// Builds the affine SINR description of UE k for a fixed combining vector.
// Throws std::invalid_argument when u_k has support outside the UE's AP set.
SinrAffineModel build_sinr_affine(int k, std::span<const std::complex<double>> u_k,
                                  const NetworkScenario& scen, const ChannelStatistics& stats,
                                  const SimConfig& cfg);

std::vector<SinrAffineModel> build_all_sinr_affine(const LsfdMatrix& U, const NetworkScenario& scen,
                                                   const ChannelStatistics& stats, const SimConfig& cfg);

SinrParts sinr_parts(int k, const PowerVector& q, std::span<const std::complex<double>> u_k,
                     const NetworkScenario& scen, const ChannelStatistics& stats, const SimConfig& cfg);

// Pilot-overhead-weighted spectral efficiency, bits/s/Hz.
double se_ul(int k, const PowerVector& q, std::span<const std::complex<double>> u_k,
             const NetworkScenario& scen, const ChannelStatistics& stats, const SimConfig& cfg);

// Consumed power: PA-scaled transmit power plus circuit power.
double ue_power(double q_k, const UEProfile& profile);

// Per-UE energy efficiency, bits/joule.
double ee_k(int k, const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
            const ChannelStatistics& stats, const SimConfig& cfg);

// Weighted sum of per-UE energy efficiencies.
double wsee(const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
            const ChannelStatistics& stats, const SimConfig& cfg);

// Weighted sum rate over total consumed power.
double wgee(const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
            const ChannelStatistics& stats, const SimConfig& cfg);

// Closed-form SINR-optimal combining vector for UE k at fixed powers: the
// denominator quadratic form is assembled on the UE's AP support and solved
// against the coherent-gain vector, then normalized to unit norm. Throws
// std::domain_error when the statistics are degenerate (non-PD form).
std::vector<std::complex<double>> optimal_lsfd(int k, const PowerVector& q, const NetworkScenario& scen,
                                               const ChannelStatistics& stats, const SimConfig& cfg);

LsfdMatrix optimal_lsfd_matrix(const PowerVector& q, const NetworkScenario& scen,
                               const ChannelStatistics& stats, const SimConfig& cfg);

// SINR level a UE must reach so that its spectral efficiency meets min_rate.
double qos_sinr_threshold(double min_rate_bps_hz, const SimConfig& cfg);

}  // namespace cfwsee
