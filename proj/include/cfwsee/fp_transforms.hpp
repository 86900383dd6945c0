//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <optional>
#include <vector>

#include "cfwsee/metrics.hpp"

namespace cfwsee {

// Auxiliary variables of the fractional-programming transforms. t drives the
// per-ratio Dinkelbach step, y/z the outer and inner quadratic transforms,
// and s the single-ratio Dinkelbach step of the global metric. s is a scalar
// (its update is identical for every UE).
struct AuxState {
  std::vector<double> t;
  std::vector<double> y;
  std::vector<double> z;
  double s = 0.0;
};

namespace fp {

// t = rate / power
double dinkelbach_aux(double rate_log2, double power_w);

// y = sqrt(rate) / power
double qt_outer_aux(double rate_log2, double power_w);

// z = sqrt(num) / denom
double qt_inner_aux(double sinr_num, double sinr_denom);

// 2 z sqrt(num) - z^2 denom; touches the ratio num/denom at the z update.
double qt_inner_surrogate(double sinr_num, double sinr_denom, double z);

// 2 y sqrt(rate) - y^2 power; touches rate/power at the y update.
double surrogate_f_value(double rate_log2, double power_w, double y);

// Nested form: 2 y sqrt(log2(1 + inner)) - y^2 power where inner is the
// z-surrogate of the SINR. Empty when the inner surrogate leaves the domain
// of the enclosing log/sqrt (inner < 0): callers shrink their step instead
// of clamping.
std::optional<double> surrogate_g_value(double sinr_num, double sinr_denom, double power_w,
                                        double y, double z);

// s = weighted sum rate / total power
double wgee_dinkelbach_aux(double weighted_se_sum, double total_power_w);

}  // namespace fp

// Context-level updates evaluated at (q, U).
double update_t(int k, const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                const ChannelStatistics& stats, const SimConfig& cfg);
double update_y(int k, const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                const ChannelStatistics& stats, const SimConfig& cfg);
double update_z(int k, const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                const ChannelStatistics& stats, const SimConfig& cfg);
double update_s(const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                const ChannelStatistics& stats, const SimConfig& cfg);

double surrogate_F(int k, const PowerVector& q, const LsfdMatrix& U, double y,
                   const NetworkScenario& scen, const ChannelStatistics& stats, const SimConfig& cfg);

// Throws std::domain_error outside the surrogate's domain.
double surrogate_G(int k, const PowerVector& q, const LsfdMatrix& U, double y, double z,
                   const NetworkScenario& scen, const ChannelStatistics& stats, const SimConfig& cfg);

// All auxiliaries at their fixed points for the given (q, U).
AuxState make_aux_fixed_point(const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                              const ChannelStatistics& stats, const SimConfig& cfg);

}  // namespace cfwsee
