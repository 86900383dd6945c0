//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#include "cfwsee/fp_transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace cfwsee {

namespace fp {

double dinkelbach_aux(double rate_log2, double power_w) {
  if (!(power_w > 0.0)) throw std::invalid_argument("dinkelbach_aux: power must be > 0");
  return rate_log2 / power_w;
}

double qt_outer_aux(double rate_log2, double power_w) {
  if (!(power_w > 0.0)) throw std::invalid_argument("qt_outer_aux: power must be > 0");
  return std::sqrt(rate_log2) / power_w;
}

double qt_inner_aux(double sinr_num, double sinr_denom) {
  if (!(sinr_denom > 0.0)) throw std::invalid_argument("qt_inner_aux: denominator must be > 0");
  return std::sqrt(sinr_num) / sinr_denom;
}

double qt_inner_surrogate(double sinr_num, double sinr_denom, double z) {
  return 2.0 * z * std::sqrt(sinr_num) - z * z * sinr_denom;
}

double surrogate_f_value(double rate_log2, double power_w, double y) {
  return 2.0 * y * std::sqrt(rate_log2) - y * y * power_w;
}

std::optional<double> surrogate_g_value(double sinr_num, double sinr_denom, double power_w,
                                        double y, double z) {
  const double inner = qt_inner_surrogate(sinr_num, sinr_denom, z);
  if (!(inner >= 0.0)) return std::nullopt;  // log2(1+inner) must stay under the sqrt's domain
  const double rate = std::log2(1.0 + inner);
  return 2.0 * y * std::sqrt(rate) - y * y * power_w;
}

double wgee_dinkelbach_aux(double weighted_se_sum, double total_power_w) {
  if (!(total_power_w > 0.0)) throw std::invalid_argument("wgee_dinkelbach_aux: total power must be > 0");
  return weighted_se_sum / total_power_w;
}

}  // namespace fp

namespace {

struct RatioParts {
  double rate_log2 = 0.0;  // log2(1 + SINR), no prelog
  double power_w = 0.0;
  SinrParts sinr;
};

RatioParts ratio_parts(int k, const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                       const ChannelStatistics& stats, const SimConfig& cfg) {
  RatioParts parts;
  parts.sinr = sinr_parts(k, q, U.column(k), scen, stats, cfg);
  parts.rate_log2 = std::log2(1.0 + parts.sinr.value());
  parts.power_w = ue_power(q[k], scen.ue_profiles[k]);
  return parts;
}

}  // namespace

double update_t(int k, const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                const ChannelStatistics& stats, const SimConfig& cfg) {
  const RatioParts p = ratio_parts(k, q, U, scen, stats, cfg);
  return fp::dinkelbach_aux(p.rate_log2, p.power_w);
}

double update_y(int k, const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                const ChannelStatistics& stats, const SimConfig& cfg) {
  const RatioParts p = ratio_parts(k, q, U, scen, stats, cfg);
  return fp::qt_outer_aux(p.rate_log2, p.power_w);
}

double update_z(int k, const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                const ChannelStatistics& stats, const SimConfig& cfg) {
  const SinrParts parts = sinr_parts(k, q, U.column(k), scen, stats, cfg);
  return fp::qt_inner_aux(parts.numerator, parts.denominator);
}

double update_s(const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                const ChannelStatistics& stats, const SimConfig& cfg) {
  double weighted_se = 0.0;
  double total_power = 0.0;
  for (int k = 0; k < U.num_ues; ++k) {
    const RatioParts p = ratio_parts(k, q, U, scen, stats, cfg);
    weighted_se += scen.ue_profiles[k].weight * cfg.prelog() * p.rate_log2;
    total_power += p.power_w;
  }
  return fp::wgee_dinkelbach_aux(weighted_se, total_power);
}

double surrogate_F(int k, const PowerVector& q, const LsfdMatrix& U, double y,
                   const NetworkScenario& scen, const ChannelStatistics& stats, const SimConfig& cfg) {
  const RatioParts p = ratio_parts(k, q, U, scen, stats, cfg);
  return fp::surrogate_f_value(p.rate_log2, p.power_w, y);
}

double surrogate_G(int k, const PowerVector& q, const LsfdMatrix& U, double y, double z,
                   const NetworkScenario& scen, const ChannelStatistics& stats, const SimConfig& cfg) {
  const RatioParts p = ratio_parts(k, q, U, scen, stats, cfg);
  const auto value = fp::surrogate_g_value(p.sinr.numerator, p.sinr.denominator, p.power_w, y, z);
  if (!value) throw std::domain_error("surrogate_G: inner surrogate left the log/sqrt domain");
  return *value;
}

AuxState make_aux_fixed_point(const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
                              const ChannelStatistics& stats, const SimConfig& cfg) {
  AuxState aux;
  const int k_count = U.num_ues;
  aux.t.resize(k_count);
  aux.y.resize(k_count);
  aux.z.resize(k_count);
  for (int k = 0; k < k_count; ++k) {
    const RatioParts p = ratio_parts(k, q, U, scen, stats, cfg);
    aux.t[k] = fp::dinkelbach_aux(p.rate_log2, p.power_w);
    aux.y[k] = fp::qt_outer_aux(p.rate_log2, p.power_w);
    aux.z[k] = fp::qt_inner_aux(p.sinr.numerator, p.sinr.denominator);
  }
  aux.s = update_s(q, U, scen, stats, cfg);
  return aux;
}

}  // namespace cfwsee
