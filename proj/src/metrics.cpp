//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#include "cfwsee/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "cfwsee/linalg.hpp"

namespace cfwsee {

SinrAffineModel build_sinr_affine(int k, std::span<const std::complex<double>> u_k,
                                  const NetworkScenario& scen, const ChannelStatistics& stats,
                                  const SimConfig& cfg) {
  const int m_count = stats.gamma.rows();
  const int k_count = stats.gamma.cols();
  const auto& support = scen.assoc_sets[k];

  std::vector<char> in_support(m_count, 0);
  for (int m : support) in_support[m] = 1;
  for (int m = 0; m < m_count; ++m) {
    if (!in_support[m] && (u_k[m].real() != 0.0 || u_k[m].imag() != 0.0)) {
      throw std::invalid_argument("sinr: combining vector has support outside the UE's AP set");
    }
  }

  const double n_ant = static_cast<double>(cfg.antennas_per_ap);
  const double rho_k = scen.ue_profiles[k].pilot_snr;

  SinrAffineModel model;
  model.ue = k;
  model.den_lin.assign(k_count, 0.0);

  std::complex<double> coherent_gain{0.0, 0.0};
  double noise_quad = 0.0;
  for (int m : support) {
    const double g = stats.gamma(m, k);
    coherent_gain += std::conj(u_k[m]) * g;
    noise_quad += std::norm(u_k[m]) * g;
  }
  model.num_coeff = std::norm(coherent_gain);
  model.den_const = cfg.noise_power_w() * noise_quad / (n_ant * n_ant);

  for (int kp = 0; kp < k_count; ++kp) {
    double non_coherent = 0.0;
    for (int m : support) non_coherent += std::norm(u_k[m]) * stats.beta(m, kp) * stats.gamma(m, k);
    model.den_lin[kp] += non_coherent;
  }
  for (int kp : stats.pilot_groups[k]) {
    if (kp == k) continue;
    const double rho_ratio =
        cfg.equal_pilot_snr_in_sinr ? 1.0 : std::sqrt(scen.ue_profiles[kp].pilot_snr / rho_k);
    std::complex<double> coherent{0.0, 0.0};
    for (int m : support) {
      coherent += std::conj(u_k[m]) * stats.gamma(m, k) * rho_ratio * stats.beta(m, kp) / stats.beta(m, k);
    }
    model.den_lin[kp] += std::norm(coherent) / n_ant;
  }
  return model;
}

std::vector<SinrAffineModel> build_all_sinr_affine(const LsfdMatrix& U, const NetworkScenario& scen,
                                                   const ChannelStatistics& stats, const SimConfig& cfg) {
  std::vector<SinrAffineModel> models;
  models.reserve(static_cast<std::size_t>(U.num_ues));
  for (int k = 0; k < U.num_ues; ++k) {
    models.push_back(build_sinr_affine(k, U.column(k), scen, stats, cfg));
  }
  return models;
}

SinrParts sinr_parts(int k, const PowerVector& q, std::span<const std::complex<double>> u_k,
                     const NetworkScenario& scen, const ChannelStatistics& stats, const SimConfig& cfg) {
  const SinrAffineModel model = build_sinr_affine(k, u_k, scen, stats, cfg);
  return {model.numerator(q), model.denominator(q)};
}

double se_ul(int k, const PowerVector& q, std::span<const std::complex<double>> u_k,
             const NetworkScenario& scen, const ChannelStatistics& stats, const SimConfig& cfg) {
  const SinrParts parts = sinr_parts(k, q, u_k, scen, stats, cfg);
  return cfg.prelog() * std::log2(1.0 + parts.value());
}

double ue_power(double q_k, const UEProfile& profile) {
  return q_k / profile.pa_efficiency + profile.circuit_power_w;
}

double ee_k(int k, const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
            const ChannelStatistics& stats, const SimConfig& cfg) {
  const double se = se_ul(k, q, U.column(k), scen, stats, cfg);
  return cfg.bandwidth_hz * se / ue_power(q[k], scen.ue_profiles[k]);
}

double wsee(const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
            const ChannelStatistics& stats, const SimConfig& cfg) {
  double sum = 0.0;
  for (int k = 0; k < U.num_ues; ++k) sum += scen.ue_profiles[k].weight * ee_k(k, q, U, scen, stats, cfg);
  return sum;
}

double wgee(const PowerVector& q, const LsfdMatrix& U, const NetworkScenario& scen,
            const ChannelStatistics& stats, const SimConfig& cfg) {
  double weighted_rate = 0.0;
  double total_power = 0.0;
  for (int k = 0; k < U.num_ues; ++k) {
    const SinrParts parts = sinr_parts(k, q, U.column(k), scen, stats, cfg);
    weighted_rate += scen.ue_profiles[k].weight * std::log2(1.0 + parts.value());
    total_power += ue_power(q[k], scen.ue_profiles[k]);
  }
  return cfg.bandwidth_hz * cfg.prelog() * weighted_rate / total_power;
}

std::vector<std::complex<double>> optimal_lsfd(int k, const PowerVector& q, const NetworkScenario& scen,
                                               const ChannelStatistics& stats, const SimConfig& cfg) {
  const auto& support = scen.assoc_sets[k];
  const int n = static_cast<int>(support.size());
  const int k_count = stats.gamma.cols();
  const double n_ant = static_cast<double>(cfg.antennas_per_ap);
  const double sigma2 = cfg.noise_power_w();
  const double rho_k = scen.ue_profiles[k].pilot_snr;

  // Quadratic form of the SINR denominator, restricted to the support:
  // non-coherent interference and noise on the diagonal, one rank-one block
  // per pilot-sharing UE.
  std::vector<double> b(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int m = support[i];
    double diag = sigma2 * stats.gamma(m, k) / (n_ant * n_ant);
    for (int kp = 0; kp < k_count; ++kp) diag += q[kp] * stats.beta(m, kp) * stats.gamma(m, k);
    b[static_cast<std::size_t>(i) * n + i] = diag;
  }
  std::vector<double> c(n);
  for (int kp : stats.pilot_groups[k]) {
    if (kp == k) continue;
    const double rho_ratio =
        cfg.equal_pilot_snr_in_sinr ? 1.0 : std::sqrt(scen.ue_profiles[kp].pilot_snr / rho_k);
    for (int i = 0; i < n; ++i) {
      const int m = support[i];
      c[i] = stats.gamma(m, k) * rho_ratio * stats.beta(m, kp) / stats.beta(m, k);
    }
    const double scale = q[kp] / n_ant;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) b[static_cast<std::size_t>(i) * n + j] += scale * c[i] * c[j];
    }
  }

  // Rescale for conditioning; the solution direction is scale-invariant.
  double bmax = 0.0;
  for (int i = 0; i < n; ++i) bmax = std::max(bmax, b[static_cast<std::size_t>(i) * n + i]);
  if (!(bmax > 0.0) || !std::isfinite(bmax)) {
    throw std::domain_error("optimal_lsfd: degenerate statistics (no positive diagonal)");
  }
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = stats.gamma(support[i], k) / bmax;
  for (auto& v : b) v /= bmax;
  if (!solve_spd(b, rhs, n)) {
    throw std::domain_error("optimal_lsfd: degenerate statistics (form not positive definite)");
  }

  double norm = 0.0;
  for (int i = 0; i < n; ++i) norm += rhs[i] * rhs[i];
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::domain_error("optimal_lsfd: degenerate statistics (zero combiner)");
  }

  std::vector<std::complex<double>> u(static_cast<std::size_t>(stats.gamma.rows()), {0.0, 0.0});
  for (int i = 0; i < n; ++i) u[support[i]] = rhs[i] / norm;
  return u;
}

LsfdMatrix optimal_lsfd_matrix(const PowerVector& q, const NetworkScenario& scen,
                               const ChannelStatistics& stats, const SimConfig& cfg) {
  LsfdMatrix U(stats.gamma.rows(), stats.gamma.cols());
  for (int k = 0; k < U.num_ues; ++k) {
    const auto u = optimal_lsfd(k, q, scen, stats, cfg);
    auto col = U.column(k);
    for (int m = 0; m < U.num_aps; ++m) col[m] = u[m];
  }
  return U;
}

double qos_sinr_threshold(double min_rate_bps_hz, const SimConfig& cfg) {
  const double tau_c = static_cast<double>(cfg.coherence_len);
  const double tau_p = static_cast<double>(cfg.pilot_len);
  return std::pow(2.0, tau_c / (tau_c - tau_p) * min_rate_bps_hz) - 1.0;
}

}  // namespace cfwsee
