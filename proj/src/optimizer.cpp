//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#include "cfwsee/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cfwsee {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kArmijoFraction = 1e-2;
constexpr double kMinStep = 1e-20;
constexpr double kMaxStep = 1e12;

double stop_threshold(const SolveOptions& opts, double a, double b) {
  return std::max(opts.tolerance, opts.relative_tolerance * std::max(std::abs(a), std::abs(b)));
}

}  // namespace

void SolveOptions::validate() const {
  if (!(tolerance > 0.0) && !(relative_tolerance > 0.0)) {
    throw std::invalid_argument("solve: tolerance or relative_tolerance must be > 0");
  }
  if (!(tolerance >= 0.0)) throw std::invalid_argument("solve: tolerance must be >= 0");
  if (!(relative_tolerance >= 0.0)) throw std::invalid_argument("solve: relative_tolerance must be >= 0");
  if (max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");
  if (!(inner_tolerance > 0.0)) throw std::invalid_argument("solve: inner_tolerance must be > 0");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) {
    throw std::invalid_argument("solve: step_shrink must be in (0, 1)");
  }
  if (max_inner_iter < 1) throw std::invalid_argument("solve: max_inner_iter must be >= 1");
}

// ---------------------------------------------------------------------------
// Surrogate objective

QSubproblem QSubproblem::nested_qt(std::vector<double> y, std::vector<double> z, const LsfdMatrix& U,
                                   const NetworkScenario& scen, const ChannelStatistics& stats,
                                   const SimConfig& cfg) {
  QSubproblem p;
  p.kind_ = Kind::NestedQt;
  p.models_ = build_all_sinr_affine(U, scen, stats, cfg);
  p.z_ = std::move(z);
  p.y_or_t_ = std::move(y);
  p.prelog_ = cfg.prelog();
  for (const auto& prof : scen.ue_profiles) {
    p.weights_.push_back(prof.weight);
    p.inv_pa_.push_back(1.0 / prof.pa_efficiency);
    p.circuit_.push_back(prof.circuit_power_w);
  }
  return p;
}

QSubproblem QSubproblem::dinkelbach_wsee(std::vector<double> t, std::vector<double> z,
                                         const LsfdMatrix& U, const NetworkScenario& scen,
                                         const ChannelStatistics& stats, const SimConfig& cfg) {
  QSubproblem p = nested_qt(std::move(t), std::move(z), U, scen, stats, cfg);
  p.kind_ = Kind::DinkelbachWsee;
  return p;
}

QSubproblem QSubproblem::dinkelbach_wgee(double s, std::vector<double> z, const LsfdMatrix& U,
                                         const NetworkScenario& scen, const ChannelStatistics& stats,
                                         const SimConfig& cfg) {
  QSubproblem p = nested_qt(std::vector<double>(scen.ue_profiles.size(), 0.0), std::move(z), U, scen,
                            stats, cfg);
  p.kind_ = Kind::DinkelbachWgee;
  p.s_ = s;
  return p;
}

std::optional<double> QSubproblem::value(std::span<const double> q) const {
  double total = 0.0;
  double total_power = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const auto& m = models_[k];
    const double num = m.numerator(q);
    const double den = m.denominator(q);
    const double z = z_[k];
    const double inner = 2.0 * z * std::sqrt(num) - z * z * den;
    const double power = q[k] * inv_pa_[k] + circuit_[k];
    switch (kind_) {
      case Kind::NestedQt: {
        const double y = y_or_t_[k];
        if (y == 0.0) break;  // term vanishes identically
        if (!(inner >= 0.0)) return std::nullopt;
        const double rate = std::log2(1.0 + inner);
        total += weights_[k] * (2.0 * y * std::sqrt(rate) - y * y * power);
        break;
      }
      case Kind::DinkelbachWsee: {
        if (!(inner > -1.0)) return std::nullopt;
        // Rate enters as spectral efficiency (with the pilot-overhead prelog)
        // while t carries the raw log2 ratio; the pairing is kept exactly as
        // the per-ratio transform states it.
        total += weights_[k] * (prelog_ * std::log2(1.0 + inner) - y_or_t_[k] * power);
        break;
      }
      case Kind::DinkelbachWgee: {
        if (!(inner > -1.0)) return std::nullopt;
        total += weights_[k] * prelog_ * std::log2(1.0 + inner);
        total_power += power;
        break;
      }
    }
  }
  if (kind_ == Kind::DinkelbachWgee) total -= s_ * total_power;
  return total;
}

double QSubproblem::min_inner_surrogate(std::span<const double> q) const {
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const auto& m = models_[k];
    const double z = z_[k];
    const double inner = 2.0 * z * std::sqrt(m.numerator(q)) - z * z * m.denominator(q);
    lowest = std::min(lowest, inner);
  }
  return lowest;
}

bool QSubproblem::gradient(std::span<const double> q, std::span<double> grad) const {
  std::fill(grad.begin(), grad.end(), 0.0);
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    const auto& m = models_[k];
    const double num = m.numerator(q);
    const double den = m.denominator(q);
    const double z = z_[k];
    const double inner = 2.0 * z * std::sqrt(num) - z * z * den;

    double rate_coef = 0.0;  // multiplier of d(inner)/dq
    switch (kind_) {
      case Kind::NestedQt: {
        const double y = y_or_t_[k];
        if (y == 0.0) continue;
        if (!(inner > 0.0)) return false;  // sqrt(log) slope is unbounded at the edge
        const double rate = std::log2(1.0 + inner);
        rate_coef = weights_[k] * y / (std::sqrt(rate) * (1.0 + inner) * kLn2);
        grad[k] -= weights_[k] * y * y * inv_pa_[k];
        break;
      }
      case Kind::DinkelbachWsee: {
        if (!(inner > -1.0)) return false;
        rate_coef = weights_[k] * prelog_ / ((1.0 + inner) * kLn2);
        grad[k] -= weights_[k] * y_or_t_[k] * inv_pa_[k];
        break;
      }
      case Kind::DinkelbachWgee: {
        if (!(inner > -1.0)) return false;
        rate_coef = weights_[k] * prelog_ / ((1.0 + inner) * kLn2);
        grad[k] -= s_ * inv_pa_[k];
        break;
      }
    }

    if (z != 0.0 && m.num_coeff > 0.0) {
      // d(2 z sqrt(A q_k))/dq_k; the floor keeps the slope finite when an
      // iterate sits exactly on the q_k = 0 face (backtracking absorbs it).
      const double qk = std::max(q[k], 1e-60);
      grad[k] += rate_coef * z * std::sqrt(m.num_coeff / qk);
    }
    const double zc = rate_coef * z * z;
    for (std::size_t j = 0; j < m.den_lin.size(); ++j) grad[j] -= zc * m.den_lin[j];
  }
  return true;
}

// ---------------------------------------------------------------------------
// Feasible region

void FeasibleRegion::project(std::span<double> q) const {
  const int n = static_cast<int>(lo.size());
  auto clamp_box = [&](std::span<double> x) {
    for (int j = 0; j < n; ++j) x[j] = std::clamp(x[j], lo[j], hi[j]);
  };
  if (halfspaces.empty()) {
    clamp_box(q);
    return;
  }
  // Dykstra's alternating projections over the box and each halfspace.
  std::vector<double> x(q.begin(), q.end());
  std::vector<std::vector<double>> increments(halfspaces.size() + 1, std::vector<double>(n, 0.0));
  std::vector<double> y(n);
  for (int sweep = 0; sweep < 200; ++sweep) {
    double moved = 0.0;
    for (std::size_t s = 0; s < increments.size(); ++s) {
      for (int j = 0; j < n; ++j) y[j] = x[j] + increments[s][j];
      std::vector<double> next = y;
      if (s == 0) {
        clamp_box(next);
      } else {
        const auto& hs = halfspaces[s - 1];
        double dot = 0.0;
        for (int j = 0; j < n; ++j) dot += hs.normal[j] * next[j];
        if (dot < hs.offset) {
          const double corr = hs.offset - dot;
          for (int j = 0; j < n; ++j) next[j] += corr * hs.normal[j];
        }
      }
      for (int j = 0; j < n; ++j) {
        increments[s][j] = y[j] - next[j];
        moved = std::max(moved, std::abs(next[j] - x[j]));
        x[j] = next[j];
      }
    }
    double scale = 1.0;
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(x[j]));
    if (moved <= 1e-15 * scale) break;
  }
  std::copy(x.begin(), x.end(), q.begin());
}

bool FeasibleRegion::contains(std::span<const double> q, double tol) const {
  const int n = static_cast<int>(lo.size());
  for (int j = 0; j < n; ++j) {
    if (q[j] < lo[j] - tol || q[j] > hi[j] + tol) return false;
  }
  for (const auto& hs : halfspaces) {
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += hs.normal[j] * q[j];
    if (dot < hs.offset - tol) return false;
  }
  return true;
}

FeasibleRegion make_power_region(const NetworkScenario& scen, const std::vector<SinrAffineModel>& models,
                                 const SimConfig& cfg, bool enforce_qos) {
  FeasibleRegion region;
  const int k_count = static_cast<int>(scen.ue_profiles.size());
  region.lo.assign(k_count, 0.0);
  region.hi.resize(k_count);
  for (int k = 0; k < k_count; ++k) region.hi[k] = scen.ue_profiles[k].p_max_w;
  if (!enforce_qos) return region;

  for (int k = 0; k < k_count; ++k) {
    const double threshold = qos_sinr_threshold(scen.ue_profiles[k].min_rate_bps_hz, cfg);
    if (!(threshold > 0.0)) continue;
    FeasibleRegion::Halfspace hs;
    hs.normal.assign(k_count, 0.0);
    for (int j = 0; j < k_count; ++j) hs.normal[j] -= threshold * models[k].den_lin[j];
    hs.normal[k] += models[k].num_coeff;
    hs.offset = threshold * models[k].den_const;
    double norm = 0.0;
    for (double v : hs.normal) norm += v * v;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw std::domain_error("rate constraint is degenerate (zero normal)");
    for (double& v : hs.normal) v /= norm;
    hs.offset /= norm;
    region.halfspaces.push_back(std::move(hs));
  }
  return region;
}

// ---------------------------------------------------------------------------
// Projected gradient ascent

PowerVector maximize_concave(const QSubproblem& objective, const FeasibleRegion& region,
                             const PowerVector& q0, const SolveOptions& opts, double* kkt_residual) {
  const int n = objective.dim();
  PowerVector q = q0;
  region.project(q);

  double residual = std::numeric_limits<double>::infinity();
  auto fv = objective.value(q);
  if (!fv) {
    if (kkt_residual) *kkt_residual = residual;
    return q;
  }
  double f = *fv;

  std::vector<double> grad(n), trial(n);
  double alpha = 1.0;
  for (int it = 0; it < opts.max_inner_iter; ++it) {
    if (!objective.gradient(q, grad)) break;

    for (int j = 0; j < n; ++j) trial[j] = q[j] + grad[j];
    region.project(trial);
    residual = 0.0;
    for (int j = 0; j < n; ++j) residual = std::max(residual, std::abs(trial[j] - q[j]));
    if (residual <= opts.inner_tolerance) break;

    bool accepted = false;
    while (alpha >= kMinStep) {
      for (int j = 0; j < n; ++j) trial[j] = q[j] + alpha * grad[j];
      region.project(trial);
      double move2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double d = trial[j] - q[j];
        move2 += d * d;
      }
      if (move2 == 0.0) break;  // stationary along the projection arc
      const auto ft = objective.value(trial);
      if (ft && *ft >= f + kArmijoFraction * move2 / alpha) {
        q = trial;
        f = *ft;
        accepted = true;
        break;
      }
      alpha *= opts.step_shrink;
    }
    if (!accepted) break;
    alpha = std::min(alpha * 2.0, kMaxStep);
  }
  if (kkt_residual) *kkt_residual = residual;
  return q;
}

namespace {

std::vector<double> update_all_z(const PowerVector& q, const std::vector<SinrAffineModel>& models) {
  std::vector<double> z(models.size());
  for (std::size_t k = 0; k < models.size(); ++k) {
    z[k] = fp::qt_inner_aux(models[k].numerator(q), models[k].denominator(q));
  }
  return z;
}

PowerVector solve_with(QSubproblem objective, const NetworkScenario& scen, const PowerVector& q0,
                       const SimConfig& cfg, const SolveOptions& opts) {
  const FeasibleRegion region = make_power_region(scen, objective.models(), cfg, opts.enforce_qos);
  PowerVector start = q0;
  region.project(start);
  if (!region.contains(start, 1e-7)) {
    throw std::runtime_error("q-subproblem: rate constraints are infeasible at entry");
  }
  return maximize_concave(objective, region, start, opts);
}

}  // namespace

PowerVector solve_q_nested_qt(const PowerVector& q0, std::span<const double> y, std::span<const double> z,
                              const LsfdMatrix& U, const NetworkScenario& scen,
                              const ChannelStatistics& stats, const SimConfig& cfg,
                              const SolveOptions& opts) {
  auto objective = QSubproblem::nested_qt(std::vector<double>(y.begin(), y.end()),
                                          std::vector<double>(z.begin(), z.end()), U, scen, stats, cfg);
  return solve_with(std::move(objective), scen, q0, cfg, opts);
}

namespace {

// The Dinkelbach-style subproblems are non-concave in q, so one concave
// surrogate solve only improves on the entry point. Re-anchoring the inner
// quadratic transform at the new iterate and re-solving drives q to a
// stationary point of the actual subproblem, which is what "solve" means for
// the alternating loops built on these transforms.
template <typename MakeObjective>
PowerVector ascend_to_stationarity(PowerVector q, const NetworkScenario& scen, const SimConfig& cfg,
                                   const SolveOptions& opts, const std::vector<SinrAffineModel>& models,
                                   const MakeObjective& make_objective) {
  double scale = 0.0;
  for (const auto& p : scen.ue_profiles) scale = std::max(scale, p.p_max_w);
  for (int round = 0; round < 50; ++round) {
    PowerVector next = solve_with(make_objective(update_all_z(q, models)), scen, q, cfg, opts);
    double moved = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) moved = std::max(moved, std::abs(next[j] - q[j]));
    q = std::move(next);
    if (moved <= 1e-9 * scale) break;
  }
  return q;
}

template <typename MakeObjective>
PowerVector solve_to_stationarity(const PowerVector& q0, const NetworkScenario& scen,
                                  const SimConfig& cfg, const SolveOptions& opts,
                                  const std::vector<SinrAffineModel>& models,
                                  MakeObjective make_objective) {
  // Multistart over the box corners plus the warm start; the subproblem is
  // non-concave, so distinct basins are possible.
  std::vector<PowerVector> starts;
  starts.push_back(q0);
  PowerVector full(q0.size()), low(q0.size());
  for (std::size_t k = 0; k < q0.size(); ++k) {
    full[k] = scen.ue_profiles[k].p_max_w;
    low[k] = 0.05 * scen.ue_profiles[k].p_max_w;
  }
  starts.push_back(full);
  starts.push_back(low);

  PowerVector best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (const auto& start : starts) {
    PowerVector cand = ascend_to_stationarity(start, scen, cfg, opts, models, make_objective);
    const auto obj = make_objective(update_all_z(cand, models));
    const auto v = obj.value(cand);
    if (v && *v > best_value) {
      best_value = *v;
      best = std::move(cand);
    }
  }
  return best.empty() ? q0 : best;
}

}  // namespace

PowerVector solve_q_dinkelbach_like(const PowerVector& q0, std::span<const double> t, const LsfdMatrix& U,
                                    const NetworkScenario& scen, const ChannelStatistics& stats,
                                    const SimConfig& cfg, const SolveOptions& opts) {
  const auto models = build_all_sinr_affine(U, scen, stats, cfg);
  std::vector<double> t_vec(t.begin(), t.end());
  return solve_to_stationarity(q0, scen, cfg, opts, models, [&](std::vector<double> z) {
    return QSubproblem::dinkelbach_wsee(t_vec, std::move(z), U, scen, stats, cfg);
  });
}

PowerVector solve_q_wgee(const PowerVector& q0, double s, const LsfdMatrix& U, const NetworkScenario& scen,
                         const ChannelStatistics& stats, const SimConfig& cfg, const SolveOptions& opts) {
  const auto models = build_all_sinr_affine(U, scen, stats, cfg);
  return solve_to_stationarity(q0, scen, cfg, opts, models, [&](std::vector<double> z) {
    return QSubproblem::dinkelbach_wgee(s, std::move(z), U, scen, stats, cfg);
  });
}

// ---------------------------------------------------------------------------
// QoS feasibility

QosReport check_qos_feasibility(const NetworkScenario& scen, const ChannelStatistics& stats,
                                const SimConfig& cfg) {
  const int k_count = static_cast<int>(scen.ue_profiles.size());
  PowerVector q(k_count);
  for (int k = 0; k < k_count; ++k) q[k] = scen.ue_profiles[k].p_max_w;
  const LsfdMatrix U = optimal_lsfd_matrix(q, scen, stats, cfg);
  const auto models = build_all_sinr_affine(U, scen, stats, cfg);

  QosReport report;
  report.residuals.resize(k_count);
  report.sinr_thresholds.resize(k_count);
  for (int k = 0; k < k_count; ++k) {
    const double threshold = qos_sinr_threshold(scen.ue_profiles[k].min_rate_bps_hz, cfg);
    report.sinr_thresholds[k] = threshold;
    report.residuals[k] = models[k].numerator(q) - threshold * models[k].denominator(q);
    if (report.residuals[k] < 0.0) report.violating_ues.push_back(k);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Alternating-optimization drivers

namespace {

PowerVector full_power_vector(const NetworkScenario& scen) {
  PowerVector q(scen.ue_profiles.size());
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = scen.ue_profiles[k].p_max_w;
  return q;
}

// Weighted surrogate sum for the monotonicity chain; NaN when undefined.
double weighted_g_sum(const PowerVector& q, const LsfdMatrix& U, std::span<const double> y,
                      std::span<const double> z, const NetworkScenario& scen,
                      const ChannelStatistics& stats, const SimConfig& cfg) {
  double total = 0.0;
  for (int k = 0; k < U.num_ues; ++k) {
    if (y[k] == 0.0) continue;
    const SinrParts parts = sinr_parts(k, q, U.column(k), scen, stats, cfg);
    const double power = ue_power(q[k], scen.ue_profiles[k]);
    const auto g = fp::surrogate_g_value(parts.numerator, parts.denominator, power, y[k], z[k]);
    if (!g) return std::numeric_limits<double>::quiet_NaN();
    total += scen.ue_profiles[k].weight * *g;
  }
  return total;
}

// Shared init; returns false (with a populated infeasible state) when the
// rate constraints cannot hold even at full power.
bool init_state(SolverState& st, const NetworkScenario& scen, const ChannelStatistics& stats,
                const SimConfig& cfg, const SolveOptions& opts, bool wgee_trace) {
  st.q = full_power_vector(scen);
  st.U = optimal_lsfd_matrix(st.q, scen, stats, cfg);
  if (opts.enforce_qos) {
    const QosReport report = check_qos_feasibility(scen, stats, cfg);
    if (!report.feasible()) {
      st.feasible = false;
      st.converged = false;
      st.termination_reason = "qos_infeasible";
      st.objective_trace = {wgee_trace ? wgee(st.q, st.U, scen, stats, cfg)
                                       : wsee(st.q, st.U, scen, stats, cfg)};
      st.aux = make_aux_fixed_point(st.q, st.U, scen, stats, cfg);
      return false;
    }
  }
  return true;
}

}  // namespace

SolverState algorithm1_dinkelbach_like(const NetworkScenario& scen, const ChannelStatistics& stats,
                                       const SimConfig& cfg, const SolveOptions& opts) {
  opts.validate();
  SolverState st;
  if (!init_state(st, scen, stats, cfg, opts, false)) return st;
  st.aux = make_aux_fixed_point(st.q, st.U, scen, stats, cfg);
  st.objective_trace = {wsee(st.q, st.U, scen, stats, cfg)};

  for (int it = 1; it <= opts.max_iter; ++it) {
    st.U = optimal_lsfd_matrix(st.q, scen, stats, cfg);
    for (int k = 0; k < st.U.num_ues; ++k) st.aux.t[k] = update_t(k, st.q, st.U, scen, stats, cfg);
    st.q = solve_q_dinkelbach_like(st.q, st.aux.t, st.U, scen, stats, cfg, opts);
    st.objective_trace.push_back(wsee(st.q, st.U, scen, stats, cfg));
    st.iterations_used = it;
    const double prev = st.objective_trace[it - 1];
    const double cur = st.objective_trace[it];
    if (std::abs(cur - prev) < stop_threshold(opts, prev, cur)) {
      st.converged = true;
      break;
    }
  }
  st.termination_reason = st.converged ? "tolerance" : "max_iter";
  st.aux = make_aux_fixed_point(st.q, st.U, scen, stats, cfg);
  return st;
}

SolverState algorithm2_nested_qt(const NetworkScenario& scen, const ChannelStatistics& stats,
                                 const SimConfig& cfg, const SolveOptions& opts) {
  opts.validate();
  SolverState st;
  if (!init_state(st, scen, stats, cfg, opts, false)) return st;
  st.aux = make_aux_fixed_point(st.q, st.U, scen, stats, cfg);
  st.objective_trace = {wsee(st.q, st.U, scen, stats, cfg)};

  for (int it = 1; it <= opts.max_iter; ++it) {
    QtChainSample chain;
    chain.before_u = weighted_g_sum(st.q, st.U, st.aux.y, st.aux.z, scen, stats, cfg);
    st.U = optimal_lsfd_matrix(st.q, scen, stats, cfg);
    chain.after_u = weighted_g_sum(st.q, st.U, st.aux.y, st.aux.z, scen, stats, cfg);
    for (int k = 0; k < st.U.num_ues; ++k) st.aux.z[k] = update_z(k, st.q, st.U, scen, stats, cfg);
    chain.after_z = weighted_g_sum(st.q, st.U, st.aux.y, st.aux.z, scen, stats, cfg);
    for (int k = 0; k < st.U.num_ues; ++k) st.aux.y[k] = update_y(k, st.q, st.U, scen, stats, cfg);
    chain.after_y = weighted_g_sum(st.q, st.U, st.aux.y, st.aux.z, scen, stats, cfg);
    st.q = solve_q_nested_qt(st.q, st.aux.y, st.aux.z, st.U, scen, stats, cfg, opts);
    chain.after_q = weighted_g_sum(st.q, st.U, st.aux.y, st.aux.z, scen, stats, cfg);
    st.qt_chain.push_back(chain);

    st.objective_trace.push_back(wsee(st.q, st.U, scen, stats, cfg));
    st.iterations_used = it;
    const double prev = st.objective_trace[it - 1];
    const double cur = st.objective_trace[it];
    if (cur - prev < stop_threshold(opts, prev, cur)) {
      st.converged = true;
      break;
    }
  }
  st.termination_reason = st.converged ? "tolerance" : "max_iter";
  st.aux = make_aux_fixed_point(st.q, st.U, scen, stats, cfg);
  return st;
}

SolverState algorithm3_wgee(const NetworkScenario& scen, const ChannelStatistics& stats,
                            const SimConfig& cfg, const SolveOptions& opts) {
  opts.validate();
  SolverState st;
  if (!init_state(st, scen, stats, cfg, opts, true)) return st;
  st.aux = make_aux_fixed_point(st.q, st.U, scen, stats, cfg);
  st.objective_trace = {wgee(st.q, st.U, scen, stats, cfg)};

  for (int it = 1; it <= opts.max_iter; ++it) {
    st.U = optimal_lsfd_matrix(st.q, scen, stats, cfg);
    st.aux.s = update_s(st.q, st.U, scen, stats, cfg);
    st.q = solve_q_wgee(st.q, st.aux.s, st.U, scen, stats, cfg, opts);
    st.objective_trace.push_back(wgee(st.q, st.U, scen, stats, cfg));
    st.iterations_used = it;
    const double prev = st.objective_trace[it - 1];
    const double cur = st.objective_trace[it];
    if (std::abs(cur - prev) < stop_threshold(opts, prev, cur)) {
      st.converged = true;
      break;
    }
  }
  st.termination_reason = st.converged ? "tolerance" : "max_iter";
  st.aux = make_aux_fixed_point(st.q, st.U, scen, stats, cfg);
  return st;
}

SolverState full_power_baseline(const NetworkScenario& scen, const ChannelStatistics& stats,
                                const SimConfig& cfg, const SolveOptions& opts) {
  opts.validate();
  SolverState st;
  st.q = full_power_vector(scen);
  st.U = optimal_lsfd_matrix(st.q, scen, stats, cfg);
  if (opts.enforce_qos) {
    const QosReport report = check_qos_feasibility(scen, stats, cfg);
    st.feasible = report.feasible();
    if (!st.feasible) st.termination_reason = "qos_infeasible";
  }
  st.aux = make_aux_fixed_point(st.q, st.U, scen, stats, cfg);
  st.objective_trace = {wsee(st.q, st.U, scen, stats, cfg)};
  st.iterations_used = 0;
  st.converged = st.feasible;
  if (st.termination_reason.empty()) st.termination_reason = "baseline";
  return st;
}

}  // namespace cfwsee
