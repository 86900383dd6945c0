//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfwsee/fp_transforms.hpp"
#include "cfwsee/metrics.hpp"

namespace cfwsee {

struct SolveOptions {
  double tolerance = 1e2;            // absolute objective delta, objective units
  double relative_tolerance = 1e-5;  // relative objective delta
  int max_iter = 150;
  double inner_tolerance = 1e-9;     // KKT fixed-point residual of the q step
  double step_shrink = 0.5;          // backtracking factor
  bool enforce_qos = false;
  int max_inner_iter = 2000;

  void validate() const;  // throws std::invalid_argument
};

// Weighted surrogate sums along one iteration of the nested-QT loop,
// snapshotted after each sub-update at the pre-update power vector.
struct QtChainSample {
  double before_u = 0.0;
  double after_u = 0.0;
  double after_z = 0.0;
  double after_y = 0.0;
  double after_q = 0.0;
};

struct SolverState {
  PowerVector q;
  LsfdMatrix U;
  AuxState aux;
  std::vector<double> objective_trace;  // length = iterations_used + 1
  std::vector<QtChainSample> qt_chain;  // nested-QT runs only
  int iterations_used = 0;
  bool converged = false;
  bool feasible = true;
  std::string termination_reason;
};

struct QosReport {
  std::vector<int> violating_ues;
  std::vector<double> residuals;        // num - threshold * denom, per UE
  std::vector<double> sinr_thresholds;  // per UE
  bool feasible() const { return violating_ues.empty(); }
};

// Evaluates the affine rate-constraint form at full power with the optimal
// combiner and reports any UE that cannot meet its rate requirement.
QosReport check_qos_feasibility(const NetworkScenario& scen, const ChannelStatistics& stats,
                                const SimConfig& cfg);

// Concave surrogate objective of the power subproblem, shared by the three
// algorithms. The inner quadratic transform (vector z) concavifies the SINR
// inside every variant; the variants differ in the outer term.
class QSubproblem {
 public:
  enum class Kind { NestedQt, DinkelbachWsee, DinkelbachWgee };

  static QSubproblem nested_qt(std::vector<double> y, std::vector<double> z, const LsfdMatrix& U,
                               const NetworkScenario& scen, const ChannelStatistics& stats,
                               const SimConfig& cfg);
  static QSubproblem dinkelbach_wsee(std::vector<double> t, std::vector<double> z, const LsfdMatrix& U,
                                     const NetworkScenario& scen, const ChannelStatistics& stats,
                                     const SimConfig& cfg);
  static QSubproblem dinkelbach_wgee(double s, std::vector<double> z, const LsfdMatrix& U,
                                     const NetworkScenario& scen, const ChannelStatistics& stats,
                                     const SimConfig& cfg);

  // Empty when q is outside the surrogate's domain.
  std::optional<double> value(std::span<const double> q) const;
  // False when q is outside the domain of the gradient.
  bool gradient(std::span<const double> q, std::span<double> grad) const;
  // Smallest inner-surrogate value across UEs; the domain edge sits at 0
  // (nested form) or -1 (Dinkelbach forms).
  double min_inner_surrogate(std::span<const double> q) const;

  int dim() const { return static_cast<int>(weights_.size()); }
  const std::vector<SinrAffineModel>& models() const { return models_; }

 private:
  QSubproblem() = default;

  Kind kind_ = Kind::NestedQt;
  std::vector<SinrAffineModel> models_;
  std::vector<double> weights_;
  std::vector<double> z_;
  std::vector<double> y_or_t_;  // y for NestedQt, t for DinkelbachWsee
  double s_ = 0.0;
  double prelog_ = 1.0;
  std::vector<double> inv_pa_;
  std::vector<double> circuit_;
};

// Box plus optional affine halfspaces (a . q >= b). Projection uses Dykstra's
// alternating scheme when halfspaces are present.
struct FeasibleRegion {
  std::vector<double> lo;
  std::vector<double> hi;
  struct Halfspace {
    std::vector<double> normal;  // unit norm
    double offset = 0.0;         // normal . q >= offset
  };
  std::vector<Halfspace> halfspaces;

  void project(std::span<double> q) const;
  bool contains(std::span<const double> q, double tol) const;
};

FeasibleRegion make_power_region(const NetworkScenario& scen, const std::vector<SinrAffineModel>& models,
                                 const SimConfig& cfg, bool enforce_qos);

// Projected gradient ascent with backtracking, monotone accept, and a domain
// guard. Returns a point whose objective is >= the start objective; reports
// the final fixed-point residual through kkt_residual when non-null.
PowerVector maximize_concave(const QSubproblem& objective, const FeasibleRegion& region,
                             const PowerVector& q0, const SolveOptions& opts,
                             double* kkt_residual = nullptr);

// Power steps of the three algorithms. Auxiliaries are honored as passed;
// the Dinkelbach variants compute the inner-QT z at (q0, U) themselves.
PowerVector solve_q_nested_qt(const PowerVector& q0, std::span<const double> y, std::span<const double> z,
                              const LsfdMatrix& U, const NetworkScenario& scen,
                              const ChannelStatistics& stats, const SimConfig& cfg,
                              const SolveOptions& opts);
PowerVector solve_q_dinkelbach_like(const PowerVector& q0, std::span<const double> t, const LsfdMatrix& U,
                                    const NetworkScenario& scen, const ChannelStatistics& stats,
                                    const SimConfig& cfg, const SolveOptions& opts);
PowerVector solve_q_wgee(const PowerVector& q0, double s, const LsfdMatrix& U, const NetworkScenario& scen,
                         const ChannelStatistics& stats, const SimConfig& cfg, const SolveOptions& opts);

// Alternating-optimization drivers. Each starts from full power with the
// closed-form combiner and records the metric trace per iteration.
SolverState algorithm1_dinkelbach_like(const NetworkScenario& scen, const ChannelStatistics& stats,
                                       const SimConfig& cfg, const SolveOptions& opts);
SolverState algorithm2_nested_qt(const NetworkScenario& scen, const ChannelStatistics& stats,
                                 const SimConfig& cfg, const SolveOptions& opts);
SolverState algorithm3_wgee(const NetworkScenario& scen, const ChannelStatistics& stats,
                            const SimConfig& cfg, const SolveOptions& opts);

// Full transmit power, one combiner update, metrics evaluated once.
SolverState full_power_baseline(const NetworkScenario& scen, const ChannelStatistics& stats,
                                const SimConfig& cfg, const SolveOptions& opts);

}  // namespace cfwsee
