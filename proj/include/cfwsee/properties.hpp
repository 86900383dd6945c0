//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfwsee/campaign.hpp"
#include "cfwsee/optimizer.hpp"

namespace cfwsee::props {

struct PropertyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Small randomized network instance for property checks. Dimensions are drawn
// wide enough to cover pilot contamination (tau_p < K) and multi-antenna APs.
struct TestInstance {
  SimConfig cfg;
  std::vector<UEProfile> profiles;
  NetworkScenario scen;
  ChannelStatistics stats;
};

TestInstance random_instance(std::uint64_t seed, bool force_contamination = true);

// Random power vector inside the box, optionally bounded away from zero.
PowerVector random_power(const TestInstance& inst, RandomStream& rng, double floor_fraction = 0.0);

// Independent oracles ------------------------------------------------------

// Golden-section maximization of a unimodal objective on [lo, hi]; function
// values outside the objective's domain rank as -inf.
double golden_section_max(const QSubproblem& objective, int coord, PowerVector base, double lo,
                          double hi, int iterations);

// Symmetric-matrix eigenvalues via cyclic Jacobi sweeps.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

// Central-difference Hessian of the weighted surrogate sum.
std::vector<double> fd_hessian(const QSubproblem& objective, const PowerVector& q, double rel_step);

// Property suites ----------------------------------------------------------

PropertyResult touch_properties(std::uint64_t seed, int instances);
PropertyResult surrogate_maximizer_scans(std::uint64_t seed, int instances);
PropertyResult outer_function_derivative_signs();
PropertyResult concavity_hessian(std::uint64_t seed, int points);
PropertyResult sqrt_num_midpoint_concavity(std::uint64_t seed, int segments);
PropertyResult lsfd_dominance(std::uint64_t seed, int pairs, int probes);
PropertyResult lsfd_scale_invariance(std::uint64_t seed, int cases);
PropertyResult sinr_affinity(std::uint64_t seed, int cases);
PropertyResult qos_reformulation_equivalence(std::uint64_t seed, int instances);
PropertyResult q_solver_golden_section(std::uint64_t seed, int cases);
PropertyResult q_solver_probe_dominance(std::uint64_t seed, int cases, int probes);

// Full battery at the given scale (counts multiply the per-suite defaults).
std::vector<PropertyResult> run_all(std::uint64_t seed, double scale = 1.0);

}  // namespace cfwsee::props
