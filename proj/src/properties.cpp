//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#include "cfwsee/properties.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

namespace cfwsee::props {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_detail(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

std::vector<std::complex<double>> random_unit_on_support(const std::vector<int>& support, int m_count,
                                                         RandomStream& rng) {
  std::vector<std::complex<double>> u(static_cast<std::size_t>(m_count), {0.0, 0.0});
  double norm2 = 0.0;
  for (int m : support) {
    const double re = rng.normal();
    const double im = rng.normal();
    u[m] = {re, im};
    norm2 += re * re + im * im;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (int m : support) u[m] *= inv;
  return u;
}

// Pulls a candidate power vector toward an anchor until the surrogate domain
// holds with margin. The anchor is always strictly inside the domain.
PowerVector pull_into_domain(const QSubproblem& obj, const PowerVector& anchor, PowerVector cand,
                             double margin) {
  for (int round = 0; round < 80; ++round) {
    if (obj.min_inner_surrogate(cand) > margin) return cand;
    for (std::size_t j = 0; j < cand.size(); ++j) cand[j] = 0.5 * (cand[j] + anchor[j]);
  }
  return anchor;
}

}  // namespace

TestInstance random_instance(std::uint64_t seed, bool force_contamination) {
  RandomStream rng(seed);
  TestInstance inst;
  inst.cfg.area_side_m = rng.uniform(400.0, 1000.0);
  inst.cfg.num_aps = 4 + static_cast<int>(rng.next_u64() % 9);
  const int ant_choices[3] = {1, 2, 4};
  inst.cfg.antennas_per_ap = ant_choices[rng.next_u64() % 3];
  inst.cfg.num_ues = 2 + static_cast<int>(rng.next_u64() % 5);
  inst.cfg.coherence_len = 200;
  if (force_contamination) {
    inst.cfg.pilot_len = 1 + static_cast<int>(rng.next_u64() % std::max(1, inst.cfg.num_ues - 1));
  } else {
    inst.cfg.pilot_len = 20;
  }
  inst.cfg.assoc_threshold = rng.uniform(0.5, 1.0);
  inst.cfg.rng_seed = seed;

  const double noise = inst.cfg.noise_power_w();
  inst.profiles.resize(static_cast<std::size_t>(inst.cfg.num_ues));
  for (auto& p : inst.profiles) {
    p.weight = rng.uniform(0.5, 2.0);
    p.p_max_w = rng.uniform(0.1, 0.6);
    p.min_rate_bps_hz = rng.uniform(0.0, 1.0);
    p.pa_efficiency = rng.uniform(0.3, 0.9);
    p.circuit_power_w = rng.uniform(0.5, 1.5);
    p.pilot_snr = p.p_max_w / noise;
  }
  normalize_weights(inst.profiles);

  inst.scen = generate_scenario(inst.cfg, inst.profiles, rng);
  inst.stats = compute_statistics(inst.scen, inst.cfg);
  return inst;
}

PowerVector random_power(const TestInstance& inst, RandomStream& rng, double floor_fraction) {
  PowerVector q(inst.profiles.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    q[k] = inst.profiles[k].p_max_w * (floor_fraction + (1.0 - floor_fraction) * rng.uniform());
  }
  return q;
}

// ---------------------------------------------------------------------------
// Oracles

double golden_section_max(const QSubproblem& objective, int coord, PowerVector base, double lo,
                          double hi, int iterations) {
  auto eval = [&](double x) {
    base[coord] = x;
    const auto v = objective.value(base);
    return v ? *v : -kInf;
  };
  // Coarse scan locates the unimodal peak's cell, golden-section refines it.
  const int grid = 1024;
  double best_x = lo;
  double best_v = -kInf;
  for (int i = 0; i <= grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / grid;
    const double v = eval(x);
    if (v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  const double cell = (hi - lo) / grid;
  double a = std::max(lo, best_x - cell);
  double b = std::min(hi, best_x + cell);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = eval(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = eval(x1);
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double scale = 1e-300;
    for (int p = 0; p < n; ++p) {
      scale = std::max(scale, std::abs(at(p, p)));
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
    }
    if (off <= 1e-15 * scale) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t = 1.0;
        if (theta != 0.0) {
          t = (theta > 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = at(i, p);
          const double aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = at(p, i);
          const double aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
      }
    }
  }
  std::vector<double> eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> fd_hessian(const QSubproblem& objective, const PowerVector& q, double rel_step) {
  const int n = objective.dim();
  std::vector<double> h(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> gp(n), gm(n);
  PowerVector probe = q;
  for (int j = 0; j < n; ++j) {
    const double step = rel_step * std::max(std::abs(q[j]), 1e-3);
    probe[j] = q[j] + step;
    const bool okp = objective.gradient(probe, gp);
    probe[j] = q[j] - step;
    const bool okm = objective.gradient(probe, gm);
    probe[j] = q[j];
    if (!okp || !okm) return {};
    for (int i = 0; i < n; ++i) h[static_cast<std::size_t>(i) * n + j] = (gp[i] - gm[i]) / (2.0 * step);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double sym = 0.5 * (h[static_cast<std::size_t>(i) * n + j] + h[static_cast<std::size_t>(j) * n + i]);
      h[static_cast<std::size_t>(i) * n + j] = sym;
      h[static_cast<std::size_t>(j) * n + i] = sym;
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Property suites

PropertyResult touch_properties(std::uint64_t seed, int instances) {
  double worst = 0.0;
  int done = 0;
  std::uint64_t scenario_id = 0;
  while (done < instances) {
    const TestInstance inst = random_instance(seed + 1000 * scenario_id, (scenario_id % 2) == 0);
    RandomStream rng(seed ^ (scenario_id * 7919));
    ++scenario_id;
    for (int draw = 0; draw < 3 && done < instances; ++draw) {
      const PowerVector q = random_power(inst, rng, 0.05);
      const LsfdMatrix U = optimal_lsfd_matrix(q, inst.scen, inst.stats, inst.cfg);
      double weighted_se = 0.0;
      double total_power = 0.0;
      for (int k = 0; k < inst.cfg.num_ues; ++k) {
        const SinrParts parts = sinr_parts(k, q, U.column(k), inst.scen, inst.stats, inst.cfg);
        const double rate = std::log2(1.0 + parts.value());
        const double power = ue_power(q[k], inst.profiles[k]);
        weighted_se += inst.scen.ue_profiles[k].weight * inst.cfg.prelog() * rate;
        total_power += power;

        const double t = fp::dinkelbach_aux(rate, power);
        worst = std::max(worst, rel_gap(rate - t * power + rate, rate));  // rate - t P == 0

        const double y = fp::qt_outer_aux(rate, power);
        worst = std::max(worst, rel_gap(fp::surrogate_f_value(rate, power, y), rate / power));

        const double z = fp::qt_inner_aux(parts.numerator, parts.denominator);
        worst = std::max(
            worst, rel_gap(fp::qt_inner_surrogate(parts.numerator, parts.denominator, z), parts.value()));

        const auto g = fp::surrogate_g_value(parts.numerator, parts.denominator, power, y, z);
        if (!g) return {"touch_properties", false, "surrogate domain violated at its own fixed point"};
        worst = std::max(worst, rel_gap(*g, rate / power));
      }
      const double s = fp::wgee_dinkelbach_aux(weighted_se, total_power);
      worst = std::max(worst, rel_gap(weighted_se - s * total_power + weighted_se, weighted_se));
      ++done;
    }
  }
  const bool pass = worst <= 1e-12;
  return {"touch_properties", pass, format_detail("worst relative gap %.3e (bound 1e-12)", worst)};
}

PropertyResult surrogate_maximizer_scans(std::uint64_t seed, int instances) {
  double worst_excess = 0.0;
  for (int i = 0; i < instances; ++i) {
    const TestInstance inst = random_instance(seed + 31 * i + 5, (i % 2) == 0);
    RandomStream rng(seed ^ (0x5bd1u + i));
    const PowerVector q = random_power(inst, rng, 0.05);
    const LsfdMatrix U = optimal_lsfd_matrix(q, inst.scen, inst.stats, inst.cfg);
    const int k = static_cast<int>(rng.next_u64() % inst.cfg.num_ues);
    const SinrParts parts = sinr_parts(k, q, U.column(k), inst.scen, inst.stats, inst.cfg);
    const double rate = std::log2(1.0 + parts.value());
    const double power = ue_power(q[k], inst.profiles[k]);

    const double y_star = fp::qt_outer_aux(rate, power);
    const double f_star = fp::surrogate_f_value(rate, power, y_star);
    const double z_star = fp::qt_inner_aux(parts.numerator, parts.denominator);
    const double sinr = parts.value();
    for (int g = 0; g <= 60; ++g) {
      const double factor = static_cast<double>(g) / 20.0;  // 0 .. 3x the update
      const double f = fp::surrogate_f_value(rate, power, factor * y_star);
      worst_excess = std::max(worst_excess, (f - f_star) / std::max(1.0, std::abs(f_star)));
      const double inner =
          fp::qt_inner_surrogate(parts.numerator, parts.denominator, factor * z_star);
      worst_excess = std::max(worst_excess, (inner - sinr) / std::max(1.0, std::abs(sinr)));
    }
  }
  const bool pass = worst_excess <= 1e-12;
  return {"surrogate_maximizer_scans", pass,
          format_detail("worst surrogate excess above update point %.3e (bound 1e-12)", worst_excess)};
}

PropertyResult outer_function_derivative_signs() {
  // H(x) = sqrt(log2(1+x)) must be strictly increasing and strictly concave.
  auto h_fn = [](double x) { return std::sqrt(std::log2(1.0 + x)); };
  for (int i = 0; i <= 240; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * static_cast<double>(i) / 240.0);  // 1e-3 .. 1e3
    const double step = 1e-4 * x;
    const double d1 = (h_fn(x + step) - h_fn(x - step)) / (2.0 * step);
    const double d2 = (h_fn(x + step) - 2.0 * h_fn(x) + h_fn(x - step)) / (step * step);
    const double log_term = std::log2(1.0 + x);
    const double closed_d1 = 1.0 / (2.0 * (1.0 + x) * std::sqrt(log_term));
    const double closed_d2 =
        -(2.0 * log_term + 1.0) / (4.0 * (1.0 + x) * (1.0 + x) * std::pow(log_term, 1.5));
    if (!(d1 > 0.0) || !(closed_d1 > 0.0)) {
      return {"outer_function_derivative_signs", false, format_detail("slope sign broke at x=%.3e", x)};
    }
    if (!(d2 < 0.0) || !(closed_d2 < 0.0)) {
      return {"outer_function_derivative_signs", false,
              format_detail("curvature sign broke at x=%.3e", x)};
    }
  }
  return {"outer_function_derivative_signs", true, "positive slope, negative curvature on (1e-3, 1e3)"};
}

PropertyResult concavity_hessian(std::uint64_t seed, int points) {
  double worst_ratio = -kInf;
  for (int i = 0; i < points; ++i) {
    const TestInstance inst = random_instance(seed + 977 * i + 13, (i % 2) == 0);
    RandomStream rng(seed ^ (0xabcdu + i));
    const PowerVector q0 = random_power(inst, rng, 0.2);
    const LsfdMatrix U = optimal_lsfd_matrix(q0, inst.scen, inst.stats, inst.cfg);
    const AuxState aux = make_aux_fixed_point(q0, U, inst.scen, inst.stats, inst.cfg);
    const QSubproblem obj = QSubproblem::nested_qt(aux.y, aux.z, U, inst.scen, inst.stats, inst.cfg);

    const double margin = 0.05 * std::max(obj.min_inner_surrogate(q0), 1e-6);
    PowerVector q = pull_into_domain(obj, q0, random_power(inst, rng, 0.05), margin);
    const auto hess = fd_hessian(obj, q, 1e-5);
    if (hess.empty()) return {"concavity_hessian", false, "hessian probe left the surrogate domain"};
    const auto eig = jacobi_eigenvalues(hess, obj.dim());
    const double spectral = std::max(std::abs(eig.front()), std::abs(eig.back()));
    const double ratio = eig.back() / std::max(spectral, 1e-300);
    worst_ratio = std::max(worst_ratio, ratio);
  }
  const bool pass = worst_ratio <= 1e-6;
  return {"concavity_hessian", pass,
          format_detail("worst max-eigenvalue / spectral-norm %.3e (bound 1e-6)", worst_ratio)};
}

PropertyResult sqrt_num_midpoint_concavity(std::uint64_t seed, int segments) {
  double worst_violation = 0.0;
  for (int i = 0; i < segments; ++i) {
    const TestInstance inst = random_instance(seed + 557 * i + 3, (i % 2) == 0);
    RandomStream rng(seed ^ (0x77el + i));
    const PowerVector q_ref = random_power(inst, rng, 0.1);
    const LsfdMatrix U = optimal_lsfd_matrix(q_ref, inst.scen, inst.stats, inst.cfg);
    const auto models = build_all_sinr_affine(U, inst.scen, inst.stats, inst.cfg);
    const PowerVector q1 = random_power(inst, rng, 0.0);
    const PowerVector q2 = random_power(inst, rng, 0.0);
    PowerVector mid(q1.size());
    for (std::size_t j = 0; j < mid.size(); ++j) mid[j] = 0.5 * (q1[j] + q2[j]);
    for (const auto& m : models) {
      const double lhs = std::sqrt(m.numerator(mid));
      const double rhs = 0.5 * (std::sqrt(m.numerator(q1)) + std::sqrt(m.numerator(q2)));
      worst_violation = std::max(worst_violation, rhs - lhs);
    }
    // Same predicate at order-one scale, so the bound is not trivially met by
    // tiny gain values.
    const double a = rng.uniform(0.1, 10.0);
    const double x1 = rng.uniform(0.0, 1.0);
    const double x2 = rng.uniform(0.0, 1.0);
    const double lhs = std::sqrt(a * 0.5 * (x1 + x2));
    const double rhs = 0.5 * (std::sqrt(a * x1) + std::sqrt(a * x2));
    worst_violation = std::max(worst_violation, rhs - lhs);
  }
  const bool pass = worst_violation <= 1e-12;
  return {"sqrt_num_midpoint_concavity", pass,
          format_detail("worst midpoint violation %.3e (bound 1e-12)", worst_violation)};
}

PropertyResult lsfd_dominance(std::uint64_t seed, int pairs, int probes) {
  double worst_margin = kInf;
  for (int i = 0; i < pairs; ++i) {
    const TestInstance inst = random_instance(seed + 211 * i + 17, (i % 2) == 0);
    RandomStream rng(seed ^ (0x90210u + i));
    const PowerVector q = random_power(inst, rng, 0.05);
    const int k = static_cast<int>(rng.next_u64() % inst.cfg.num_ues);
    const auto u_opt = optimal_lsfd(k, q, inst.scen, inst.stats, inst.cfg);
    const double sinr_opt = sinr_parts(k, q, u_opt, inst.scen, inst.stats, inst.cfg).value();
    for (int p = 0; p < probes; ++p) {
      const auto u = random_unit_on_support(inst.scen.assoc_sets[k], inst.cfg.num_aps, rng);
      const double sinr = sinr_parts(k, q, u, inst.scen, inst.stats, inst.cfg).value();
      const double margin = (sinr_opt - sinr) / std::max({std::abs(sinr_opt), std::abs(sinr), 1e-300});
      worst_margin = std::min(worst_margin, margin);
    }
  }
  const bool pass = worst_margin >= -1e-9;
  return {"lsfd_dominance", pass,
          format_detail("worst relative margin over probes %.3e (bound -1e-9)", worst_margin)};
}

PropertyResult lsfd_scale_invariance(std::uint64_t seed, int cases) {
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const TestInstance inst = random_instance(seed + 389 * i + 29, (i % 2) == 0);
    RandomStream rng(seed ^ (0xc0ffeeu + i));
    const PowerVector q = random_power(inst, rng, 0.05);
    const int k = static_cast<int>(rng.next_u64() % inst.cfg.num_ues);
    auto u = random_unit_on_support(inst.scen.assoc_sets[k], inst.cfg.num_aps, rng);
    const double base = sinr_parts(k, q, u, inst.scen, inst.stats, inst.cfg).value();

    const double mag = rng.uniform(0.1, 10.0);
    const double phase = rng.uniform(0.0, 6.283185307179586);
    for (const std::complex<double> c : {std::polar(mag, phase), std::complex<double>(-2.5, 0.0)}) {
      auto scaled = u;
      for (auto& v : scaled) v *= c;
      worst =
          std::max(worst, rel_gap(base, sinr_parts(k, q, scaled, inst.scen, inst.stats, inst.cfg).value()));
    }
  }
  const bool pass = worst <= 1e-12;
  return {"lsfd_scale_invariance", pass, format_detail("worst relative gap %.3e (bound 1e-12)", worst)};
}

PropertyResult sinr_affinity(std::uint64_t seed, int cases) {
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const TestInstance inst = random_instance(seed + 449 * i + 41, (i % 2) == 0);
    RandomStream rng(seed ^ (0xaffu + i));
    const PowerVector q_ref = random_power(inst, rng, 0.05);
    const LsfdMatrix U = optimal_lsfd_matrix(q_ref, inst.scen, inst.stats, inst.cfg);
    const auto models = build_all_sinr_affine(U, inst.scen, inst.stats, inst.cfg);
    const PowerVector qa = random_power(inst, rng, 0.0);
    const PowerVector qb = random_power(inst, rng, 0.0);
    PowerVector sum(qa.size()), zero(qa.size(), 0.0);
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = qa[j] + qb[j];
    for (const auto& m : models) {
      // f(a+b) = f(a) + f(b) - f(0) for both affine parts
      const double n_gap = m.numerator(sum) - (m.numerator(qa) + m.numerator(qb) - m.numerator(zero));
      const double d_gap =
          m.denominator(sum) - (m.denominator(qa) + m.denominator(qb) - m.denominator(zero));
      worst = std::max(worst, std::abs(n_gap) / std::max(m.numerator(sum), 1e-300));
      worst = std::max(worst, std::abs(d_gap) / std::max(m.denominator(sum), 1e-300));
    }
  }
  const bool pass = worst <= 1e-12;
  return {"sinr_affinity", pass, format_detail("worst second-difference %.3e (bound 1e-12)", worst)};
}

PropertyResult qos_reformulation_equivalence(std::uint64_t seed, int instances) {
  int done = 0;
  std::uint64_t scenario_id = 0;
  while (done < instances) {
    const TestInstance inst = random_instance(seed + 6007 * scenario_id, (scenario_id % 2) == 0);
    RandomStream rng(seed ^ (0x9e57u + scenario_id));
    ++scenario_id;
    for (int draw = 0; draw < 50 && done < instances; ++draw) {
      const PowerVector q = random_power(inst, rng, 0.0);
      const LsfdMatrix U = optimal_lsfd_matrix(random_power(inst, rng, 0.05), inst.scen, inst.stats, inst.cfg);
      const int k = static_cast<int>(rng.next_u64() % inst.cfg.num_ues);
      const double r = rng.uniform(0.0, 2.0);
      const SinrParts parts = sinr_parts(k, q, U.column(k), inst.scen, inst.stats, inst.cfg);
      const double se = inst.cfg.prelog() * std::log2(1.0 + parts.value());
      const double threshold = qos_sinr_threshold(r, inst.cfg);
      const double lhs = se - r;
      const double rhs = parts.numerator - threshold * parts.denominator;
      const double rhs_scale = std::max(parts.numerator + threshold * parts.denominator, 1e-300);
      const bool tie = std::abs(lhs) <= 1e-12 * std::max({1.0, std::abs(se), r}) ||
                       std::abs(rhs) <= 1e-12 * rhs_scale;
      if (!tie && ((lhs > 0.0) != (rhs > 0.0))) {
        return {"qos_reformulation_equivalence", false,
                format_detail("sign mismatch: se-r=%.3e affine=%.3e", lhs, rhs)};
      }
      ++done;
    }
  }
  return {"qos_reformulation_equivalence", true, "sign agreement on all instances"};
}

namespace {

TestInstance single_ue_instance(std::uint64_t seed) {
  RandomStream rng(seed);
  TestInstance inst;
  inst.cfg.area_side_m = rng.uniform(400.0, 1000.0);
  inst.cfg.num_aps = 2 + static_cast<int>(rng.next_u64() % 7);
  const int ant_choices[3] = {1, 2, 4};
  inst.cfg.antennas_per_ap = ant_choices[rng.next_u64() % 3];
  inst.cfg.num_ues = 1;
  inst.cfg.pilot_len = 1;
  inst.cfg.coherence_len = 200;
  inst.cfg.assoc_threshold = rng.uniform(0.5, 1.0);
  inst.cfg.rng_seed = seed;
  UEProfile p;
  p.weight = 1.0;
  p.p_max_w = rng.uniform(0.1, 0.6);
  p.pa_efficiency = rng.uniform(0.3, 0.9);
  p.circuit_power_w = rng.uniform(0.5, 1.5);
  p.pilot_snr = p.p_max_w / inst.cfg.noise_power_w();
  inst.profiles = {p};
  inst.scen = generate_scenario(inst.cfg, inst.profiles, rng);
  inst.stats = compute_statistics(inst.scen, inst.cfg);
  return inst;
}

}  // namespace

PropertyResult q_solver_golden_section(std::uint64_t seed, int cases) {
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    const TestInstance inst = single_ue_instance(seed + 113 * i + 7);
    RandomStream rng(seed ^ (0x6a11u + i));
    const PowerVector q0 = random_power(inst, rng, 0.1);
    const LsfdMatrix U = optimal_lsfd_matrix(q0, inst.scen, inst.stats, inst.cfg);
    const AuxState aux = make_aux_fixed_point(q0, U, inst.scen, inst.stats, inst.cfg);

    QSubproblem obj = (i % 2 == 0)
                          ? QSubproblem::nested_qt(aux.y, aux.z, U, inst.scen, inst.stats, inst.cfg)
                          : QSubproblem::dinkelbach_wsee(aux.t, aux.z, U, inst.scen, inst.stats, inst.cfg);

    SolveOptions opts;
    opts.inner_tolerance = 1e-12;
    opts.max_inner_iter = 50000;
    FeasibleRegion region;
    region.lo = {0.0};
    region.hi = {inst.profiles[0].p_max_w};
    const PowerVector q_solver = maximize_concave(obj, region, q0, opts);
    const double q_oracle =
        golden_section_max(obj, 0, q0, 0.0, inst.profiles[0].p_max_w, 120);
    const double gap =
        std::abs(q_solver[0] - q_oracle) / std::max(std::abs(q_oracle), 1e-3 * inst.profiles[0].p_max_w);
    worst = std::max(worst, gap);
  }
  const bool pass = worst <= 1e-6;
  return {"q_solver_golden_section", pass,
          format_detail("worst relative argmax gap %.3e (bound 1e-6)", worst)};
}

PropertyResult q_solver_probe_dominance(std::uint64_t seed, int cases, int probes) {
  double worst_margin = kInf;
  for (int i = 0; i < cases; ++i) {
    const TestInstance inst = random_instance(seed + 67 * i + 23, (i % 2) == 0);
    RandomStream rng(seed ^ (0xd0eu + i));
    const PowerVector q0 = random_power(inst, rng, 0.2);
    const LsfdMatrix U = optimal_lsfd_matrix(q0, inst.scen, inst.stats, inst.cfg);
    const AuxState aux = make_aux_fixed_point(q0, U, inst.scen, inst.stats, inst.cfg);
    const QSubproblem obj = QSubproblem::nested_qt(aux.y, aux.z, U, inst.scen, inst.stats, inst.cfg);

    SolveOptions opts;
    opts.inner_tolerance = 1e-10;
    opts.max_inner_iter = 20000;
    FeasibleRegion region;
    region.lo.assign(q0.size(), 0.0);
    region.hi.resize(q0.size());
    for (std::size_t k = 0; k < q0.size(); ++k) region.hi[k] = inst.profiles[k].p_max_w;
    const PowerVector q_star = maximize_concave(obj, region, q0, opts);
    const auto f_star = obj.value(q_star);
    if (!f_star) return {"q_solver_probe_dominance", false, "solver returned an out-of-domain point"};
    for (int p = 0; p < probes; ++p) {
      const PowerVector probe = random_power(inst, rng, 0.0);
      const auto f_probe = obj.value(probe);
      if (!f_probe) continue;  // outside the surrogate domain ranks as -inf
      const double margin = (*f_star - *f_probe) / std::max({std::abs(*f_star), std::abs(*f_probe), 1.0});
      worst_margin = std::min(worst_margin, margin);
    }
  }
  const bool pass = worst_margin >= -1e-9;
  return {"q_solver_probe_dominance", pass,
          format_detail("worst relative margin over probes %.3e (bound -1e-9)", worst_margin)};
}

std::vector<PropertyResult> run_all(std::uint64_t seed, double scale) {
  auto n = [&](int base) { return std::max(1, static_cast<int>(base * scale)); };
  std::vector<PropertyResult> results;
  results.push_back(touch_properties(seed, n(1000)));
  results.push_back(surrogate_maximizer_scans(seed + 1, n(300)));
  results.push_back(outer_function_derivative_signs());
  results.push_back(concavity_hessian(seed + 2, n(100)));
  results.push_back(sqrt_num_midpoint_concavity(seed + 3, n(200)));
  results.push_back(lsfd_dominance(seed + 4, n(100), n(1000)));
  results.push_back(lsfd_scale_invariance(seed + 5, n(200)));
  results.push_back(sinr_affinity(seed + 6, n(200)));
  results.push_back(qos_reformulation_equivalence(seed + 7, n(10000)));
  results.push_back(q_solver_golden_section(seed + 8, n(50)));
  results.push_back(q_solver_probe_dominance(seed + 9, n(30), n(100)));
  return results;
}

}  // namespace cfwsee::props
