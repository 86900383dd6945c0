//
// Project cfwsee - Copyright 2026 the cfwsee authors.
// SPDX-License-Identifier: Apache-2.0
//
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "cfwsee/campaign.hpp"
#include "cfwsee/scenario.hpp"

using namespace cfwsee;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.area_side_m = 1000.0;
  cfg.num_aps = 4;
  cfg.antennas_per_ap = 4;  // keeps M*N >= 4K, so no antenna-budget warning
  cfg.num_ues = 3;
  cfg.pilot_len = 20;
  return cfg;
}

std::vector<UEProfile> uniform_profiles(int k, double pilot_snr = 1.0) {
  UEProfile p;
  p.pilot_snr = pilot_snr;
  return std::vector<UEProfile>(static_cast<std::size_t>(k), p);
}

}  // namespace

TEST_CASE("place_network stays inside the square and is seed-deterministic") {
  SimConfig cfg = small_config();
  cfg.num_aps = 4;
  RandomStream rng(7);
  auto [aps, ues] = place_network(cfg, rng);
  REQUIRE(aps.rows() == 4);
  for (int m = 0; m < aps.rows(); ++m) {
    CHECK(aps(m, 0) >= 0.0);
    CHECK(aps(m, 0) < 1000.0);
    CHECK(aps(m, 1) >= 0.0);
    CHECK(aps(m, 1) < 1000.0);
  }

  RandomStream rng_a(123), rng_b(123);
  auto [apa, uea] = place_network(cfg, rng_a);
  auto [apb, ueb] = place_network(cfg, rng_b);
  CHECK(apa.data() == apb.data());
  CHECK(uea.data() == ueb.data());
}

TEST_CASE("place_network degenerates to the origin for a zero-size square") {
  SimConfig cfg = small_config();
  cfg.area_side_m = 0.0;
  RandomStream rng(3);
  auto [aps, ues] = place_network(cfg, rng);
  for (int m = 0; m < aps.rows(); ++m) {
    CHECK(aps(m, 0) == 0.0);
    CHECK(aps(m, 1) == 0.0);
  }
  for (int k = 0; k < ues.rows(); ++k) {
    CHECK(ues(k, 0) == 0.0);
    CHECK(ues(k, 1) == 0.0);
  }
}

TEST_CASE("three-slope path loss matches direct evaluation") {
  SimConfig cfg = small_config();  // L=140.7, d0=10, d1=50
  // d <= d0 branch: -L - 15 log10(d1) - 20 log10(d0)
  const double near = -140.7 - 15.0 * std::log10(50.0) - 20.0 * std::log10(10.0);
  CHECK(path_loss_db(5.0, cfg) == doctest::Approx(near).epsilon(1e-12));
  CHECK(near == doctest::Approx(-186.185).epsilon(1e-4));
  // d > d1 branch: -L - 35 log10(d)
  CHECK(path_loss_db(100.0, cfg) == doctest::Approx(-140.7 - 35.0 * std::log10(100.0)).epsilon(1e-12));
  CHECK(path_loss_db(100.0, cfg) == doctest::Approx(-210.7).epsilon(1e-9));

  // middle branch: -20 dB per decade via finite differences of log-distance
  const double d_a = 20.0, d_b = 40.0;
  const double slope = (path_loss_db(d_b, cfg) - path_loss_db(d_a, cfg)) /
                       (std::log10(d_b) - std::log10(d_a));
  CHECK(slope == doctest::Approx(-20.0).epsilon(1e-9));

  // nonincreasing in distance on each segment and across boundaries
  double prev = path_loss_db(0.0, cfg);
  for (double d = 1.0; d < 200.0; d += 0.5) {
    const double cur = path_loss_db(d, cfg);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("link path loss is the same slope model evaluated at the calibrated scale") {
  SimConfig cfg = small_config();
  // Identical branch structure, shifted by 35*log10(scale) on every branch.
  const double shift = 35.0 * std::log10(cfg.pathloss_dist_scale_m);
  for (double d : {2.0, 25.0, 80.0, 700.0}) {
    CHECK(link_path_loss_db(d, cfg) == doctest::Approx(path_loss_db(d, cfg) + shift).epsilon(1e-12));
  }
  SimConfig literal = cfg;
  literal.pathloss_dist_scale_m = 1.0;
  CHECK(link_path_loss_db(42.0, literal) == doctest::Approx(path_loss_db(42.0, literal)).epsilon(1e-15));
}

TEST_CASE("large_scale_fading with zero shadowing is a pure dB conversion") {
  SimConfig cfg = small_config();
  cfg.shadowing_std_db = 0.0;
  RandomStream rng(1);
  CHECK(large_scale_fading(-100.0, rng, cfg) == doctest::Approx(1e-10).epsilon(1e-14));
}

TEST_CASE("large_scale_fading follows the log-normal law") {
  SimConfig cfg = small_config();
  cfg.shadowing_std_db = 8.0;
  RandomStream rng(42);
  const double pl_db = -95.0;
  const int n = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double db = 10.0 * std::log10(large_scale_fading(pl_db, rng, cfg));
    sum += db;
    sum_sq += db * db;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(sum_sq / n - mean * mean);
  // mean of log10(beta) ~ pl/10 within 3 sigma of the sample mean
  CHECK(std::abs(mean / 10.0 - pl_db / 10.0) <= 3.0 * 0.8 / std::sqrt(static_cast<double>(n)));
  CHECK(stddev == doctest::Approx(8.0).epsilon(0.03));
}

TEST_CASE("associate picks the smallest strongest prefix") {
  const std::vector<double> beta{0.7, 0.2, 0.1};

  SUBCASE("delta=1 keeps every AP") {
    CHECK(associate(beta, 1.0) == std::vector<int>{0, 1, 2});
  }
  SUBCASE("0.85 needs the two strongest") {
    CHECK(associate(beta, 0.85) == std::vector<int>{0, 1});
  }
  SUBCASE("tiny delta keeps only the strongest") {
    CHECK(associate(beta, 1e-9) == std::vector<int>{0});
  }
  SUBCASE("unsorted input is ranked by gain") {
    const std::vector<double> shuffled{0.1, 0.7, 0.2};
    CHECK(associate(shuffled, 0.85) == std::vector<int>{1, 2});
  }
  SUBCASE("inclusion-monotone in delta") {
    RandomStream rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> b(6);
      for (auto& v : b) v = std::exp(rng.uniform(-8.0, 0.0));
      const double d1 = rng.uniform(0.05, 1.0);
      const double d2 = rng.uniform(d1, 1.0);
      const auto s1 = associate(b, d1);
      const auto s2 = associate(b, d2);
      CHECK(std::includes(s2.begin(), s2.end(), s1.begin(), s1.end()));
    }
  }
  SUBCASE("rejects nonpositive gains") {
    CHECK_THROWS_AS(associate(std::vector<double>{0.5, 0.0}, 0.9), std::invalid_argument);
  }
}

TEST_CASE("assign_pilots is orthogonal when possible, balanced otherwise") {
  RandomStream rng(9);

  SUBCASE("16 UEs on 20 pilots get distinct pilots") {
    Matrix beta(4, 16, 1e-10);
    const auto pilots = assign_pilots(16, 20, beta, rng);
    std::set<int> distinct(pilots.begin(), pilots.end());
    CHECK(distinct.size() == 16);
    const auto groups = pilot_groups_from_index(pilots);
    for (int k = 0; k < 16; ++k) CHECK(groups[k] == std::vector<int>{k});
  }

  SUBCASE("50 UEs on 20 pilots split into groups of 2 or 3") {
    Matrix beta(4, 50);
    RandomStream g(17);
    for (int m = 0; m < 4; ++m) {
      for (int k = 0; k < 50; ++k) beta(m, k) = std::exp(g.uniform(-25.0, -15.0));
    }
    const auto pilots = assign_pilots(50, 20, beta, rng);
    std::vector<int> counts(20, 0);
    for (int p : pilots) ++counts[p];
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    CHECK(*lo >= 2);
    CHECK(*hi <= 3);
    CHECK(*hi - *lo <= 1);
  }

  SUBCASE("single UE shares with nobody") {
    Matrix beta(2, 1, 1e-9);
    const auto pilots = assign_pilots(1, 20, beta, rng);
    const auto groups = pilot_groups_from_index(pilots);
    CHECK(groups[0] == std::vector<int>{0});
  }
}

TEST_CASE("compute_gamma matches the closed form") {
  SUBCASE("uncontaminated closed form") {
    Matrix beta(1, 1, 2.5e-10);
    std::vector<std::vector<int>> groups{{0}};
    auto profiles = uniform_profiles(1, 3.0e9);
    const Matrix gamma = compute_gamma(beta, groups, profiles, 20);
    const double tb = 20.0 * 3.0e9 * 2.5e-10;
    const double expected = tb * 2.5e-10 / (tb + 1.0);
    CHECK(gamma(0, 0) == doctest::Approx(expected).epsilon(1e-14));
  }

  SUBCASE("unit beta with tau*rho = 1 gives one half") {
    Matrix beta(1, 1, 1.0);
    std::vector<std::vector<int>> groups{{0}};
    auto profiles = uniform_profiles(1, 0.05);  // tau_p * rho = 20 * 0.05 = 1
    const Matrix gamma = compute_gamma(beta, groups, profiles, 20);
    CHECK(gamma(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  }

  SUBCASE("perfect estimation limit") {
    Matrix beta(1, 1, 1e-9);
    std::vector<std::vector<int>> groups{{0}};
    auto profiles = uniform_profiles(1, 1e15);
    const Matrix gamma = compute_gamma(beta, groups, profiles, 20);
    CHECK(gamma(0, 0) == doctest::Approx(1e-9).epsilon(1e-4));
  }

  SUBCASE("bounded by beta, shrinks under contamination") {
    Matrix beta(2, 2);
    beta(0, 0) = 3e-10; beta(0, 1) = 1e-10;
    beta(1, 0) = 2e-11; beta(1, 1) = 4e-10;
    auto profiles = uniform_profiles(2, 1e9);
    std::vector<std::vector<int>> apart{{0}, {1}};
    std::vector<std::vector<int>> shared{{0, 1}, {0, 1}};
    const Matrix g_apart = compute_gamma(beta, apart, profiles, 10);
    const Matrix g_shared = compute_gamma(beta, shared, profiles, 10);
    for (int m = 0; m < 2; ++m) {
      for (int k = 0; k < 2; ++k) {
        CHECK(g_apart(m, k) > 0.0);
        CHECK(g_apart(m, k) <= beta(m, k));
        CHECK(g_shared(m, k) < g_apart(m, k));  // extra sharer strictly hurts
      }
    }
  }

  SUBCASE("rejects nonpositive beta") {
    Matrix beta(1, 1, 0.0);
    std::vector<std::vector<int>> groups{{0}};
    auto profiles = uniform_profiles(1);
    CHECK_THROWS_AS(compute_gamma(beta, groups, profiles, 10), std::invalid_argument);
  }
}

TEST_CASE("full scenario pipeline is a pure function of config and seed") {
  CampaignConfig camp = desk_preset();
  camp.sim.rng_seed = 99;
  const auto profiles = build_profiles(camp);

  RandomStream rng_a(camp.sim.rng_seed), rng_b(camp.sim.rng_seed);
  const NetworkScenario a = generate_scenario(camp.sim, profiles, rng_a);
  const NetworkScenario b = generate_scenario(camp.sim, profiles, rng_b);
  CHECK(scenario_hash(a) == scenario_hash(b));
  CHECK(a.beta.data() == b.beta.data());
  CHECK(a.pilot_index == b.pilot_index);
  CHECK(a.assoc_sets == b.assoc_sets);

  for (int k = 0; k < camp.sim.num_ues; ++k) CHECK(!a.assoc_sets[k].empty());
  const ChannelStatistics stats = compute_statistics(a, camp.sim);
  for (int m = 0; m < camp.sim.num_aps; ++m) {
    for (int k = 0; k < camp.sim.num_ues; ++k) {
      CHECK(stats.gamma(m, k) > 0.0);
      CHECK(stats.gamma(m, k) <= stats.beta(m, k));
    }
  }
}

TEST_CASE("config validation flags bad fields and warns on thin antenna budgets") {
  SimConfig cfg = small_config();
  CHECK(cfg.validate().empty());

  SimConfig bad = cfg;
  bad.pilot_len = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.assoc_threshold = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.d1_m = bad.d0_m;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  SimConfig thin = cfg;
  thin.num_aps = 2;
  thin.antennas_per_ap = 1;
  thin.num_ues = 3;  // 2 < 12
  CHECK(thin.validate().size() == 1);
}

TEST_CASE("noise power follows the thermal model") {
  SimConfig cfg = small_config();  // B = 20 MHz, NF = 7 dB
  const double expected = 1.380649e-23 * 290.0 * 20e6 * std::pow(10.0, 0.7);
  CHECK(cfg.noise_power_w() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("weight normalization makes weights sum to the UE count") {
  auto profiles = uniform_profiles(4);
  profiles[0].weight = 3.0;
  profiles[1].weight = 1.0;
  profiles[2].weight = 1.0;
  profiles[3].weight = 1.0;
  normalize_weights(profiles);
  double sum = 0.0;
  for (const auto& p : profiles) sum += p.weight;
  CHECK(sum == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(profiles[0].weight == doctest::Approx(2.0).epsilon(1e-12));
}
