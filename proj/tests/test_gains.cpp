/*
 * Copyright 2026 The burstymac Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>

#include "burstymac/core.hpp"
#include "burstymac/gains.hpp"
#include "burstymac/region.hpp"
#include "support/oracles.hpp"

using namespace burstymac;

namespace {

std::vector<double> uniform_grid(int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
  }
  return g;
}

std::vector<double> interior_grid() {  // 0.01 .. 0.99
  std::vector<double> g;
  for (int i = 1; i <= 99; ++i) g.push_back(i / 100.0);
  return g;
}

}  // namespace

TEST_CASE("binomial pmf: dyadic spot values are exact") {
  CHECK(binom_pmf(4, 2, 0.5) == 0.375);        // 6/16
  CHECK(binom_pmf(4, 0, 0.25) == 0.31640625);  // 0.75^4
  CHECK(binom_pmf(3, 3, 1.0) == 1.0);
  CHECK(binom_pmf(3, 0, 0.0) == 1.0);
  CHECK(binom_pmf(3, 1, 0.0) == 0.0);
}

TEST_CASE("binomial pmf: normalization and agreement with the reference") {
  for (int K : {1, 4, 7, 12}) {
    for (double p : {0.05, 0.3, 0.75}) {
      double total = 0.0;
      for (int i = 0; i <= K; ++i) {
        const double v = binom_pmf(K, i, p);
        CHECK(std::abs(v - testsupport::bern_count_pmf(K, i, p)) < 1e-14);
        total += v;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(binom_pmf(4, -1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binom_pmf(4, 5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(binom_pmf(4, 2, 1.5), std::invalid_argument);
}

TEST_CASE("relay gain vanishes without a relay") {
  testsupport::ConfigGen gen(555);
  for (int trial = 0; trial < 20; ++trial) {
    auto cfg = gen.any_symmetric(6, 6);
    cfg.L = 0;
    const double p = 0.05 * gen.pick(0, 20);
    CHECK(delta_dof(cfg, make_independent(p, cfg.K)) == 0.0);
    CHECK(delta_dof(cfg, make_dependent(p, cfg.K)) == 0.0);
    CHECK(delta_dof_dep(cfg, p) == 0.0);
    CHECK(delta_dof_ind(cfg, p) == 0.0);
  }
}

TEST_CASE("general gain at the documented peak operating point") {
  const auto cfg = AntennaConfig::symmetric(4, 1, 1, 3);
  CHECK(std::abs(delta_dof(cfg, make_independent(0.25, 4)) - 0.31640625) < 1e-12);
  CHECK(std::abs(delta_dof(cfg, make_dependent(0.25, 4)) - 0.75) < 1e-12);
}

TEST_CASE("general gain accepts asymmetric configs; closed forms reject them") {
  const AntennaConfig uneven(2, {1, 2}, 2, 1);
  const auto dist = make_independent(0.5, 2);
  CHECK(delta_dof(uneven, dist) >= 0.0);  // general form routes through the subset cuts
  CHECK_THROWS_AS(delta_dof_dep(uneven, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(delta_dof_ind(uneven, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(peak_gain(uneven, TrafficMode::dependent), std::invalid_argument);
  CHECK_THROWS_AS(receive_side_gain(uneven, TrafficMode::independent, 0.5),
                  std::invalid_argument);
  const auto grid = uniform_grid(11);
  CHECK_THROWS_AS(convexity_check(uneven, GainTerm::receive_cut, grid),
                  std::invalid_argument);
  CHECK_THROWS_AS(gain_sweep_csv(uneven, grid), std::invalid_argument);
}

TEST_CASE("all-or-nothing closed form: documented values") {
  CHECK(std::abs(delta_dof_dep(AntennaConfig::symmetric(4, 2, 7, 1), 0.9) - 0.1) < 1e-12);
  CHECK(std::abs(delta_dof_dep(AntennaConfig::symmetric(2, 1, 1, 1), 0.5) - 0.5) < 1e-12);
  CHECK(delta_dof_dep(AntennaConfig::symmetric(2, 1, 1, 1), 0.0) == 0.0);
  // Under-loaded receiver: zero for every p.
  for (double p : {0.0, 0.3, 1.0}) {
    CHECK(delta_dof_dep(AntennaConfig::symmetric(2, 1, 3, 2), p) == 0.0);
  }
  CHECK_THROWS_AS(delta_dof_dep(AntennaConfig::symmetric(2, 1, 1, 1), 1.5),
                  std::invalid_argument);
}

TEST_CASE("per-user closed form: documented values and the p=1 endpoint") {
  CHECK(std::abs(delta_dof_ind(AntennaConfig::symmetric(4, 2, 7, 1), 0.9) - 0.3439) < 1e-12);
  CHECK(std::abs(delta_dof_ind(AntennaConfig::symmetric(4, 2, 1, 1), 0.1) - 0.3439) < 1e-12);
  // p = 1: no idle slots, the transmit-side term vanishes.
  CHECK(delta_dof_ind(AntennaConfig::symmetric(4, 2, 7, 1), 1.0) == 0.0);
  CHECK(delta_dof_ind(AntennaConfig::symmetric(3, 2, 2, 5), 1.0) == 0.0);
}

TEST_CASE("both closed forms equal the general evaluation everywhere") {
  testsupport::ConfigGen gen(20260822);
  for (int trial = 0; trial < 60; ++trial) {
    const auto cfg = gen.any_symmetric(8, 8);
    for (int i = 0; i <= 100; ++i) {
      const double p = i / 100.0;
      CHECK(std::abs(delta_dof_dep(cfg, p) - delta_dof(cfg, make_dependent(p, cfg.K))) <
            1e-12);
      CHECK(std::abs(delta_dof_ind(cfg, p) - delta_dof(cfg, make_independent(p, cfg.K))) <
            1e-12);
    }
  }
}

TEST_CASE("min() sides of the closed forms, individually") {
  const auto cfg = AntennaConfig::symmetric(4, 1, 1, 3);
  for (int i = 0; i <= 50; ++i) {
    const double p = i / 50.0;
    // All-or-nothing sides are straight lines.
    CHECK(std::abs(receive_side_gain(cfg, TrafficMode::dependent, p) - 3.0 * p) < 1e-12);
    CHECK(std::abs(transmit_side_gain(cfg, TrafficMode::dependent, p) - (1.0 - p)) < 1e-12);
    // Independent sides recomputed from the reference pmf.
    double receive = 0.0;
    double transmit = 0.0;
    for (int n = 0; n <= 4; ++n) {
      const double b = testsupport::bern_count_pmf(4, n, p);
      if (n >= 2) receive += b * std::min(n - 1, 3);
      if (n <= 1) transmit += b * std::min(3, 1 - n);
    }
    CHECK(std::abs(receive_side_gain(cfg, TrafficMode::independent, p) - receive) < 1e-12);
    CHECK(std::abs(transmit_side_gain(cfg, TrafficMode::independent, p) - transmit) < 1e-12);
    // And the published gain is their min.
    CHECK(std::abs(delta_dof_ind(cfg, p) - std::min(receive, transmit)) < 1e-12);
  }
}

TEST_CASE("peak gains in the large-relay regime are analytic and exact") {
  const auto cfg = AntennaConfig::symmetric(4, 1, 1, 3);
  const auto dep = peak_gain(cfg, TrafficMode::dependent);
  CHECK(dep.analytic);
  CHECK(dep.p_star == 0.25);
  CHECK(std::abs(dep.value - 0.75) < 1e-12);

  const auto ind = peak_gain(cfg, TrafficMode::independent);
  CHECK(ind.analytic);
  CHECK(ind.p_star == 0.25);
  CHECK(std::abs(ind.value - 0.31640625) < 1e-12);

  const auto two = peak_gain(AntennaConfig::symmetric(2, 1, 1, 1), TrafficMode::independent);
  CHECK(two.analytic);
  CHECK(two.p_star == 0.5);
  CHECK(std::abs(two.value - 0.25) < 1e-12);
}

TEST_CASE("analytic peaks agree with a grid search") {
  testsupport::ConfigGen gen(777);
  for (int trial = 0; trial < 15; ++trial) {
    const auto cfg = gen.big_relay(6, 6);
    for (auto mode : {TrafficMode::dependent, TrafficMode::independent}) {
      const auto peak = peak_gain(cfg, mode);
      CHECK(peak.analytic);
      const auto ref = testsupport::grid_peak(
          [&](double p) {
            return mode == TrafficMode::dependent ? delta_dof_dep(cfg, p)
                                                  : delta_dof_ind(cfg, p);
          },
          20001);
      CHECK(std::abs(peak.p_star - ref.p) < 1e-4);
      CHECK(peak.value >= ref.value - 1e-12);
    }
  }
}

TEST_CASE("peaks outside the large-relay regime fall back to numeric search") {
  // L too small on both counts for (4,2,7,1) and (4,2,1,1): the gain is the
  // symmetric tent min(p, 1-p), peaking at one half.
  for (const auto& cfg :
       {AntennaConfig::symmetric(4, 2, 7, 1), AntennaConfig::symmetric(4, 2, 1, 1)}) {
    const auto dep = peak_gain(cfg, TrafficMode::dependent);
    CHECK_FALSE(dep.analytic);
    CHECK(std::abs(dep.p_star - 0.5) < 1e-9);
    CHECK(std::abs(dep.value - 0.5) < 1e-12);
  }

  // Independent-mode fallback, cross-checked against a golden-section search
  // over the same closed form.
  for (const auto& cfg :
       {AntennaConfig::symmetric(4, 2, 7, 1), AntennaConfig::symmetric(3, 3, 2, 1),
        AntennaConfig::symmetric(1, 3, 1, 1)}) {
    const auto ind = peak_gain(cfg, TrafficMode::independent);
    CHECK_FALSE(ind.analytic);
    const auto coarse = testsupport::grid_peak(
        [&](double p) { return delta_dof_ind(cfg, p); }, 4097);
    const auto ref = testsupport::golden_peak(
        [&](double p) { return delta_dof_ind(cfg, p); },
        std::max(0.0, coarse.p - 1.0 / 4096), std::min(1.0, coarse.p + 1.0 / 4096));
    CHECK(std::abs(ind.p_star - ref.p) < 1e-6);
    CHECK(std::abs(ind.value - ref.value) < 1e-10);
  }
}

TEST_CASE("growing uplinks: peak values rise toward 1 and 1/e") {
  double prev_dep = 0.0;
  double prev_ind = 0.0;
  double prev_gap = 0.0;
  double last_dep = 0.0;
  double last_ind = 0.0;
  for (int K = 2; K <= 100; ++K) {
    const auto cfg = AntennaConfig::symmetric(K, 1, 1, K - 1);
    const auto dep = peak_gain(cfg, TrafficMode::dependent);
    const auto ind = peak_gain(cfg, TrafficMode::independent);
    CHECK(dep.analytic);
    CHECK(ind.analytic);
    CHECK(std::abs(dep.p_star - 1.0 / K) < 1e-15);
    CHECK(std::abs(dep.value - (1.0 - 1.0 / K)) < 1e-12);
    CHECK(std::abs(ind.value - std::pow(1.0 - 1.0 / K, K)) < 1e-12);
    if (K > 2) {
      CHECK(dep.value > prev_dep);
      CHECK(ind.value > prev_ind);
      CHECK(dep.value - ind.value > prev_gap);
    }
    prev_dep = dep.value;
    prev_ind = ind.value;
    prev_gap = dep.value - ind.value;
    last_dep = dep.value;
    last_ind = ind.value;
  }
  CHECK(std::abs(last_dep - 1.0) < 0.011);
  CHECK(std::abs(last_ind - std::exp(-1.0)) < 0.002);
}

TEST_CASE("gain profiles sample the closed forms over a grid") {
  const auto cfg = AntennaConfig::symmetric(2, 1, 1, 1);
  const auto grid = uniform_grid(11);
  const auto prof = gain_profile(cfg, TrafficMode::dependent, grid);
  REQUIRE(prof.samples.size() == 11);
  for (const auto& s : prof.samples) {
    CHECK(std::abs(s.gain - std::min(s.p, 1.0 - s.p)) < 1e-12);
  }
  CHECK(prof.mode == TrafficMode::dependent);
  CHECK(std::string(to_string(prof.mode)) == "dependent");
  CHECK(std::string(to_string(TrafficMode::independent)) == "independent");
}

TEST_CASE("dominance: all-or-nothing wins whenever the relay is large") {
  const auto grid = interior_grid();
  const auto rows = dominance_report(AntennaConfig::symmetric(2, 1, 1, 1), grid);
  REQUIRE(rows.size() == grid.size());
  for (const auto& r : rows) CHECK(r.sign == Dominance::dep_gt_ind);

  testsupport::ConfigGen gen(424242);
  for (int trial = 0; trial < 30; ++trial) {
    const auto cfg = gen.big_relay(7, 7);
    for (const auto& r : dominance_report(cfg, grid)) {
      CHECK(r.sign == Dominance::dep_gt_ind);
      CHECK(r.gain_dep > r.gain_ind);
    }
  }
}

TEST_CASE("dominance: small relays flip the comparison at the extremes") {
  const auto rows_a = dominance_report(AntennaConfig::symmetric(4, 2, 7, 1),
                                       std::vector<double>{0.9});
  REQUIRE(rows_a.size() == 1);
  CHECK(rows_a[0].sign == Dominance::ind_gt_dep);
  CHECK(std::abs(rows_a[0].gain_ind - 0.3439) < 1e-12);
  CHECK(std::abs(rows_a[0].gain_dep - 0.1) < 1e-12);

  const auto rows_b = dominance_report(AntennaConfig::symmetric(4, 2, 1, 1),
                                       std::vector<double>{0.1});
  REQUIRE(rows_b.size() == 1);
  CHECK(rows_b[0].sign == Dominance::ind_gt_dep);
  CHECK(std::abs(rows_b[0].gain_ind - 0.3439) < 1e-12);
  CHECK(std::abs(rows_b[0].gain_dep - 0.1) < 1e-12);

  // No relay: both gains are identically zero, reported as equal.
  for (const auto& r :
       dominance_report(AntennaConfig::symmetric(3, 2, 1, 0), interior_grid())) {
    CHECK(r.sign == Dominance::equal);
  }
  CHECK(std::string(to_string(Dominance::dep_gt_ind)) == "dep>ind");
  CHECK(std::string(to_string(Dominance::ind_gt_dep)) == "ind>dep");
  CHECK(std::string(to_string(Dominance::equal)) == "equal");
}

TEST_CASE("convexity of both gain terms in the large-relay regime") {
  const auto cfg = AntennaConfig::symmetric(4, 1, 1, 3);
  CHECK(convexity_check(cfg, GainTerm::receive_cut, uniform_grid(101)));
  CHECK(convexity_check(cfg, GainTerm::transmit_cut, uniform_grid(101)));
  CHECK(convexity_check(cfg, GainTerm::receive_cut, uniform_grid(1001)));
  CHECK(convexity_check(cfg, GainTerm::transmit_cut, uniform_grid(1001)));

  testsupport::ConfigGen gen(616161);
  for (int trial = 0; trial < 25; ++trial) {
    const auto rnd = gen.big_relay(7, 7);
    CHECK(convexity_check(rnd, GainTerm::receive_cut, uniform_grid(501)));
    CHECK(convexity_check(rnd, GainTerm::transmit_cut, uniform_grid(501)));
  }

  // A single user with a big enough relay: both terms are straight lines,
  // which pass trivially.
  const auto solo = AntennaConfig::symmetric(1, 2, 1, 2);
  CHECK(convexity_check(solo, GainTerm::receive_cut, uniform_grid(11)));
  CHECK(convexity_check(solo, GainTerm::transmit_cut, uniform_grid(11)));
}

TEST_CASE("convexity check refuses configs outside its proven regime") {
  const auto grid = uniform_grid(101);
  // Receive side saturates when L < KM - N.
  CHECK_THROWS_AS(convexity_check(AntennaConfig::symmetric(4, 2, 1, 1),
                                  GainTerm::receive_cut, grid),
                  std::invalid_argument);
  // Transmit side saturates when L < N.
  CHECK_THROWS_AS(convexity_check(AntennaConfig::symmetric(4, 2, 7, 1),
                                  GainTerm::transmit_cut, grid),
                  std::invalid_argument);
  // Not overloaded at all.
  CHECK_THROWS_AS(convexity_check(AntennaConfig::symmetric(2, 1, 3, 4),
                                  GainTerm::receive_cut, grid),
                  std::invalid_argument);
  // Too few grid points.
  CHECK_THROWS_AS(convexity_check(AntennaConfig::symmetric(4, 1, 1, 3),
                                  GainTerm::receive_cut, uniform_grid(2)),
                  std::invalid_argument);
}

TEST_CASE("gain is non-decreasing in relay size and saturates") {
  for (const auto& base : {AntennaConfig::symmetric(4, 2, 3, 0),
                           AntennaConfig::symmetric(3, 1, 2, 0),
                           AntennaConfig::symmetric(5, 2, 4, 0)}) {
    const int KM = base.K * base.sym_M();
    const int sat = std::max(KM - base.N, base.N);
    for (double p : {0.2, 0.5, 0.8}) {
      double prev_dep = -1.0;
      double prev_ind = -1.0;
      double dep_at_sat = 0.0;
      double ind_at_sat = 0.0;
      for (int L = 0; L <= sat + 4; ++L) {
        auto cfg = base;
        cfg.L = L;
        const double gd = delta_dof_dep(cfg, p);
        const double gi = delta_dof_ind(cfg, p);
        CHECK(gd >= prev_dep - 1e-12);
        CHECK(gi >= prev_ind - 1e-12);
        if (L == sat) {
          dep_at_sat = gd;
          ind_at_sat = gi;
        }
        if (L > sat) {
          CHECK(gd == dep_at_sat);
          CHECK(gi == ind_at_sat);
        }
        prev_dep = gd;
        prev_ind = gi;
      }
    }
  }
}

TEST_CASE("gain sweep CSV: shape and a custom-law column") {
  const auto cfg = AntennaConfig::symmetric(2, 1, 1, 1);
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const std::string plain = gain_sweep_csv(cfg, grid);
  CHECK(plain.rfind("p,gain_dep,gain_ind,sumdof_with_relay,sumdof_without_relay\n", 0) == 0);
  CHECK(plain.find("\n0.5,0.5,0.25,1,0.75\n") != std::string::npos);

  const auto custom = make_custom(2, {{0b00, 0.5}, {0b11, 0.5}});  // all-or-nothing 0.5
  const std::string with = gain_sweep_csv(cfg, grid, &custom);
  CHECK(with.rfind("p,gain_dep,gain_ind,gain_custom,sumdof_with_relay,sumdof_without_relay\n",
                   0) == 0);
  // The custom column is the gain of that fixed law, constant across the sweep.
  CHECK(with.find("\n0,0,0,0.5,0,0\n") != std::string::npos);
  CHECK(with.find("\n1,0,0,0.5,1,1\n") != std::string::npos);
}
