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
#include <vector>

#include <doctest.h>

#include "burstymac/core.hpp"
#include "burstymac/oracle.hpp"
#include "burstymac/region.hpp"
#include "burstymac/sim.hpp"

using namespace burstymac;

namespace {

const AntennaConfig kPair = AntennaConfig::symmetric(2, 1, 1, 1);
const AntennaConfig kTrio = AntennaConfig::symmetric(3, 1, 2, 1);

ActivityTrace explicit_trace(int K, std::vector<Pattern> slots) {
  ActivityTrace t;
  t.K = K;
  t.slots = std::move(slots);
  return t;
}

}  // namespace

TEST_CASE("finite-field elimination rank on small matrices") {
  CHECK(gf_rank({}) == 0);
  CHECK(gf_rank({{0, 0}, {0, 0}}) == 0);
  CHECK(gf_rank({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 3);
  CHECK(gf_rank({{1, 2}, {2, 4}}) == 1);          // second row is twice the first
  CHECK(gf_rank({{1, 2, 3}, {4, 5, 6}}) == 2);
  // A multiple that only exists modulo the prime: 2^31 - 2 == -1.
  CHECK(gf_rank({{1, 1}, {kPrime - 1, kPrime - 1}}) == 1);
  CHECK(gf_rank({{5}, {7}, {11}}) == 1);          // tall single column
}

TEST_CASE("real rank with the relative singular-value cutoff") {
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  CHECK(real_rank(id) == 3);
  Eigen::MatrixXd outer(2, 2);
  outer << 1.0, 2.0, 2.0, 4.0;
  CHECK(real_rank(outer) == 1);
  // A 1e-10 perturbation sits far below the 1e-8 * sigma_max cutoff.
  Eigen::MatrixXd nearly(2, 2);
  nearly << 1.0, 1.0, 1.0, 1.0 + 1e-10;
  CHECK(real_rank(nearly) == 1);
  CHECK(real_rank(Eigen::MatrixXd::Zero(2, 3)) == 0);
  CHECK(real_rank(Eigen::MatrixXd{}) == 0);
}

TEST_CASE("sampled channels have the right shapes and generic rank") {
  const AntennaConfig cfg(3, {1, 2, 1}, 2, 2);
  const auto prime = sample_channel(cfg, ChannelField::prime, 11);
  REQUIRE(prime.to_receiver_gf.size() == 3);
  REQUIRE(prime.to_relay_gf.size() == 3);
  for (int k = 0; k < 3; ++k) {
    const auto& h = prime.to_receiver_gf[static_cast<std::size_t>(k)];
    CHECK(h.rows == cfg.N);
    CHECK(h.cols == cfg.M[static_cast<std::size_t>(k)]);
    for (auto e : h.v) CHECK(e != 0);  // entries drawn from the nonzero residues
    const auto& g = prime.to_relay_gf[static_cast<std::size_t>(k)];
    CHECK(g.rows == cfg.L);
    CHECK(g.cols == cfg.M[static_cast<std::size_t>(k)]);
  }
  CHECK(prime.from_relay_gf.rows == cfg.N);
  CHECK(prime.from_relay_gf.cols == cfg.L);
  // User 2 has two antennas: its 2x2 uplink block must be invertible.
  std::vector<std::vector<std::uint32_t>> rows = {
      {prime.to_receiver_gf[1].at(0, 0), prime.to_receiver_gf[1].at(0, 1)},
      {prime.to_receiver_gf[1].at(1, 0), prime.to_receiver_gf[1].at(1, 1)}};
  CHECK(gf_rank(rows) == 2);

  const auto real = sample_channel(cfg, ChannelField::real, 11);
  REQUIRE(real.to_receiver.size() == 3);
  CHECK(real.to_receiver[1].rows() == 2);
  CHECK(real.to_receiver[1].cols() == 2);
  CHECK(real_rank(real.to_receiver[1]) == 2);
  CHECK(real.from_relay.rows() == cfg.N);
  CHECK(real.from_relay.cols() == cfg.L);

  // Same seed, same channel; different seed, different channel.
  const auto again = sample_channel(cfg, ChannelField::prime, 11);
  CHECK(again.to_receiver_gf[0].v == prime.to_receiver_gf[0].v);
  const auto other = sample_channel(cfg, ChannelField::prime, 12);
  CHECK(other.to_receiver_gf[0].v != prime.to_receiver_gf[0].v);
}

TEST_CASE("decoding rank on hand-checked traces") {
  const auto ch = sample_channel(kPair, ChannelField::prime, 5);

  // Collision then silence: the relay's stored overflow dimension comes back
  // through the downlink, so both symbols resolve.
  CHECK(rank_decode_count(kPair, explicit_trace(2, {0b11, 0b00}), ch) == 2);

  // Collision with no later idle slot: one dimension stays stuck at the relay.
  CHECK(rank_decode_count(kPair, explicit_trace(2, {0b11}), ch) == 1);
  CHECK(rank_decode_count(kPair, explicit_trace(2, {0b11, 0b11}), ch) == 2);

  // Nothing sent, nothing decoded.
  CHECK(rank_decode_count(kPair, explicit_trace(2, {0b00, 0b00}), ch) == 0);

  // Interference-free slots decode directly.
  CHECK(rank_decode_count(kPair, explicit_trace(2, {0b01, 0b10}), ch) == 2);

  // A single user with more antennas than the receiver: the relay catches the
  // overflow in slot one and forwards it in slot two (strict causality means
  // the busy slot alone yields only one dimension).
  const AntennaConfig solo(1, {2}, 1, 1);
  const auto ch_solo = sample_channel(solo, ChannelField::prime, 6);
  CHECK(rank_decode_count(solo, explicit_trace(1, {0b1}), ch_solo) == 1);
  CHECK(rank_decode_count(solo, explicit_trace(1, {0b1, 0b0}), ch_solo) == 2);
}

TEST_CASE("decoding rank equals the counting simulator, prime field") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto trace = sample_trace(make_independent(0.5, 3), 50, seed);
    const auto rep = simulate_trace(kTrio, trace);
    const auto ch = sample_channel(kTrio, ChannelField::prime, seed + 1000);
    const auto decoded = rank_decode_count(kTrio, trace, ch);
    CHECK(decoded ==
          static_cast<int>(rep.delivered_direct + rep.delivered_relayed));
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto trace = sample_trace(make_dependent(0.4, 2), 50, seed);
    const auto rep = simulate_trace(kPair, trace);
    const auto ch = sample_channel(kPair, ChannelField::prime, seed + 2000);
    CHECK(rank_decode_count(kPair, trace, ch) ==
          static_cast<int>(rep.delivered_direct + rep.delivered_relayed));
  }
}

TEST_CASE("prime and real fields agree on the decoding rank") {
  for (std::uint64_t seed : {3ULL, 14ULL, 159ULL, 2653ULL}) {
    const auto trace = sample_trace(make_independent(0.45, 3), 40, seed);
    const auto prime = sample_channel(kTrio, ChannelField::prime, seed);
    const auto real = sample_channel(kTrio, ChannelField::real, seed);
    CHECK(rank_decode_count(kTrio, trace, prime) ==
          rank_decode_count(kTrio, trace, real));
  }
}

TEST_CASE("decoding rank rejects out-of-scope inputs") {
  const auto ch = sample_channel(kPair, ChannelField::prime, 1);
  CHECK_THROWS_AS(rank_decode_count(kPair, explicit_trace(3, {0b111}), ch),
                  std::invalid_argument);
  CHECK_THROWS_AS(rank_decode_count(kPair, explicit_trace(2, {}), ch),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      rank_decode_count(kPair, explicit_trace(2, std::vector<Pattern>(201, 0b11)), ch),
      std::invalid_argument);
  const auto big = AntennaConfig::symmetric(5, 1, 2, 1);
  const auto ch5 = sample_channel(big, ChannelField::prime, 1);
  CHECK_THROWS_AS(rank_decode_count(big, explicit_trace(5, {0b11111}), ch5),
                  std::invalid_argument);
  // Channel sampled for a different geometry.
  const auto ch_trio = sample_channel(kTrio, ChannelField::prime, 1);
  CHECK_THROWS_AS(rank_decode_count(kPair, explicit_trace(2, {0b11}), ch_trio),
                  std::invalid_argument);
}

TEST_CASE("cut-set evaluation: degenerate laws and growth in power") {
  const auto ch = sample_channel(kPair, ChannelField::real, 21);
  const Pattern full = 0b11;

  // Nobody ever transmits: the receive side carries no information, while the
  // transmit side still counts the relay's standalone downlink.
  const auto idle = cutset_evaluate(kPair, make_independent(0.0, 2), full, 100.0, ch);
  CHECK(idle.receive_bits == 0.0);
  CHECK(idle.transmit_bits > 0.0);

  // Both sides grow with transmit power.
  const auto dist = make_independent(0.5, 2);
  const auto lo = cutset_evaluate(kPair, dist, full, 10.0, ch);
  const auto hi = cutset_evaluate(kPair, dist, full, 1000.0, ch);
  CHECK(lo.receive_bits > 0.0);
  CHECK(hi.receive_bits > lo.receive_bits);
  CHECK(hi.transmit_bits > lo.transmit_bits);

  CHECK_THROWS_AS(cutset_evaluate(kPair, dist, 0, 10.0, ch), std::invalid_argument);
  CHECK_THROWS_AS(cutset_evaluate(kPair, dist, 0b100, 10.0, ch), std::invalid_argument);
  CHECK_THROWS_AS(cutset_evaluate(kPair, dist, full, 0.0, ch), std::invalid_argument);
  CHECK_THROWS_AS(cutset_evaluate(kPair, dist, full, -1.0, ch), std::invalid_argument);
  CHECK_THROWS_AS(cutset_evaluate(kPair, make_independent(0.5, 3), full, 10.0, ch),
                  std::invalid_argument);
  const auto ch_gf = sample_channel(kPair, ChannelField::prime, 21);
  CHECK_THROWS_AS(cutset_evaluate(kPair, dist, full, 10.0, ch_gf), std::invalid_argument);
}

TEST_CASE("high-power slope of the cut-set value reproduces the cut bound") {
  const std::vector<double> powers = {1e6, 1e8};

  // Pair: full set at independent p = 0.25 has bound 1/2.
  {
    const auto ch = sample_channel(kPair, ChannelField::real, 31);
    const auto dist = make_independent(0.25, 2);
    const auto s = cutset_slope(kPair, dist, 0b11, powers, ch);
    CHECK(s.bound == 0.5);
    CHECK(s.abs_error < 0.05);
    for (Pattern sub : {Pattern{0b01}, Pattern{0b10}}) {
      const auto one = cutset_slope(kPair, dist, sub, powers, ch);
      CHECK(one.bound == 0.25);
      CHECK(one.abs_error < 0.05);
    }
  }

  // Trio under the all-or-nothing law at p = 0.5: bound 3/2.
  {
    const auto ch = sample_channel(kTrio, ChannelField::real, 32);
    const auto dist = make_dependent(0.5, 3);
    const auto s = cutset_slope(kTrio, dist, 0b111, powers, ch);
    CHECK(s.bound == 1.5);
    CHECK(s.abs_error < 0.05);
    const auto one = cutset_slope(kTrio, dist, 0b010, powers, ch);
    CHECK(one.bound == 0.5);
    CHECK(one.abs_error < 0.05);
  }

  const auto ch = sample_channel(kPair, ChannelField::real, 33);
  const auto dist = make_independent(0.25, 2);
  CHECK_THROWS_AS(cutset_slope(kPair, dist, 0b11, std::vector<double>{1e6}, ch),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      cutset_slope(kPair, dist, 0b11, std::vector<double>{1e6, 1e6}, ch),
      std::invalid_argument);
}

TEST_CASE("forwarding rate penalty is one bit per relay antenna, at any power") {
  for (int L = 0; L <= 8; ++L) {
    CHECK(rate_penalty(L) == static_cast<double>(L));
    // Differential-entropy cross-check: h(noise + unit dither) - h(dither)
    // with unit noise is exactly L bits; the evaluation is power-free, which
    // is the point — the cost of the quantized downlink does not scale with P.
    CHECK(std::abs(rate_penalty_entropy_difference(L) - L) < 1e-9);
  }
  CHECK_THROWS_AS(rate_penalty(-1), std::invalid_argument);
  CHECK_THROWS_AS(rate_penalty_entropy_difference(-2), std::invalid_argument);
}

TEST_CASE("Monte-Carlo surprisal difference converges to the penalty") {
  CHECK(rate_penalty_mc(0, 10, 1) == 0.0);
  CHECK(std::abs(rate_penalty_mc(1, 100000, 7) - 1.0) < 0.05);
  CHECK(std::abs(rate_penalty_mc(3, 200000, 7) - 3.0) < 0.1);
  // Deterministic in the seed.
  CHECK(rate_penalty_mc(2, 1000, 9) == rate_penalty_mc(2, 1000, 9));
  CHECK_THROWS_AS(rate_penalty_mc(-1, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(rate_penalty_mc(2, 0, 1), std::invalid_argument);
}
