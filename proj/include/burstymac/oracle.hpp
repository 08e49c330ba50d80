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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "burstymac/core.hpp"
#include "burstymac/sim.hpp"

namespace burstymac {

// Two independent ways to check the theory against something that is not the
// theory:
//
//  * rank_decode_count replays a finite activity trace through an explicit
//    noiseless linear system — generic channel matrices, the relay forwarding
//    fresh random combinations of everything it has heard — and counts
//    decodable symbols as the rank of the receiver's stacked system.  It must
//    agree with the dimension-counting simulator slot for slot.
//
//  * cutset_evaluate computes the actual finite-SNR cut-set bound
//    E[log2 det(...)] for sampled channels; its slope in log2 P must approach
//    the corresponding subset cut of the DoF region.

/// Field the channel entries live in.  The prime field (order 2^31 - 1) gives
/// exact ranks; the real field exercises the same construction in floating
/// point with an SVD-based rank decision.
enum class ChannelField { prime, real };

/// Dense matrix over GF(2^31 - 1).
struct PrimeMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint32_t> v;  // row-major

  PrimeMatrix() = default;
  PrimeMatrix(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0) {}
  std::uint32_t& at(int r, int c) { return v[static_cast<std::size_t>(r) * cols + c]; }
  std::uint32_t at(int r, int c) const { return v[static_cast<std::size_t>(r) * cols + c]; }
};

inline constexpr std::uint32_t kPrime = 2147483647u;  // 2^31 - 1

/// One draw of every channel matrix in the network, all verified full rank.
struct ChannelInstance {
  AntennaConfig config;
  ChannelField field = ChannelField::prime;
  std::uint64_t seed = 0;

  // real mode (empty otherwise); entries are i.i.d. standard Gaussian
  std::vector<Eigen::MatrixXd> to_receiver;  ///< user k -> receiver, N x M_k
  std::vector<Eigen::MatrixXd> to_relay;     ///< user k -> relay,    L x M_k
  Eigen::MatrixXd from_relay;                ///< relay -> receiver,  N x L

  // prime mode (empty otherwise); entries uniform in [1, p-1]
  std::vector<PrimeMatrix> to_receiver_gf;
  std::vector<PrimeMatrix> to_relay_gf;
  PrimeMatrix from_relay_gf;
};

/// Draw a channel; re-draws (up to 10 times) any matrix that comes out rank
/// deficient, which for these fields is a measure-zero/1e-9 event.
ChannelInstance sample_channel(const AntennaConfig& config, ChannelField field,
                               std::uint64_t seed);

/// Rank of GF(p) / real matrices (real uses singular values above
/// 1e-8 * sigma_max).  Exposed for tests.
int gf_rank(std::vector<std::vector<std::uint32_t>> rows);
int real_rank(const Eigen::MatrixXd& m);

/// Number of transmitted symbols the receiver can decode from `trace` over
/// `channel`, with the relay run by the same per-slot policy as the
/// simulator.  Desk-scale only: K <= 4 users, <= 200 slots.
int rank_decode_count(const AntennaConfig& config, const ActivityTrace& trace,
                      const ChannelInstance& channel);

/// Finite-SNR cut values for one subset at transmit power P, in bits:
///   receive_bits  = E[ log2 det(I_{N+L} + P G_A G_A^T) ]   (receiver + relay listen)
///   transmit_bits = E[ log2 det(I_N + P F_A F_A^T) ]        (receiver hears users + relay)
/// with the expectation over the activity law restricted to `subset`.
/// Requires a real-field channel.
struct CutsetValue {
  double receive_bits = 0.0;
  double transmit_bits = 0.0;
};

CutsetValue cutset_evaluate(const AntennaConfig& config, const ActivityDistribution& dist,
                            Pattern subset, double P, const ChannelInstance& channel);

/// Least-squares slope of min(receive, transmit) against log2 P over a power
/// grid, with the matching DoF-region cut for reference.
struct CutsetSlope {
  double slope = 0.0;
  double bound = 0.0;      ///< cut_bound(config, dist, subset)
  double abs_error = 0.0;  ///< |slope - bound|
};

CutsetSlope cutset_slope(const AntennaConfig& config, const ActivityDistribution& dist,
                         Pattern subset, std::span<const double> P_grid,
                         const ChannelInstance& channel);

/// Rate cost of the relay's quantize-and-forward noise: forwarding its
/// observation with unit-variance dithered quantization costs exactly
///   h(Z_R + Z_hat) - h(Z_hat) = L log2(2) = L bits per slot,
/// independent of the transmit power, because only the two noise covariances
/// enter.  This is the constant that vanishes against log P in the DoF limit.
double rate_penalty(int L);

/// The same quantity evaluated as a difference of closed-form complex
/// Gaussian entropies h(CN(0, 2I_L)) - h(CN(0, I_L)); agrees with
/// rate_penalty(L) to ~1e-15.
double rate_penalty_entropy_difference(int L);

/// Monte-Carlo estimate of that entropy difference (sampled noise, exact
/// densities); converges ~1/sqrt(samples), so only loose agreement can be
/// asserted.
double rate_penalty_mc(int L, std::uint64_t samples, std::uint64_t seed);

}  // namespace burstymac
