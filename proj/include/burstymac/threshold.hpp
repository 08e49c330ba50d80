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

#include <optional>
#include <string>

#include "burstymac/core.hpp"

namespace burstymac {

// "Collision-free" asks whether, under independent Bernoulli(p) activity on a
// symmetric configuration, every user can run at its solo rate pM
// simultaneously — i.e. whether (pM, ..., pM) sits inside the DoF region.
// Whether that holds, and up to which activity level p* it holds, splits into
// six exhaustive cases on (K, M, N, L):
//
//   C-E:  KM <= N            collision-free for every p (the receiver alone
//                            absorbs everyone; p* = 1)
//   C-F:  N < KM <= N+L      collision-free up to a threshold:
//                              L >= N: p* = N/(KM) exactly
//                              L <  N: p* = p_s, the root of
//                                      f(p) = KpM - E[min(iM + L, N)],
//                                      which sits strictly below N/(KM)
//   KM > N+L (relay capacity cannot cover the overflow; never collision-free
//   for p in (0,1)):
//   C-A:  M <= N             many moderate users
//   C-B:  M > N, L = 0       big users, no relay
//   C-C:  M > N+L, L >= 1    big users, small relay
//   C-D:  N < M <= N+L, L>=1 big users, relay bridges a single user
//
// The crossover reported by crossover_p is a different landmark: the activity
// level where a single user's own cut switches from its receive side to its
// transmit side as p grows.  It exists only when one user can overload the
// receiver on its own (M > N) and a relay is present (L >= 1).

enum class RegimeCase { CA, CB, CC, CD, CE, CF };

const char* to_string(RegimeCase c);  // "C-A" .. "C-F"

enum class ThresholdKind {
  all_p,            ///< collision-free for every p in [0,1]
  exact_ratio,      ///< p* = N/(KM), in closed form
  strictly_below,   ///< p* = p_s < N/(KM), found numerically
  none,             ///< never collision-free on (0,1)
};

struct RegimeLabel {
  RegimeCase case_id = RegimeCase::CA;
  bool collision_free_possible = false;  ///< iff KM <= N + L
  ThresholdKind threshold_kind = ThresholdKind::none;
};

/// Total classification; every symmetric config lands in exactly one case.
RegimeLabel classify(const AntennaConfig& config);

/// The largest p with (pM, ..., pM) inside the region, when one exists.
/// C-E reports 1; C-A..C-D report nothing.
std::optional<double> collision_free_threshold(const AntennaConfig& config);

/// Direct membership test of (pM, ..., pM) under independent(p) traffic.
bool is_collision_free(const AntennaConfig& config, double p);

/// Where a single user's cut switches sides (receive -> transmit) under
/// Bernoulli(p) activity:
///   p_i = min(L,N) / (min(M, N+L) - min(M+L, N) + min(L,N)),
/// defined when M > N and L >= 1; empty otherwise (the receive side then
/// binds at every p).
std::optional<double> crossover_p(const AntennaConfig& config);

/// "case=C-F collision_free=true p_star=0.5" — the CLI's one-line summary.
std::string threshold_summary(const AntennaConfig& config);

}  // namespace burstymac
