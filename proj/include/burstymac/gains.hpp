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

#include <span>
#include <string>
#include <vector>

#include "burstymac/core.hpp"

namespace burstymac {

// How much sum DoF the relay buys.  For symmetric configurations under the
// two canonical traffic laws the gain has closed forms:
//
//   dependent (all-or-nothing activity, P(on) = p, assuming KM > N):
//       gain_dep(p) = min( p * min(KM - N, L),  (1-p) * min(L, N) )
//
//   independent (Bernoulli(p) per user, i* = floor(N/M)):
//       gain_ind(p) = min( sum_{i > i*} B(i) * min(iM - N, L),
//                          sum_{i <= i*} B(i) * min(L, N - iM) )
//       with B(i) = C(K,i) p^i (1-p)^(K-i)
//
// i.e. the relay helps exactly when it can catch overflow (first argument)
// and later find spare receiver dimensions to drain into (second argument).
// Both formulas are reproduced here and cross-checked against the general
// subset-cut evaluation in the tests.

/// The two canonical parametric traffic laws.
enum class TrafficMode { independent, dependent };

const char* to_string(TrafficMode mode);

/// Binomial pmf C(K,i) p^i (1-p)^(K-i); exact for the small K used here.
double binom_pmf(int K, int i, double p);

/// Relay gain for an arbitrary law: full-set cut with relay minus without.
double delta_dof(const AntennaConfig& config, const ActivityDistribution& dist);

/// Closed-form gain under fully dependent activity (symmetric config only).
double delta_dof_dep(const AntennaConfig& config, double p);

/// Closed-form gain under independent activity (symmetric config only).
double delta_dof_ind(const AntennaConfig& config, double p);

/// The two arguments of the min() in the closed forms, individually.
/// Useful for plotting and for the convexity analysis below.
double receive_side_gain(const AntennaConfig& config, TrafficMode mode, double p);
double transmit_side_gain(const AntennaConfig& config, TrafficMode mode, double p);

/// Where the gain peaks and how high.  Analytic when L >= KM - N and L >= N
/// (and KM > N): the peak sits at p* = N / (KM) with value N(1 - N/(KM)) for
/// dependent traffic.  Outside that regime we fall back to a numeric
/// maximization (grid + ternary refinement) and say so.
struct PeakGain {
  double p_star = 0.0;
  double value = 0.0;
  bool analytic = false;  ///< false = numeric fallback
};

PeakGain peak_gain(const AntennaConfig& config, TrafficMode mode);

/// A sampled gain curve, for CSV emission and plotting.
struct GainSample {
  double p = 0.0;
  double gain = 0.0;
};

struct GainProfile {
  AntennaConfig config;
  TrafficMode mode = TrafficMode::independent;
  std::vector<GainSample> samples;
};

GainProfile gain_profile(const AntennaConfig& config, TrafficMode mode,
                         std::span<const double> p_grid);

/// Pointwise comparison of the two closed forms over a p grid.
enum class Dominance { dep_gt_ind, ind_gt_dep, equal };

const char* to_string(Dominance d);

struct DominanceRow {
  double p = 0.0;
  double gain_dep = 0.0;
  double gain_ind = 0.0;
  Dominance sign = Dominance::equal;
};

std::vector<DominanceRow> dominance_report(const AntennaConfig& config,
                                           std::span<const double> p_grid);

/// Convexity audit of one side of the independent-traffic gain.
///
/// On its own regime (L >= KM - N for the receive side, L >= N for the
/// transmit side, KM > N) each side is convex in p; this checks all second
/// differences over `p_grid` are >= -1e-9 and that the curve meets the
/// dependent-traffic straight line at p = 0 and p = 1.  Throws outside the
/// regime.  Returns true iff every check passes.
enum class GainTerm { receive_cut, transmit_cut };

bool convexity_check(const AntennaConfig& config, GainTerm term,
                     std::span<const double> p_grid);

/// CSV with columns p,gain_dep,gain_ind[,gain_custom],sumdof_with_relay,
/// sumdof_without_relay over a p grid (sum-DoF columns use independent
/// traffic at each grid p; the optional custom column is the gain of a fixed
/// user-supplied law, constant across the sweep).
std::string gain_sweep_csv(const AntennaConfig& config, std::span<const double> p_grid,
                           const ActivityDistribution* custom = nullptr);

}  // namespace burstymac
