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

#include "burstymac/gains.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "burstymac/numeric.hpp"
#include "burstymac/region.hpp"

namespace burstymac {

namespace {

void check_symmetric(const AntennaConfig& config, const char* what) {
  if (!config.is_symmetric()) {
    throw std::invalid_argument(std::string(what) +
                                ": closed forms require a symmetric configuration");
  }
}

void check_prob(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": p must lie in [0, 1]");
  }
}

/// Whether the analytic peak location p* = N/(KM) is proven for this config.
bool in_peak_regime(const AntennaConfig& config) {
  const int KM = config.K * config.sym_M();
  return KM > config.N && config.L >= KM - config.N && config.L >= config.N;
}

}  // namespace

const char* to_string(TrafficMode mode) {
  return mode == TrafficMode::independent ? "independent" : "dependent";
}

const char* to_string(Dominance d) {
  switch (d) {
    case Dominance::dep_gt_ind: return "dep>ind";
    case Dominance::ind_gt_dep: return "ind>dep";
    default: return "equal";
  }
}

double binom_pmf(int K, int i, double p) {
  if (K < 0 || i < 0 || i > K) {
    throw std::invalid_argument("binom_pmf: need 0 <= i <= K");
  }
  check_prob(p, "binom_pmf");
  // Multiplicative C(K,i): exact in double for the K <= ~100 used here
  // (C(100,50) ~ 1e29 needs 97 bits, but the ratio form keeps each
  // intermediate an exact small rational product; error stays ~K ulps).
  double c = 1.0;
  const int r = std::min(i, K - i);
  for (int j = 1; j <= r; ++j) {
    c = c * static_cast<double>(K - r + j) / static_cast<double>(j);
  }
  return c * ipow(p, i) * ipow(1.0 - p, K - i);
}

double delta_dof(const AntennaConfig& config, const ActivityDistribution& dist) {
  return sum_dof(config, dist) - sum_dof_no_relay(config, dist);
}

double receive_side_gain(const AntennaConfig& config, TrafficMode mode, double p) {
  check_symmetric(config, "receive_side_gain");
  check_prob(p, "receive_side_gain");
  const int M = config.sym_M();
  const int K = config.K;
  const int N = config.N;
  const int L = config.L;
  if (mode == TrafficMode::dependent) {
    return p * static_cast<double>(std::min(K * M - N, L));
  }
  const int i_star = N / M;  // largest user count the receiver absorbs alone
  KahanSum sum;
  for (int i = i_star + 1; i <= K; ++i) {
    sum.add(binom_pmf(K, i, p) * static_cast<double>(std::min(i * M - N, L)));
  }
  return sum.value();
}

double transmit_side_gain(const AntennaConfig& config, TrafficMode mode, double p) {
  check_symmetric(config, "transmit_side_gain");
  check_prob(p, "transmit_side_gain");
  const int M = config.sym_M();
  const int K = config.K;
  const int N = config.N;
  const int L = config.L;
  if (mode == TrafficMode::dependent) {
    return (1.0 - p) * static_cast<double>(std::min(L, N));
  }
  const int i_star = N / M;
  KahanSum sum;
  for (int i = 0; i <= std::min(i_star, K); ++i) {
    sum.add(binom_pmf(K, i, p) * static_cast<double>(std::min(L, N - i * M)));
  }
  return sum.value();
}

double delta_dof_dep(const AntennaConfig& config, double p) {
  check_symmetric(config, "delta_dof_dep");
  check_prob(p, "delta_dof_dep");
  // When everyone together fits into the receiver there is no overflow for
  // the relay to catch, under any burstiness.
  if (config.K * config.sym_M() <= config.N) return 0.0;
  return std::min(receive_side_gain(config, TrafficMode::dependent, p),
                  transmit_side_gain(config, TrafficMode::dependent, p));
}

double delta_dof_ind(const AntennaConfig& config, double p) {
  check_symmetric(config, "delta_dof_ind");
  check_prob(p, "delta_dof_ind");
  if (config.K * config.sym_M() <= config.N) return 0.0;
  return std::min(receive_side_gain(config, TrafficMode::independent, p),
                  transmit_side_gain(config, TrafficMode::independent, p));
}

PeakGain peak_gain(const AntennaConfig& config, TrafficMode mode) {
  check_symmetric(config, "peak_gain");
  const auto gain = [&](double p) {
    return mode == TrafficMode::dependent ? delta_dof_dep(config, p)
                                          : delta_dof_ind(config, p);
  };

  PeakGain peak;
  if (in_peak_regime(config)) {
    // Receive side rises from 0, transmit side falls to 0; with L large
    // enough neither min() saturates and the crossing lands at p* = N/(KM).
    peak.analytic = true;
    peak.p_star = static_cast<double>(config.N) /
                  static_cast<double>(config.K * config.sym_M());
    peak.value = gain(peak.p_star);
    return peak;
  }

  // Outside the proven regime: numeric maximization.  Both closed forms are
  // min(nondecreasing, nonincreasing) in p, hence unimodal, so a coarse grid
  // plus ternary refinement is reliable.
  peak.analytic = false;
  const int kGrid = 4096;
  double best_p = 0.0;
  double best_v = gain(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double p = static_cast<double>(i) / kGrid;
    const double v = gain(p);
    if (v > best_v) {
      best_v = v;
      best_p = p;
    }
  }
  double lo = std::max(0.0, best_p - 1.0 / kGrid);
  double hi = std::min(1.0, best_p + 1.0 / kGrid);
  while (hi - lo > 1e-12) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (gain(m1) < gain(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  peak.p_star = 0.5 * (lo + hi);
  peak.value = gain(peak.p_star);
  return peak;
}

GainProfile gain_profile(const AntennaConfig& config, TrafficMode mode,
                         std::span<const double> p_grid) {
  GainProfile profile;
  profile.config = config;
  profile.mode = mode;
  profile.samples.reserve(p_grid.size());
  for (double p : p_grid) {
    const double g = mode == TrafficMode::dependent ? delta_dof_dep(config, p)
                                                    : delta_dof_ind(config, p);
    profile.samples.push_back({p, g});
  }
  return profile;
}

std::vector<DominanceRow> dominance_report(const AntennaConfig& config,
                                           std::span<const double> p_grid) {
  std::vector<DominanceRow> rows;
  rows.reserve(p_grid.size());
  for (double p : p_grid) {
    DominanceRow row;
    row.p = p;
    row.gain_dep = delta_dof_dep(config, p);
    row.gain_ind = delta_dof_ind(config, p);
    const double diff = row.gain_dep - row.gain_ind;
    if (diff > 1e-12) {
      row.sign = Dominance::dep_gt_ind;
    } else if (diff < -1e-12) {
      row.sign = Dominance::ind_gt_dep;
    } else {
      row.sign = Dominance::equal;
    }
    rows.push_back(row);
  }
  return rows;
}

bool convexity_check(const AntennaConfig& config, GainTerm term,
                     std::span<const double> p_grid) {
  check_symmetric(config, "convexity_check");
  const int KM = config.K * config.sym_M();
  if (KM <= config.N) {
    throw std::invalid_argument("convexity_check: needs an overloaded uplink (KM > N)");
  }
  if (term == GainTerm::receive_cut && config.L < KM - config.N) {
    throw std::invalid_argument(
        "convexity_check: receive side needs L >= KM - N (no saturation)");
  }
  if (term == GainTerm::transmit_cut && config.L < config.N) {
    throw std::invalid_argument(
        "convexity_check: transmit side needs L >= N (no saturation)");
  }
  if (p_grid.size() < 3) {
    throw std::invalid_argument("convexity_check: need at least 3 grid points");
  }

  const auto f = [&](double p) {
    return term == GainTerm::receive_cut
               ? receive_side_gain(config, TrafficMode::independent, p)
               : transmit_side_gain(config, TrafficMode::independent, p);
  };

  std::vector<double> v(p_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) v[i] = f(p_grid[i]);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i - 1] - 2.0 * v[i] + v[i + 1] < -1e-9) return false;
  }

  // At the extremes all activity mass is on one pattern, so the independent
  // curve must meet the dependent straight line exactly.
  const double line0 = term == GainTerm::receive_cut
                           ? 0.0
                           : static_cast<double>(std::min(config.L, config.N));
  const double line1 = term == GainTerm::receive_cut
                           ? static_cast<double>(std::min(KM - config.N, config.L))
                           : 0.0;
  if (std::abs(f(0.0) - line0) > 1e-12) return false;
  if (std::abs(f(1.0) - line1) > 1e-12) return false;
  return true;
}

std::string gain_sweep_csv(const AntennaConfig& config, std::span<const double> p_grid,
                           const ActivityDistribution* custom) {
  check_symmetric(config, "gain sweep");
  const double custom_gain = custom ? delta_dof(config, *custom) : 0.0;
  std::ostringstream out;
  out << "p,gain_dep,gain_ind";
  if (custom) out << ",gain_custom";
  out << ",sumdof_with_relay,sumdof_without_relay\n";
  for (double p : p_grid) {
    const ActivityDistribution ind = make_independent(p, config.K);
    out << fmt_g12(p) << ',' << fmt_g12(delta_dof_dep(config, p)) << ','
        << fmt_g12(delta_dof_ind(config, p));
    if (custom) out << ',' << fmt_g12(custom_gain);
    out << ',' << fmt_g12(sum_dof(config, ind)) << ','
        << fmt_g12(sum_dof_no_relay(config, ind)) << '\n';
  }
  return out.str();
}

}  // namespace burstymac
