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

#include "burstymac/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "burstymac/gains.hpp"
#include "burstymac/numeric.hpp"

namespace burstymac {

namespace {

/// f(p) = KpM - E[min(iM + L, N)], i ~ Binomial(K, p): positive exactly when
/// the users' aggregate demand outruns the transmit-side cut.  Strictly
/// increasing from f(0) = -min(L, N) to f(1) = KM - N in case C-F.
double demand_minus_cut(const AntennaConfig& config, double p) {
  const int K = config.K;
  const int M = config.sym_M();
  KahanSum cut;
  for (int i = 0; i <= K; ++i) {
    cut.add(binom_pmf(K, i, p) * static_cast<double>(std::min(i * M + config.L, config.N)));
  }
  return static_cast<double>(K * M) * p - cut.value();
}

/// Root of demand_minus_cut by bisection, to |f| < 1e-12.
double bisect_threshold(const AntennaConfig& config) {
  double lo = 0.0;
  double hi = 1.0;
  // f(0) < 0 and f(1) > 0 are guaranteed by the caller's case (C-F, L < N).
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = demand_minus_cut(config, mid);
    if (std::abs(f) < 1e-12) return mid;
    if (f < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw std::logic_error("collision-free threshold: bisection failed to converge");
}

}  // namespace

const char* to_string(RegimeCase c) {
  switch (c) {
    case RegimeCase::CA: return "C-A";
    case RegimeCase::CB: return "C-B";
    case RegimeCase::CC: return "C-C";
    case RegimeCase::CD: return "C-D";
    case RegimeCase::CE: return "C-E";
    case RegimeCase::CF: return "C-F";
  }
  return "?";
}

RegimeLabel classify(const AntennaConfig& config) {
  const int M = config.sym_M();  // rejects asymmetric configs
  const int K = config.K;
  const int N = config.N;
  const int L = config.L;
  const int KM = K * M;

  RegimeLabel label;
  label.collision_free_possible = KM <= N + L;

  if (KM <= N) {
    label.case_id = RegimeCase::CE;
    label.threshold_kind = ThresholdKind::all_p;
  } else if (KM <= N + L) {
    label.case_id = RegimeCase::CF;
    label.threshold_kind = L >= N ? ThresholdKind::exact_ratio : ThresholdKind::strictly_below;
  } else if (M <= N) {
    label.case_id = RegimeCase::CA;
    label.threshold_kind = ThresholdKind::none;
  } else if (L == 0) {
    label.case_id = RegimeCase::CB;
    label.threshold_kind = ThresholdKind::none;
  } else if (M > N + L) {
    label.case_id = RegimeCase::CC;
    label.threshold_kind = ThresholdKind::none;
  } else {
    label.case_id = RegimeCase::CD;  // N < M <= N+L, L >= 1
    label.threshold_kind = ThresholdKind::none;
  }
  return label;
}

std::optional<double> collision_free_threshold(const AntennaConfig& config) {
  const RegimeLabel label = classify(config);
  switch (label.threshold_kind) {
    case ThresholdKind::all_p:
      return 1.0;
    case ThresholdKind::exact_ratio:
      return static_cast<double>(config.N) /
             static_cast<double>(config.K * config.sym_M());
    case ThresholdKind::strictly_below: {
      const double p_s = bisect_threshold(config);
      const double ratio = static_cast<double>(config.N) /
                           static_cast<double>(config.K * config.sym_M());
      if (!(p_s < ratio)) {
        throw std::logic_error("collision-free threshold: root landed above N/(KM)");
      }
      return p_s;
    }
    case ThresholdKind::none:
      return std::nullopt;
  }
  return std::nullopt;
}

bool is_collision_free(const AntennaConfig& config, double p) {
  const int M = config.sym_M();
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("is_collision_free: p must lie in [0, 1]");
  }
  // Membership of (pM, ..., pM) in the full region.  Symmetry collapses the
  // 2^K - 1 subset cuts to one per subset size s: the marginal law on any
  // s-subset is Bernoulli(p)^s and the demanded sum is spM.  (The tests
  // cross-check this reduction against the explicit region for small K.)
  const int K = config.K;
  for (int s = 1; s <= K; ++s) {
    KahanSum receive;
    KahanSum transmit;
    for (int i = 0; i <= s; ++i) {
      const double b = binom_pmf(s, i, p);
      receive.add(b * static_cast<double>(std::min(i * M, config.N + config.L)));
      transmit.add(b * static_cast<double>(std::min(i * M + config.L, config.N)));
    }
    const double bound = std::min(receive.value(), transmit.value());
    if (static_cast<double>(s * M) * p > bound + 1e-12) return false;
  }
  return true;
}

std::optional<double> crossover_p(const AntennaConfig& config) {
  const int M = config.sym_M();
  const int N = config.N;
  const int L = config.L;
  if (M <= N || L < 1) return std::nullopt;
  const double lo_n = static_cast<double>(std::min(L, N));
  const double denom =
      static_cast<double>(std::min(M, N + L)) - static_cast<double>(std::min(M + L, N)) + lo_n;
  return lo_n / denom;
}

std::string threshold_summary(const AntennaConfig& config) {
  const RegimeLabel label = classify(config);
  const std::optional<double> p_star = collision_free_threshold(config);
  std::ostringstream out;
  out << "case=" << to_string(label.case_id)
      << " collision_free=" << (label.collision_free_possible ? "true" : "false")
      << " p_star=" << (p_star ? fmt_g12(*p_star) : std::string("none"));
  return out.str();
}

}  // namespace burstymac
