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
#include <string>
#include <utility>
#include <vector>

namespace burstymac {

/// An activity pattern: bit k-1 set <=> user k transmitting (users are
/// 1-based everywhere in the public API, bit positions are 0-based).
using Pattern = std::uint32_t;

/// Pattern enumeration works with dense 2^K tables, so K is capped unless a
/// caller explicitly opts into larger (and slower, hungrier) instances.
inline constexpr int kDefaultMaxUsers = 20;

/// Antenna geometry of one uplink: K users with M_k transmit antennas each,
/// an N-antenna receiver, and an L-antenna relay (L = 0
/// means no relay).
struct AntennaConfig {
  int K = 0;
  std::vector<int> M;  ///< per-user transmit antenna counts, size K
  int N = 0;           ///< receiver antennas
  int L = 0;           ///< relay antennas

  AntennaConfig() = default;
  AntennaConfig(int K_users, std::vector<int> M_per_user, int N_rx, int L_relay);

  /// Convenience constructor for the symmetric case M_1 = ... = M_K = M.
  static AntennaConfig symmetric(int K_users, int M_tx, int N_rx, int L_relay);

  bool is_symmetric() const;
  /// The common per-user antenna count; throws std::invalid_argument if the
  /// configuration is not symmetric.
  int sym_M() const;
  /// Sum of M_i over the users set in `active`.
  int sum_M(Pattern active) const;
  /// Sum of M_i over all users.
  int total_M() const;
};

/// A probability law on activity patterns, stored densely over all 2^K masks.
///
/// Construction validates: every mass >= 0 and the total is 1 within 1e-12.
/// Per-user marginals are allowed to differ (the model does not require
/// exchangeability), but a mismatch above 1e-9 is flagged so callers can warn
/// when a supposedly symmetric workload is not.
class ActivityDistribution {
 public:
  ActivityDistribution(int K_users, std::vector<double> mass,
                       bool allow_large_k = false);

  int user_count() const { return K_; }
  std::uint32_t pattern_count() const { return static_cast<std::uint32_t>(mass_.size()); }
  double mass(Pattern a) const;
  const std::vector<double>& masses() const { return mass_; }

  /// Largest |P(user j active) - P(user 1 active)| over users.
  double marginal_mismatch() const { return marginal_mismatch_; }
  bool has_marginal_mismatch() const { return marginal_mismatch_ > 1e-9; }

 private:
  int K_;
  std::vector<double> mass_;
  double marginal_mismatch_ = 0.0;
};

/// i.i.d. Bernoulli(p) activity: P(A) = p^|A| (1-p)^(K-|A|).
ActivityDistribution make_independent(double p, int K, bool allow_large_k = false);

/// Fully correlated activity: all users on with probability p, all off with
/// probability 1-p.
ActivityDistribution make_dependent(double p, int K, bool allow_large_k = false);

/// Arbitrary law from (pattern, probability) rows. Duplicate patterns are
/// rejected; unlisted patterns get zero mass.
ActivityDistribution make_custom(int K,
                                 const std::vector<std::pair<Pattern, double>>& table,
                                 bool allow_large_k = false);

/// Law of A ∩ subset, re-indexed onto users 1..|subset| (ascending original
/// user order). `subset` must be a non-empty pattern over the K users.
ActivityDistribution marginalize(const ActivityDistribution& dist, Pattern subset);

/// P(user k active), k 1-based.
double marginal_activity_prob(const ActivityDistribution& dist, int user);

/// JSON interchange for custom laws:
///   {"K": 2, "mass": [{"pattern": [1], "p": 0.3}, {"pattern": [], "p": 0.7}]}
/// with `pattern` a list of 1-based user indices.
ActivityDistribution load_distribution_json(const std::string& text,
                                            bool allow_large_k = false);
std::string distribution_to_json(const ActivityDistribution& dist);

/// A candidate degrees-of-freedom operating point (d_1, ..., d_K).
struct DofVector {
  std::vector<double> d;

  explicit DofVector(std::vector<double> values);
  int size() const { return static_cast<int>(d.size()); }
};

}  // namespace burstymac
