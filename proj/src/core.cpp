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

#include "burstymac/core.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "burstymac/numeric.hpp"

namespace burstymac {

namespace {

void check_user_count(int K, bool allow_large_k) {
  if (K < 1) throw std::invalid_argument("user count K must be >= 1");
  if (K > kDefaultMaxUsers && !allow_large_k) {
    throw std::invalid_argument(
        "K = " + std::to_string(K) + " exceeds the dense-enumeration cap of " +
        std::to_string(kDefaultMaxUsers) +
        " (pass allow_large_k to override; memory and time are 2^K)");
  }
  if (K > 30) throw std::invalid_argument("K > 30 is not representable here");
}

}  // namespace

AntennaConfig::AntennaConfig(int K_users, std::vector<int> M_per_user, int N_rx,
                             int L_relay)
    : K(K_users), M(std::move(M_per_user)), N(N_rx), L(L_relay) {
  if (K < 1) throw std::invalid_argument("antenna config: K must be >= 1");
  if (static_cast<int>(M.size()) != K) {
    throw std::invalid_argument("antenna config: M must list one entry per user");
  }
  for (int m : M) {
    if (m < 1) throw std::invalid_argument("antenna config: every M_k must be >= 1");
  }
  if (N < 1) throw std::invalid_argument("antenna config: N must be >= 1");
  if (L < 0) throw std::invalid_argument("antenna config: L must be >= 0");
}

AntennaConfig AntennaConfig::symmetric(int K_users, int M_tx, int N_rx, int L_relay) {
  return AntennaConfig(K_users, std::vector<int>(static_cast<std::size_t>(std::max(K_users, 0)), M_tx),
                       N_rx, L_relay);
}

bool AntennaConfig::is_symmetric() const {
  for (int m : M) {
    if (m != M[0]) return false;
  }
  return true;
}

int AntennaConfig::sym_M() const {
  if (!is_symmetric()) {
    throw std::invalid_argument("operation requires a symmetric antenna configuration");
  }
  return M[0];
}

int AntennaConfig::sum_M(Pattern active) const {
  int total = 0;
  for (int k = 0; k < K; ++k) {
    if (active & (Pattern{1} << k)) total += M[static_cast<std::size_t>(k)];
  }
  return total;
}

int AntennaConfig::total_M() const {
  int total = 0;
  for (int m : M) total += m;
  return total;
}

ActivityDistribution::ActivityDistribution(int K_users, std::vector<double> mass,
                                           bool allow_large_k)
    : K_(K_users), mass_(std::move(mass)) {
  check_user_count(K_, allow_large_k);
  const std::size_t expected = std::size_t{1} << K_;
  if (mass_.size() != expected) {
    throw std::invalid_argument("activity law: mass table must have 2^K entries");
  }
  KahanSum total;
  for (double m : mass_) {
    if (!(m >= 0.0)) {
      throw std::invalid_argument("activity law: pattern masses must be non-negative");
    }
    total.add(m);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("activity law: pattern masses must sum to 1 (|sum-1| <= 1e-12)");
  }
  // Record how far per-user marginals stray from user 1's, so callers can
  // surface asymmetric workloads that were meant to be exchangeable.
  double first = 0.0;
  for (int k = 0; k < K_; ++k) {
    KahanSum mk;
    const Pattern bit = Pattern{1} << k;
    for (Pattern a = 0; a < mass_.size(); ++a) {
      if (a & bit) mk.add(mass_[a]);
    }
    if (k == 0) {
      first = mk.value();
    } else {
      marginal_mismatch_ = std::max(marginal_mismatch_, std::abs(mk.value() - first));
    }
  }
}

double ActivityDistribution::mass(Pattern a) const {
  if (a >= mass_.size()) {
    throw std::invalid_argument("activity law: pattern outside {0,1}^K");
  }
  return mass_[a];
}

ActivityDistribution make_independent(double p, int K, bool allow_large_k) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("activity probability p must lie in [0, 1]");
  }
  check_user_count(K, allow_large_k);
  const std::size_t n = std::size_t{1} << K;
  std::vector<double> mass(n);
  for (std::size_t a = 0; a < n; ++a) {
    const int ones = std::popcount(a);
    mass[a] = ipow(p, ones) * ipow(1.0 - p, K - ones);
  }
  // The products above can drift a hair off a total of 1 for large K; pin the
  // total exactly by folding the residual into the heaviest pattern.  The
  // correction is ~1e-15 and keeps the constructor's sum check meaningful.
  KahanSum total;
  for (double m : mass) total.add(m);
  const double resid = 1.0 - total.value();
  std::size_t heaviest = 0;
  for (std::size_t a = 1; a < n; ++a) {
    if (mass[a] > mass[heaviest]) heaviest = a;
  }
  mass[heaviest] += resid;
  return ActivityDistribution(K, std::move(mass), allow_large_k);
}

ActivityDistribution make_dependent(double p, int K, bool allow_large_k) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("activity probability p must lie in [0, 1]");
  }
  check_user_count(K, allow_large_k);
  const std::size_t n = std::size_t{1} << K;
  std::vector<double> mass(n, 0.0);
  mass[0] = 1.0 - p;
  mass[n - 1] = p;  // K >= 1, so the all-on mask is distinct from the empty one
  return ActivityDistribution(K, std::move(mass), allow_large_k);
}

ActivityDistribution make_custom(int K,
                                 const std::vector<std::pair<Pattern, double>>& table,
                                 bool allow_large_k) {
  check_user_count(K, allow_large_k);
  const std::size_t n = std::size_t{1} << K;
  std::vector<double> mass(n, 0.0);
  std::vector<bool> seen(n, false);
  for (const auto& [pattern, prob] : table) {
    if (pattern >= n) {
      throw std::invalid_argument("custom law: pattern mentions a user above K");
    }
    if (seen[pattern]) {
      throw std::invalid_argument("custom law: duplicate pattern in mass table");
    }
    seen[pattern] = true;
    mass[pattern] = prob;
  }
  return ActivityDistribution(K, std::move(mass), allow_large_k);
}

ActivityDistribution marginalize(const ActivityDistribution& dist, Pattern subset) {
  const int K = dist.user_count();
  const Pattern full = (K == 32) ? ~Pattern{0} : ((Pattern{1} << K) - 1);
  if (subset == 0) {
    throw std::invalid_argument("marginalize: subset must be non-empty");
  }
  if (subset & ~full) {
    throw std::invalid_argument("marginalize: subset mentions a user above K");
  }
  const int Ks = std::popcount(subset);
  // Fast path: marginalizing onto everyone is the identity.
  if (subset == full) return dist;

  // Compress bit positions of `subset` onto 0..Ks-1, preserving user order.
  std::vector<int> shift;  // shift[j] = original bit index of new bit j
  shift.reserve(static_cast<std::size_t>(Ks));
  for (int k = 0; k < K; ++k) {
    if (subset & (Pattern{1} << k)) shift.push_back(k);
  }

  std::vector<KahanSum> pooled(std::size_t{1} << Ks);
  const auto& mass = dist.masses();
  for (Pattern a = 0; a < mass.size(); ++a) {
    if (mass[a] == 0.0) continue;
    Pattern b = 0;
    for (int j = 0; j < Ks; ++j) {
      if (a & (Pattern{1} << shift[static_cast<std::size_t>(j)])) b |= Pattern{1} << j;
    }
    pooled[b].add(mass[a]);
  }
  std::vector<double> out(pooled.size());
  for (std::size_t b = 0; b < pooled.size(); ++b) out[b] = pooled[b].value();
  // The source law already passed the size gate, and Ks <= K, so the result
  // is always admissible.
  return ActivityDistribution(Ks, std::move(out), /*allow_large_k=*/true);
}

double marginal_activity_prob(const ActivityDistribution& dist, int user) {
  if (user < 1 || user > dist.user_count()) {
    throw std::invalid_argument("marginal: user index out of range (users are 1-based)");
  }
  const Pattern bit = Pattern{1} << (user - 1);
  KahanSum sum;
  const auto& mass = dist.masses();
  for (Pattern a = 0; a < mass.size(); ++a) {
    if (a & bit) sum.add(mass[a]);
  }
  return sum.value();
}

ActivityDistribution load_distribution_json(const std::string& text, bool allow_large_k) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("traffic JSON: parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("K") || !doc.contains("mass")) {
    throw std::invalid_argument("traffic JSON: expected an object with \"K\" and \"mass\"");
  }
  if (!doc["K"].is_number_integer()) {
    throw std::invalid_argument("traffic JSON: \"K\" must be an integer");
  }
  const int K = doc["K"].get<int>();
  check_user_count(K, allow_large_k);
  if (!doc["mass"].is_array()) {
    throw std::invalid_argument("traffic JSON: \"mass\" must be an array");
  }
  std::vector<std::pair<Pattern, double>> table;
  table.reserve(doc["mass"].size());
  for (const auto& row : doc["mass"]) {
    if (!row.is_object() || !row.contains("pattern") || !row.contains("p")) {
      throw std::invalid_argument("traffic JSON: each mass row needs \"pattern\" and \"p\"");
    }
    if (!row["pattern"].is_array() || !row["p"].is_number()) {
      throw std::invalid_argument("traffic JSON: \"pattern\" must be an index list and \"p\" a number");
    }
    Pattern mask = 0;
    for (const auto& idx : row["pattern"]) {
      if (!idx.is_number_integer()) {
        throw std::invalid_argument("traffic JSON: pattern entries must be integers");
      }
      const int u = idx.get<int>();
      if (u < 1 || u > K) {
        throw std::invalid_argument("traffic JSON: pattern user index out of 1..K");
      }
      const Pattern bit = Pattern{1} << (u - 1);
      if (mask & bit) {
        throw std::invalid_argument("traffic JSON: repeated user inside one pattern");
      }
      mask |= bit;
    }
    table.emplace_back(mask, row["p"].get<double>());
  }
  return make_custom(K, table, allow_large_k);
}

std::string distribution_to_json(const ActivityDistribution& dist) {
  nlohmann::ordered_json doc;
  doc["K"] = dist.user_count();
  doc["mass"] = nlohmann::ordered_json::array();
  const auto& mass = dist.masses();
  for (Pattern a = 0; a < mass.size(); ++a) {
    if (mass[a] == 0.0) continue;
    nlohmann::ordered_json row;
    row["pattern"] = nlohmann::ordered_json::array();
    for (int k = 0; k < dist.user_count(); ++k) {
      if (a & (Pattern{1} << k)) row["pattern"].push_back(k + 1);
    }
    row["p"] = mass[a];
    doc["mass"].push_back(row);
  }
  return doc.dump(2);
}

DofVector::DofVector(std::vector<double> values) : d(std::move(values)) {
  if (d.empty()) throw std::invalid_argument("DoF vector must be non-empty");
  for (double v : d) {
    if (!(v >= 0.0)) throw std::invalid_argument("DoF entries must be non-negative");
  }
}

}  // namespace burstymac
