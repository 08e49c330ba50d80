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

#include "burstymac/region.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "burstymac/numeric.hpp"

namespace burstymac {

namespace {

constexpr double kContainmentSlack = 1e-12;

Pattern full_mask(int K) { return (Pattern{1} << K) - 1; }

void check_subset(const AntennaConfig& config, const ActivityDistribution& dist,
                  Pattern subset) {
  if (config.K != dist.user_count()) {
    throw std::invalid_argument("cut bound: config and traffic law disagree on K");
  }
  if (subset == 0) throw std::invalid_argument("cut bound: subset must be non-empty");
  if (subset & ~full_mask(config.K)) {
    throw std::invalid_argument("cut bound: subset mentions a user above K");
  }
}

/// Both expectations of the subset cut, as (receive, transmit).
std::pair<double, double> cut_sides(const AntennaConfig& config,
                                    const ActivityDistribution& dist,
                                    Pattern subset) {
  check_subset(config, dist, subset);
  const ActivityDistribution marginal = marginalize(dist, subset);

  // Map marginal bit j back to the original user it stands for, so asymmetric
  // antenna counts land on the right users.
  std::vector<int> users;
  for (int k = 0; k < config.K; ++k) {
    if (subset & (Pattern{1} << k)) users.push_back(k);
  }

  KahanSum receive;   // E[ min(M(A), N+L) ]
  KahanSum transmit;  // E[ min(M(A)+L, N) ]
  const auto& mass = marginal.masses();
  for (Pattern a = 0; a < mass.size(); ++a) {
    if (mass[a] == 0.0) continue;
    int sum_m = 0;
    for (std::size_t j = 0; j < users.size(); ++j) {
      if (a & (Pattern{1} << j)) sum_m += config.M[static_cast<std::size_t>(users[j])];
    }
    receive.add(mass[a] * static_cast<double>(std::min(sum_m, config.N + config.L)));
    transmit.add(mass[a] * static_cast<double>(std::min(sum_m + config.L, config.N)));
  }
  return {receive.value(), transmit.value()};
}

}  // namespace

const char* to_string(CutSide side) {
  return side == CutSide::relay_receive ? "relay-receive-cut" : "relay-transmit-cut";
}

const CutConstraint& DofRegion::constraint(Pattern subset) const {
  if (subset == 0 || subset > constraints.size()) {
    throw std::invalid_argument("region: no constraint for that subset mask");
  }
  return constraints[subset - 1];
}

bool DofRegion::contains(const DofVector& d) const {
  if (d.size() != config.K) {
    throw std::invalid_argument("region membership: DoF vector has wrong dimension");
  }
  for (const CutConstraint& c : constraints) {
    double sum = 0.0;
    for (int k = 0; k < config.K; ++k) {
      if (c.subset & (Pattern{1} << k)) sum += d.d[static_cast<std::size_t>(k)];
    }
    if (sum > c.bound + kContainmentSlack) return false;
  }
  return true;
}

double cut_bound(const AntennaConfig& config, const ActivityDistribution& dist,
                 Pattern subset) {
  const auto [receive, transmit] = cut_sides(config, dist, subset);
  return std::min(receive, transmit);
}

CutConstraint cut_constraint(const AntennaConfig& config,
                             const ActivityDistribution& dist, Pattern subset) {
  const auto [receive, transmit] = cut_sides(config, dist, subset);
  CutConstraint c;
  c.subset = subset;
  if (receive <= transmit) {  // ties report the receive side
    c.bound = receive;
    c.binding_side = CutSide::relay_receive;
  } else {
    c.bound = transmit;
    c.binding_side = CutSide::relay_transmit;
  }
  return c;
}

DofRegion region(const AntennaConfig& config, const ActivityDistribution& dist) {
  if (config.K != dist.user_count()) {
    throw std::invalid_argument("region: config and traffic law disagree on K");
  }
  DofRegion reg;
  reg.config = config;
  const Pattern full = full_mask(config.K);
  reg.constraints.reserve(full);
  for (Pattern subset = 1; subset <= full; ++subset) {
    reg.constraints.push_back(cut_constraint(config, dist, subset));
  }
  return reg;
}

bool contains(const DofRegion& reg, const DofVector& d) { return reg.contains(d); }

double sum_dof(const AntennaConfig& config, const ActivityDistribution& dist) {
  return cut_bound(config, dist, full_mask(config.K));
}

double sum_dof_no_relay(const AntennaConfig& config, const ActivityDistribution& dist) {
  AntennaConfig bare = config;
  bare.L = 0;
  // With L = 0 both sides of the cut collapse to E[min(M(A), N)].
  return cut_bound(bare, dist, full_mask(config.K));
}

std::string region_to_csv(const DofRegion& reg) {
  std::ostringstream out;
  out << "subset_mask,subset_size,bound,binding_side\n";
  for (const CutConstraint& c : reg.constraints) {
    out << c.subset << ',' << std::popcount(c.subset) << ',' << fmt_g12(c.bound)
        << ',' << to_string(c.binding_side) << '\n';
  }
  return out.str();
}

}  // namespace burstymac
