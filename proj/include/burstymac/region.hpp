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

#include <string>
#include <vector>

#include "burstymac/core.hpp"

namespace burstymac {

// The DoF region of the bursty MIMO uplink with an L-antenna relay is cut by
// one linear constraint per non-empty user subset S:
//
//   sum_{k in S} d_k  <=  min( E[ min(M(A), N+L) ],          (receive side)
//                              E[ min(M(A) + L, N) ] )       (transmit side)
//
// where A is the activity pattern restricted to S, M(A) = sum_{i in A} M_i,
// and the expectation runs over the marginal activity law on S (the empty
// pattern contributes min(L, N) to the transmit side: even with nobody
// active the relay can keep draining its backlog).  The receive side caps
// what the receiver and relay can jointly pick up; the transmit side caps
// what the receiver can accept when the relay's forwarding shares its N
// dimensions with the direct links.

/// Which side of the min() is active in a cut.
enum class CutSide { relay_receive, relay_transmit };

const char* to_string(CutSide side);

/// One linear face of the region: sum of d_k over `subset` <= `bound`.
struct CutConstraint {
  Pattern subset = 0;
  double bound = 0.0;
  CutSide binding_side = CutSide::relay_receive;  ///< receive wins ties
};

/// All 2^K - 1 subset cuts for one configuration and traffic law.
struct DofRegion {
  AntennaConfig config;
  std::vector<CutConstraint> constraints;  ///< constraints[mask - 1] <-> subset `mask`

  const CutConstraint& constraint(Pattern subset) const;
  bool contains(const DofVector& d) const;
};

/// The bound of a single subset cut.
double cut_bound(const AntennaConfig& config, const ActivityDistribution& dist,
                 Pattern subset);

/// The bound plus which side of the min() produced it.
CutConstraint cut_constraint(const AntennaConfig& config,
                             const ActivityDistribution& dist, Pattern subset);

/// Every subset cut, enumerated in mask order.
DofRegion region(const AntennaConfig& config, const ActivityDistribution& dist);

/// Membership test with a 1e-12 slack per face.
bool contains(const DofRegion& reg, const DofVector& d);

/// The full-set cut: the best achievable sum DoF.
double sum_dof(const AntennaConfig& config, const ActivityDistribution& dist);

/// Same uplink without the relay (L = 0): E[min(M(A), N)] for the full set.
double sum_dof_no_relay(const AntennaConfig& config, const ActivityDistribution& dist);

/// CSV rows "subset_mask,subset_size,bound,binding_side", one per cut,
/// preceded by a header row.
std::string region_to_csv(const DofRegion& reg);

}  // namespace burstymac
