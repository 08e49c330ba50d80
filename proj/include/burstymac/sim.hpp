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
#include <vector>

#include "burstymac/core.hpp"

namespace burstymac {

// A dimension-counting simulator for the receive-and-forward relay strategy.
// Signal dimensions are treated as a fluid: in a slot with active set A the
// users offer fresh = sum_{i in A} M_i dimensions, the receiver absorbs
// min(fresh, N) of them directly, the relay catches up to L of the overflow,
// and whenever the receiver has spare dimensions the relay drains its backlog
// greedily (up to L per slot).  Overflow capture and backlog draining never
// coincide: capture needs fresh > N and draining needs fresh < N.
// The long-run delivered rate of this policy matches the full-set cut of the
// DoF region, which is what the convergence tests check.

/// A realized activity sequence, one pattern per slot.
struct ActivityTrace {
  enum class Source { sampled, explicit_input };

  int K = 0;
  std::vector<Pattern> slots;
  std::uint64_t seed = 0;  ///< meaningful only when source == sampled
  Source source = Source::explicit_input;
};

/// Draw `n_slots` i.i.d. patterns by inverse-CDF over the mass table in mask
/// order; reproducible from (dist, seed) alone.
ActivityTrace sample_trace(const ActivityDistribution& dist, std::uint64_t n_slots,
                           std::uint64_t seed);

/// One line per slot, comma-separated 0/1 flags per user: "1,0,1".
std::string trace_to_string(const ActivityTrace& trace);
ActivityTrace parse_trace(const std::string& text);

/// Mutable state carried across slots.  All counters are exact integers.
struct SimState {
  std::uint64_t buffer = 0;             ///< overflow dimensions parked at the relay
  std::uint64_t buffer_high_water = 0;
  std::uint64_t offered = 0;            ///< sum of fresh dimensions
  std::uint64_t delivered_direct = 0;
  std::uint64_t delivered_relayed = 0;
  std::uint64_t captured_total = 0;
  std::uint64_t slots_run = 0;
};

/// What one slot did.
struct StepResult {
  int direct = 0;
  int relayed = 0;
  int captured = 0;
};

/// Advance one slot; the policy decisions above, nothing else.
StepResult step(SimState& state, Pattern active, const AntennaConfig& config);

/// Per-slot log entry (optional output of the simulate calls).
struct SlotRecord {
  Pattern active = 0;
  int direct = 0;
  int relayed = 0;
  int captured = 0;
  std::uint64_t buffer_after = 0;
};

struct SimReport {
  double throughput = 0.0;     ///< delivered dimensions per slot
  double formula_value = 0.0;  ///< full-set cut for the same config/law
  double deviation = 0.0;      ///< throughput - formula_value (signed)
  std::uint64_t buffer_high_water = 0;
  std::uint64_t buffer_end = 0;
  std::uint64_t slots = 0;
  std::uint64_t seed = 0;
  std::uint64_t delivered_direct = 0;
  std::uint64_t delivered_relayed = 0;
  std::uint64_t offered = 0;
  std::vector<SlotRecord> slot_log;  ///< filled only when requested
};

/// Run `n_slots` i.i.d. slots from `dist`; bit-for-bit deterministic in
/// (config, dist, n_slots, seed), and identical to replaying
/// sample_trace(dist, n_slots, seed).
SimReport simulate(const AntennaConfig& config, const ActivityDistribution& dist,
                   std::uint64_t n_slots, std::uint64_t seed,
                   bool record_slots = false);

/// Replay an explicit trace; the formula reference uses the trace's own
/// empirical pattern frequencies.
SimReport simulate_trace(const AntennaConfig& config, const ActivityTrace& trace,
                         bool record_slots = false);

/// Signed gap between a report's throughput and the cut formula for
/// (config, dist).
double compare_to_formula(const SimReport& report, const AntennaConfig& config,
                          const ActivityDistribution& dist);

/// Pool several runs of the same experiment (slot-weighted).
SimReport merge_reports(const std::vector<SimReport>& reports);

/// The {throughput, formula, deviation, buffer_high_water, slots, seed}
/// object the CLI prints.
std::string report_to_json(const SimReport& report);

}  // namespace burstymac
