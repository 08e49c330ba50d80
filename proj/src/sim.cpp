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

#include "burstymac/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "burstymac/numeric.hpp"
#include "burstymac/region.hpp"
#include "burstymac/rng.hpp"

namespace burstymac {

namespace {

/// RNG stream id for activity-pattern sampling (channels and combining
/// coefficients use other streams; see oracle.cpp).
constexpr std::uint64_t kTraceStream = 0;

std::vector<double> cumulative_mass(const ActivityDistribution& dist) {
  const auto& mass = dist.masses();
  std::vector<double> cum(mass.size());
  double run = 0.0;
  for (std::size_t a = 0; a < mass.size(); ++a) {
    run += mass[a];
    cum[a] = run;
  }
  cum.back() = 1.0;  // guard against accumulated rounding at the top end
  return cum;
}

Pattern draw_pattern(const std::vector<double>& cum, Xoshiro256ss& rng) {
  const double u = rng.next_double();
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  const std::size_t idx = it == cum.end() ? cum.size() - 1
                                          : static_cast<std::size_t>(it - cum.begin());
  return static_cast<Pattern>(idx);
}

void check_kinship(const AntennaConfig& config, int K, const char* what) {
  if (config.K != K) {
    throw std::invalid_argument(std::string(what) + ": config and activity disagree on K");
  }
}

/// The receive-and-forward policy for one slot, given the offered fresh
/// dimensions.  Single source of truth for step() and the simulate loop.
inline StepResult apply_policy(SimState& state, int fresh, int N, int L) {
  const int direct = std::min(fresh, N);
  const int spare = N - direct;
  const int relayed = static_cast<int>(std::min<std::uint64_t>(
      {static_cast<std::uint64_t>(L), static_cast<std::uint64_t>(spare), state.buffer}));
  const int captured = std::min(L, std::max(fresh - N, 0));

  state.buffer += static_cast<std::uint64_t>(captured);
  state.buffer -= static_cast<std::uint64_t>(relayed);
  state.buffer_high_water = std::max(state.buffer_high_water, state.buffer);
  state.offered += static_cast<std::uint64_t>(fresh);
  state.delivered_direct += static_cast<std::uint64_t>(direct);
  state.delivered_relayed += static_cast<std::uint64_t>(relayed);
  state.captured_total += static_cast<std::uint64_t>(captured);
  state.slots_run += 1;

  return StepResult{direct, relayed, captured};
}

SimReport finish_report(const AntennaConfig& config, const SimState& state,
                        double formula, std::uint64_t seed,
                        std::vector<SlotRecord> log) {
  SimReport report;
  report.slots = state.slots_run;
  report.seed = seed;
  report.throughput = state.slots_run == 0
                          ? 0.0
                          : static_cast<double>(state.delivered_direct +
                                                state.delivered_relayed) /
                                static_cast<double>(state.slots_run);
  report.formula_value = formula;
  report.deviation = report.throughput - report.formula_value;
  report.buffer_high_water = state.buffer_high_water;
  report.buffer_end = state.buffer;
  report.delivered_direct = state.delivered_direct;
  report.delivered_relayed = state.delivered_relayed;
  report.offered = state.offered;
  report.slot_log = std::move(log);
  (void)config;
  return report;
}

}  // namespace

ActivityTrace sample_trace(const ActivityDistribution& dist, std::uint64_t n_slots,
                           std::uint64_t seed) {
  if (n_slots == 0) throw std::invalid_argument("sample_trace: need at least one slot");
  ActivityTrace trace;
  trace.K = dist.user_count();
  trace.seed = seed;
  trace.source = ActivityTrace::Source::sampled;
  trace.slots.reserve(n_slots);
  const std::vector<double> cum = cumulative_mass(dist);
  Xoshiro256ss rng(seed, kTraceStream);
  for (std::uint64_t t = 0; t < n_slots; ++t) {
    trace.slots.push_back(draw_pattern(cum, rng));
  }
  return trace;
}

std::string trace_to_string(const ActivityTrace& trace) {
  std::ostringstream out;
  for (Pattern a : trace.slots) {
    for (int k = 0; k < trace.K; ++k) {
      if (k > 0) out << ',';
      out << ((a >> k) & 1u);
    }
    out << '\n';
  }
  return out.str();
}

ActivityTrace parse_trace(const std::string& text) {
  ActivityTrace trace;
  trace.source = ActivityTrace::Source::explicit_input;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Pattern mask = 0;
    int k = 0;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = line.find(',', pos);
      const std::string tok = line.substr(pos, comma == std::string::npos
                                                   ? std::string::npos
                                                   : comma - pos);
      if (tok != "0" && tok != "1") {
        throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                    ": flags must be 0 or 1");
      }
      if (k >= 30) throw std::invalid_argument("trace: too many users per line");
      if (tok == "1") mask |= Pattern{1} << k;
      ++k;
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (trace.K == 0) {
      trace.K = k;
    } else if (k != trace.K) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                  ": inconsistent user count");
    }
    trace.slots.push_back(mask);
  }
  if (trace.slots.empty()) {
    throw std::invalid_argument("trace: no slots found");
  }
  return trace;
}

StepResult step(SimState& state, Pattern active, const AntennaConfig& config) {
  if (active & ~((Pattern{1} << config.K) - 1)) {
    throw std::invalid_argument("step: active pattern mentions a user above K");
  }
  return apply_policy(state, config.sum_M(active), config.N, config.L);
}

SimReport simulate(const AntennaConfig& config, const ActivityDistribution& dist,
                   std::uint64_t n_slots, std::uint64_t seed, bool record_slots) {
  check_kinship(config, dist.user_count(), "simulate");
  if (n_slots == 0) throw std::invalid_argument("simulate: need at least one slot");

  // Precomputing fresh per mask keeps the slot loop allocation-free.
  const std::size_t n_masks = std::size_t{1} << config.K;
  std::vector<int> fresh_table(n_masks);
  for (std::size_t a = 0; a < n_masks; ++a) {
    fresh_table[a] = config.sum_M(static_cast<Pattern>(a));
  }

  const std::vector<double> cum = cumulative_mass(dist);
  Xoshiro256ss rng(seed, kTraceStream);

  SimState state;
  std::vector<SlotRecord> log;
  if (record_slots) log.reserve(n_slots);

  for (std::uint64_t t = 0; t < n_slots; ++t) {
    const Pattern a = draw_pattern(cum, rng);
    const StepResult r = apply_policy(state, fresh_table[a], config.N, config.L);
    if (record_slots) {
      log.push_back(SlotRecord{a, r.direct, r.relayed, r.captured, state.buffer});
    }
  }
  return finish_report(config, state, sum_dof(config, dist), seed, std::move(log));
}

SimReport simulate_trace(const AntennaConfig& config, const ActivityTrace& trace,
                         bool record_slots) {
  check_kinship(config, trace.K, "simulate_trace");
  if (trace.slots.empty()) {
    throw std::invalid_argument("simulate_trace: trace has no slots");
  }

  SimState state;
  std::vector<SlotRecord> log;
  if (record_slots) log.reserve(trace.slots.size());
  std::vector<std::uint64_t> counts(std::size_t{1} << config.K, 0);
  for (Pattern a : trace.slots) {
    const StepResult r = step(state, a, config);
    counts[a] += 1;
    if (record_slots) {
      log.push_back(SlotRecord{a, r.direct, r.relayed, r.captured, state.buffer});
    }
  }

  // The reference value for an explicit trace is the cut formula applied to
  // the trace's own empirical pattern law.
  std::vector<double> empirical(counts.size());
  const double n = static_cast<double>(trace.slots.size());
  for (std::size_t a = 0; a < counts.size(); ++a) {
    empirical[a] = static_cast<double>(counts[a]) / n;
  }
  const ActivityDistribution law(config.K, std::move(empirical));
  return finish_report(config, state, sum_dof(config, law), trace.seed, std::move(log));
}

double compare_to_formula(const SimReport& report, const AntennaConfig& config,
                          const ActivityDistribution& dist) {
  return report.throughput - sum_dof(config, dist);
}

SimReport merge_reports(const std::vector<SimReport>& reports) {
  if (reports.empty()) {
    throw std::invalid_argument("merge_reports: nothing to merge");
  }
  SimReport merged;
  merged.seed = reports.front().seed;
  merged.formula_value = reports.front().formula_value;
  double delivered = 0.0;
  for (const SimReport& r : reports) {
    if (std::abs(r.formula_value - merged.formula_value) > 1e-12) {
      throw std::invalid_argument("merge_reports: reports come from different experiments");
    }
    merged.slots += r.slots;
    merged.delivered_direct += r.delivered_direct;
    merged.delivered_relayed += r.delivered_relayed;
    merged.offered += r.offered;
    merged.buffer_high_water = std::max(merged.buffer_high_water, r.buffer_high_water);
    delivered += static_cast<double>(r.delivered_direct + r.delivered_relayed);
  }
  merged.throughput = merged.slots == 0 ? 0.0 : delivered / static_cast<double>(merged.slots);
  merged.deviation = merged.throughput - merged.formula_value;
  return merged;
}

std::string report_to_json(const SimReport& report) {
  nlohmann::ordered_json doc;
  doc["throughput"] = report.throughput;
  doc["formula"] = report.formula_value;
  doc["deviation"] = report.deviation;
  doc["buffer_high_water"] = report.buffer_high_water;
  doc["slots"] = report.slots;
  doc["seed"] = report.seed;
  return doc.dump(2);
}

}  // namespace burstymac
