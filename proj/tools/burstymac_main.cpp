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

// burstymac — command-line front end.
//
//   burstymac region     --K 2 --M 1 --N 1 --L 1 --traffic independent:0.25
//   burstymac sumdof     --K 2 --M 1 --N 1 --L 1 --traffic independent:0.25 [--sweep 0:0.01:1]
//   burstymac gain       --K 4 --M 1 --N 1 --L 3 [--traffic file:law.json] [--sweep 0:0.01:1]
//   burstymac threshold  --K 2 --M 1 --N 1 --L 1
//   burstymac simulate   --K 2 --M 1 --N 1 --L 1 --traffic independent:0.25 --slots 100000 --seed 7
//   burstymac oracle-rank  --K 2 --M 1 --N 1 --L 1 --traffic independent:0.5 --slots 50 --seed 3 [--field prime]
//   burstymac oracle-slope --K 2 --M 1 --N 1 --L 1 --traffic independent:0.25 [--subset 1,2] [--P-grid 1e6,1e8]
//   burstymac figure fig6 [--out fig6.csv]
//
// Traffic grammar: independent:<p> | dependent:<p> | file:<path.json>.
// Exit codes: 0 success, 2 argument/usage error, 1 computation error.
// Outputs go to stdout, or atomically (temp file + rename) to --out.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <json.hpp>

#include "burstymac/core.hpp"
#include "burstymac/figures.hpp"
#include "burstymac/gains.hpp"
#include "burstymac/numeric.hpp"
#include "burstymac/oracle.hpp"
#include "burstymac/region.hpp"
#include "burstymac/sim.hpp"
#include "burstymac/threshold.hpp"

namespace {

using namespace burstymac;

/// Argument-phase failures (grammar, file access, inconsistent dimensions).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigArgs {
  int K = 0;
  std::string M_list = "1";
  int N = 1;
  int L = 0;
};

void add_config_flags(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("--K", args.K, "number of users")->required();
  cmd->add_option("--M", args.M_list,
                  "transmit antennas per user: one value, or K comma-separated values")
      ->required();
  cmd->add_option("--N", args.N, "receiver antennas")->required();
  cmd->add_option("--L", args.L, "relay antennas (0 = no relay)")->required();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

AntennaConfig build_config(const ConfigArgs& args) {
  std::vector<int> M;
  for (const std::string& tok : split(args.M_list, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      M.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("--M: '" + tok + "' is not an integer");
    }
  }
  if (static_cast<int>(M.size()) == 1 && args.K > 1) {
    M.assign(static_cast<std::size_t>(args.K), M[0]);
  }
  if (static_cast<int>(M.size()) != args.K) {
    throw UsageError("--M must give one value or exactly K values");
  }
  try {
    return AntennaConfig(args.K, std::move(M), args.N, args.L);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

/// Parsed --traffic: either a parametric law or a file-backed custom one.
struct TrafficSpec {
  enum class Kind { independent, dependent, file } kind = Kind::independent;
  double p = 0.0;
  std::string path;

  bool parametric() const { return kind != Kind::file; }

  ActivityDistribution realize(int K, double at_p) const {
    switch (kind) {
      case Kind::independent: return make_independent(at_p, K);
      case Kind::dependent: return make_dependent(at_p, K);
      case Kind::file: break;
    }
    std::ifstream in(path);
    if (!in) throw UsageError("--traffic: cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    ActivityDistribution dist = [&] {
      try {
        return load_distribution_json(buf.str());
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());  // malformed file = usage problem, exit 2
      }
    }();
    if (dist.user_count() != K) {
      throw UsageError("--traffic: file declares K=" + std::to_string(dist.user_count()) +
                       " but --K is " + std::to_string(K));
    }
    if (dist.has_marginal_mismatch()) {
      std::cerr << "warning: traffic file has asymmetric user marginals (max gap "
                << fmt_g12(dist.marginal_mismatch()) << ")\n";
    }
    return dist;
  }

  ActivityDistribution realize(int K) const { return realize(K, p); }
};

TrafficSpec parse_traffic(const std::string& text) {
  TrafficSpec spec;
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw UsageError("--traffic: expected independent:<p>, dependent:<p> or file:<path>");
  }
  const std::string head = text.substr(0, colon);
  const std::string tail = text.substr(colon + 1);
  if (head == "file") {
    spec.kind = TrafficSpec::Kind::file;
    spec.path = tail;
    if (tail.empty()) throw UsageError("--traffic: file: needs a path");
    return spec;
  }
  if (head != "independent" && head != "dependent") {
    throw UsageError("--traffic: unknown law '" + head + "'");
  }
  spec.kind = head == "independent" ? TrafficSpec::Kind::independent
                                    : TrafficSpec::Kind::dependent;
  try {
    std::size_t used = 0;
    spec.p = std::stod(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(tail);
  } catch (const std::exception&) {
    throw UsageError("--traffic: '" + tail + "' is not a probability");
  }
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw UsageError("--traffic: p must lie in [0, 1]");
  }
  return spec;
}

std::vector<double> parse_sweep(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--sweep: expected start:step:end");
  double start = 0.0;
  double step = 0.0;
  double end = 0.0;
  try {
    start = std::stod(parts[0]);
    step = std::stod(parts[1]);
    end = std::stod(parts[2]);
  } catch (const std::exception&) {
    throw UsageError("--sweep: start:step:end must be numbers");
  }
  if (!(step > 0.0) || end < start) {
    throw UsageError("--sweep: need step > 0 and end >= start");
  }
  const double span = (end - start) / step;
  if (span > 1e6) throw UsageError("--sweep: more than 1e6 grid points");
  const int n = static_cast<int>(span + 0.5);
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    double v = start + i * step;
    if (v > end + 1e-12) break;
    grid.push_back(v);
  }
  return grid;
}

std::vector<double> parse_number_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  for (const std::string& tok : split(text, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + tok + "' is not a number");
    }
  }
  return values;
}

Pattern parse_subset(const std::string& text, int K) {
  Pattern mask = 0;
  for (const std::string& tok : split(text, ',')) {
    int u = 0;
    try {
      std::size_t used = 0;
      u = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("--subset: '" + tok + "' is not a user index");
    }
    if (u < 1 || u > K) throw UsageError("--subset: user index out of 1..K");
    mask |= Pattern{1} << (u - 1);
  }
  return mask;
}

std::string read_file(const std::string& path, const char* flag) {
  std::ifstream in(path);
  if (!in) throw UsageError(std::string(flag) + ": cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ActivityTrace load_trace_file(const std::string& path) {
  try {
    return parse_trace(read_file(path, "--trace"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());  // malformed trace = usage problem, exit 2
  }
}

/// Print to stdout, or write whole-file atomically via temp + rename.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  const std::string tmp = out_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), out_path.c_str()) != 0) {
    throw std::runtime_error("cannot move " + tmp + " into place");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DoF region, relay gains and simulators for the bursty MIMO uplink"};
  app.require_subcommand(1);

  // region ------------------------------------------------------------------
  auto* cmd_region = app.add_subcommand("region", "emit every subset cut as CSV");
  ConfigArgs region_cfg;
  std::string region_traffic;
  std::string region_out;
  add_config_flags(cmd_region, region_cfg);
  cmd_region->add_option("--traffic", region_traffic, "traffic law")->required();
  cmd_region->add_option("--out", region_out, "output file (default stdout)");

  // sumdof ------------------------------------------------------------------
  auto* cmd_sumdof = app.add_subcommand("sumdof", "best achievable sum DoF");
  ConfigArgs sumdof_cfg;
  std::string sumdof_traffic;
  std::string sumdof_sweep;
  std::string sumdof_out;
  add_config_flags(cmd_sumdof, sumdof_cfg);
  cmd_sumdof->add_option("--traffic", sumdof_traffic, "traffic law")->required();
  cmd_sumdof->add_option("--sweep", sumdof_sweep, "p sweep start:step:end");
  cmd_sumdof->add_option("--out", sumdof_out, "output file (default stdout)");

  // gain --------------------------------------------------------------------
  auto* cmd_gain = app.add_subcommand("gain", "relay gain sweep (closed forms)");
  ConfigArgs gain_cfg;
  std::string gain_traffic;
  std::string gain_sweep = "0:0.01:1";
  std::string gain_out;
  add_config_flags(cmd_gain, gain_cfg);
  cmd_gain->add_option("--traffic", gain_traffic,
                       "optional file:<path> law for an extra gain_custom column");
  cmd_gain->add_option("--sweep", gain_sweep, "p sweep start:step:end");
  cmd_gain->add_option("--out", gain_out, "output file (default stdout)");

  // threshold ---------------------------------------------------------------
  auto* cmd_thresh = app.add_subcommand("threshold", "collision-free case and p*");
  ConfigArgs thresh_cfg;
  std::string thresh_out;
  add_config_flags(cmd_thresh, thresh_cfg);
  cmd_thresh->add_option("--out", thresh_out, "output file (default stdout)");

  // simulate ----------------------------------------------------------------
  auto* cmd_sim = app.add_subcommand("simulate", "slot simulator vs the cut formula");
  ConfigArgs sim_cfg;
  std::string sim_traffic;
  std::string sim_trace;
  std::uint64_t sim_slots = 100000;
  std::uint64_t sim_seed = 1;
  std::string sim_out;
  add_config_flags(cmd_sim, sim_cfg);
  cmd_sim->add_option("--traffic", sim_traffic, "traffic law (ignored with --trace)");
  cmd_sim->add_option("--trace", sim_trace, "explicit trace file (0/1 flags per slot)");
  cmd_sim->add_option("--slots", sim_slots, "number of slots");
  cmd_sim->add_option("--seed", sim_seed, "RNG seed");
  cmd_sim->add_option("--out", sim_out, "output file (default stdout)");

  // oracle-rank -------------------------------------------------------------
  auto* cmd_rank = app.add_subcommand(
      "oracle-rank", "decodable symbols by explicit linear algebra vs the simulator");
  ConfigArgs rank_cfg;
  std::string rank_traffic;
  std::string rank_trace;
  std::uint64_t rank_slots = 50;
  std::uint64_t rank_seed = 1;
  std::string rank_field = "prime";
  std::string rank_out;
  add_config_flags(cmd_rank, rank_cfg);
  cmd_rank->add_option("--traffic", rank_traffic, "traffic law to sample a trace from");
  cmd_rank->add_option("--trace", rank_trace, "explicit trace file instead of --traffic");
  cmd_rank->add_option("--slots", rank_slots, "trace length when sampling");
  cmd_rank->add_option("--seed", rank_seed, "RNG seed (trace and channel)");
  cmd_rank->add_option("--field", rank_field, "matrix field: prime | real");
  cmd_rank->add_option("--out", rank_out, "output file (default stdout)");

  // oracle-slope ------------------------------------------------------------
  auto* cmd_slope = app.add_subcommand(
      "oracle-slope", "finite-SNR cut-set slope vs the DoF cut");
  ConfigArgs slope_cfg;
  std::string slope_traffic;
  std::string slope_subset;
  std::string slope_pgrid = "1e6,1e8";
  std::uint64_t slope_seed = 1;
  std::string slope_out;
  add_config_flags(cmd_slope, slope_cfg);
  cmd_slope->add_option("--traffic", slope_traffic, "traffic law")->required();
  cmd_slope->add_option("--subset", slope_subset,
                        "user subset as comma list, e.g. 1,3 (default: all)");
  cmd_slope->add_option("--P-grid", slope_pgrid, "power grid, comma-separated");
  cmd_slope->add_option("--seed", slope_seed, "channel seed");
  cmd_slope->add_option("--out", slope_out, "output file (default stdout)");

  // figure ------------------------------------------------------------------
  auto* cmd_figure = app.add_subcommand("figure", "emit a canned dataset as CSV");
  std::string figure_name;
  bool figure_list = false;
  std::string figure_out;
  cmd_figure->add_option("name", figure_name, "figure name, e.g. fig6");
  cmd_figure->add_flag("--list", figure_list, "list available figures");
  cmd_figure->add_option("--out", figure_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    // -- argument phase: everything user-supplied is parsed and loaded here,
    //    so malformed inputs exit 2 before any computation starts.
    try {
      if (cmd_region->parsed()) {
        const AntennaConfig cfg = build_config(region_cfg);
        const TrafficSpec traffic = parse_traffic(region_traffic);
        const ActivityDistribution dist = traffic.realize(cfg.K);
        emit(region_out, region_to_csv(region(cfg, dist)));
        return 0;
      }
      if (cmd_sumdof->parsed()) {
        const AntennaConfig cfg = build_config(sumdof_cfg);
        const TrafficSpec traffic = parse_traffic(sumdof_traffic);
        std::ostringstream out;
        if (!sumdof_sweep.empty()) {
          if (!traffic.parametric()) {
            throw UsageError("--sweep needs a parametric traffic law (independent/dependent)");
          }
          out << "p,sumdof_with_relay,sumdof_without_relay\n";
          for (double p : parse_sweep(sumdof_sweep)) {
            const ActivityDistribution dist = traffic.realize(cfg.K, p);
            out << fmt_g12(p) << ',' << fmt_g12(sum_dof(cfg, dist)) << ','
                << fmt_g12(sum_dof_no_relay(cfg, dist)) << '\n';
          }
        } else if (traffic.parametric()) {
          const ActivityDistribution dist = traffic.realize(cfg.K);
          out << "p,sumdof_with_relay,sumdof_without_relay\n"
              << fmt_g12(traffic.p) << ',' << fmt_g12(sum_dof(cfg, dist)) << ','
              << fmt_g12(sum_dof_no_relay(cfg, dist)) << '\n';
        } else {
          const ActivityDistribution dist = traffic.realize(cfg.K);
          out << "sumdof_with_relay,sumdof_without_relay\n"
              << fmt_g12(sum_dof(cfg, dist)) << ','
              << fmt_g12(sum_dof_no_relay(cfg, dist)) << '\n';
        }
        emit(sumdof_out, out.str());
        return 0;
      }
      if (cmd_gain->parsed()) {
        const AntennaConfig cfg = build_config(gain_cfg);
        if (!cfg.is_symmetric()) {
          throw UsageError("gain: closed forms need a symmetric --M");
        }
        std::optional<ActivityDistribution> custom;
        if (!gain_traffic.empty()) {
          const TrafficSpec traffic = parse_traffic(gain_traffic);
          if (traffic.parametric()) {
            throw UsageError("gain: --traffic only makes sense as file:<path> here; "
                             "the dep/ind columns are always emitted");
          }
          custom = traffic.realize(cfg.K);
        }
        const std::vector<double> grid = parse_sweep(gain_sweep);
        emit(gain_out, gain_sweep_csv(cfg, grid, custom ? &*custom : nullptr));
        return 0;
      }
      if (cmd_thresh->parsed()) {
        const AntennaConfig cfg = build_config(thresh_cfg);
        if (!cfg.is_symmetric()) {
          throw UsageError("threshold: the case analysis needs a symmetric --M");
        }
        emit(thresh_out, threshold_summary(cfg) + "\n");
        return 0;
      }
      if (cmd_sim->parsed()) {
        const AntennaConfig cfg = build_config(sim_cfg);
        SimReport report;
        if (!sim_trace.empty()) {
          const ActivityTrace trace = load_trace_file(sim_trace);
          if (trace.K != cfg.K) {
            throw UsageError("--trace: trace has " + std::to_string(trace.K) +
                             " users but --K is " + std::to_string(cfg.K));
          }
          report = simulate_trace(cfg, trace);
        } else {
          if (sim_traffic.empty()) {
            throw UsageError("simulate: need --traffic or --trace");
          }
          const TrafficSpec traffic = parse_traffic(sim_traffic);
          const ActivityDistribution dist = traffic.realize(cfg.K);
          report = simulate(cfg, dist, sim_slots, sim_seed);
        }
        emit(sim_out, report_to_json(report) + "\n");
        return 0;
      }
      if (cmd_rank->parsed()) {
        const AntennaConfig cfg = build_config(rank_cfg);
        if (rank_field != "prime" && rank_field != "real") {
          throw UsageError("--field must be prime or real");
        }
        ActivityTrace trace;
        if (!rank_trace.empty()) {
          trace = load_trace_file(rank_trace);
          if (trace.K != cfg.K) {
            throw UsageError("--trace: trace has " + std::to_string(trace.K) +
                             " users but --K is " + std::to_string(cfg.K));
          }
        } else {
          if (rank_traffic.empty()) {
            throw UsageError("oracle-rank: need --traffic or --trace");
          }
          const TrafficSpec traffic = parse_traffic(rank_traffic);
          trace = sample_trace(traffic.realize(cfg.K), rank_slots, rank_seed);
        }
        const ChannelField field = rank_field == "prime" ? ChannelField::prime
                                                         : ChannelField::real;
        const ChannelInstance channel = sample_channel(cfg, field, rank_seed);
        const int rank = rank_decode_count(cfg, trace, channel);
        const SimReport sim = simulate_trace(cfg, trace);
        const auto delivered = sim.delivered_direct + sim.delivered_relayed;
        nlohmann::ordered_json doc;
        doc["rank"] = rank;
        doc["sim_delivered"] = delivered;
        doc["agree"] = (static_cast<std::uint64_t>(rank) == delivered);
        emit(rank_out, doc.dump(2) + "\n");
        return 0;
      }
      if (cmd_slope->parsed()) {
        const AntennaConfig cfg = build_config(slope_cfg);
        const TrafficSpec traffic = parse_traffic(slope_traffic);
        const ActivityDistribution dist = traffic.realize(cfg.K);
        const Pattern subset = slope_subset.empty()
                                   ? (Pattern{1} << cfg.K) - 1
                                   : parse_subset(slope_subset, cfg.K);
        const std::vector<double> pgrid = parse_number_list(slope_pgrid, "--P-grid");
        const ChannelInstance channel = sample_channel(cfg, ChannelField::real, slope_seed);
        const CutsetSlope result = cutset_slope(cfg, dist, subset, pgrid, channel);
        std::ostringstream out;
        out << "subset_mask,slope,bound,abs_error\n"
            << subset << ',' << fmt_g12(result.slope) << ',' << fmt_g12(result.bound)
            << ',' << fmt_g12(result.abs_error) << '\n';
        emit(slope_out, out.str());
        return 0;
      }
      if (cmd_figure->parsed()) {
        if (figure_list) {
          std::ostringstream out;
          for (const std::string& name : figure_names()) out << name << '\n';
          emit(figure_out, out.str());
          return 0;
        }
        if (figure_name.empty()) {
          throw UsageError("figure: give a figure name or --list");
        }
        std::string csv;
        try {
          csv = figure_csv(figure_name);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        emit(figure_out, csv);
        return 0;
      }
      throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
