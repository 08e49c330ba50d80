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

#include "burstymac/figures.hpp"

#include <sstream>
#include <stdexcept>

#include "burstymac/gains.hpp"
#include "burstymac/numeric.hpp"
#include "burstymac/region.hpp"

namespace burstymac {

namespace {

/// The standard sweep 0, 0.01, ..., 1 (exact grid points i/100).
std::vector<double> percent_grid() {
  std::vector<double> p(101);
  for (int i = 0; i <= 100; ++i) p[static_cast<std::size_t>(i)] = i / 100.0;
  return p;
}

std::string fig2() {
  const AntennaConfig cfg = AntennaConfig::symmetric(2, 1, 1, 1);
  std::ostringstream out;
  out << "# fig2: sum DoF with and without relay, independent traffic; "
         "K=2 M=1 N=1 L=1; p=0:0.01:1\n";
  out << "p,sumdof_with_relay,sumdof_without_relay\n";
  for (double p : percent_grid()) {
    const ActivityDistribution law = make_independent(p, cfg.K);
    out << fmt_g12(p) << ',' << fmt_g12(sum_dof(cfg, law)) << ','
        << fmt_g12(sum_dof_no_relay(cfg, law)) << '\n';
  }
  return out.str();
}

std::string fig5() {
  std::ostringstream out;
  out << "# fig5: peak relay gain vs user count; M=1 N=1 L=K-1; K=2..64\n";
  out << "K,p_star,peak_dep,peak_ind\n";
  for (int K = 2; K <= 64; ++K) {
    const AntennaConfig cfg = AntennaConfig::symmetric(K, 1, 1, K - 1);
    const PeakGain dep = peak_gain(cfg, TrafficMode::dependent);
    const PeakGain ind = peak_gain(cfg, TrafficMode::independent);
    out << K << ',' << fmt_g12(dep.p_star) << ',' << fmt_g12(dep.value) << ','
        << fmt_g12(ind.value) << '\n';
  }
  return out.str();
}

std::string gain_vs_p_for_L(TrafficMode mode, const char* name) {
  std::ostringstream out;
  out << "# " << name << ": relay gain (" << to_string(mode)
      << " traffic) vs p for L=0..5; K=4 M=1 N=1; p=0:0.01:1\n";
  out << "p,gain_L0,gain_L1,gain_L2,gain_L3,gain_L4,gain_L5\n";
  for (double p : percent_grid()) {
    out << fmt_g12(p);
    for (int L = 0; L <= 5; ++L) {
      const AntennaConfig cfg = AntennaConfig::symmetric(4, 1, 1, L);
      const double g = mode == TrafficMode::dependent ? delta_dof_dep(cfg, p)
                                                      : delta_dof_ind(cfg, p);
      out << ',' << fmt_g12(g);
    }
    out << '\n';
  }
  return out.str();
}

std::string fig8() {
  std::ostringstream out;
  out << "# fig8: relay gain vs relay size at p=0.25; K=4 M=1 N=1; L=0..5\n";
  out << "L,gain_dep,gain_ind\n";
  for (int L = 0; L <= 5; ++L) {
    const AntennaConfig cfg = AntennaConfig::symmetric(4, 1, 1, L);
    out << L << ',' << fmt_g12(delta_dof_dep(cfg, 0.25)) << ','
        << fmt_g12(delta_dof_ind(cfg, 0.25)) << '\n';
  }
  return out.str();
}

std::string gains_vs_p(int K, int M, int N, int L, const char* name) {
  const AntennaConfig cfg = AntennaConfig::symmetric(K, M, N, L);
  std::ostringstream out;
  out << "# " << name << ": relay gain under both traffic laws; K=" << K
      << " M=" << M << " N=" << N << " L=" << L << "; p=0:0.01:1\n";
  out << "p,gain_dep,gain_ind\n";
  for (double p : percent_grid()) {
    out << fmt_g12(p) << ',' << fmt_g12(delta_dof_dep(cfg, p)) << ','
        << fmt_g12(delta_dof_ind(cfg, p)) << '\n';
  }
  return out.str();
}

std::string fig13() {
  const AntennaConfig cfg = AntennaConfig::symmetric(4, 1, 1, 3);
  std::ostringstream out;
  out << "# fig13: the two sides of the gain min() and the gains; "
         "K=4 M=1 N=1 L=3; p=0:0.01:1\n";
  out << "p,receive_dep,transmit_dep,receive_ind,transmit_ind,gain_dep,gain_ind\n";
  for (double p : percent_grid()) {
    out << fmt_g12(p) << ','
        << fmt_g12(receive_side_gain(cfg, TrafficMode::dependent, p)) << ','
        << fmt_g12(transmit_side_gain(cfg, TrafficMode::dependent, p)) << ','
        << fmt_g12(receive_side_gain(cfg, TrafficMode::independent, p)) << ','
        << fmt_g12(transmit_side_gain(cfg, TrafficMode::independent, p)) << ','
        << fmt_g12(delta_dof_dep(cfg, p)) << ',' << fmt_g12(delta_dof_ind(cfg, p))
        << '\n';
  }
  return out.str();
}

}  // namespace

std::vector<std::string> figure_names() {
  return {"fig2", "fig5", "fig6", "fig7", "fig8", "fig9", "fig12a", "fig12b", "fig13"};
}

std::string figure_csv(const std::string& name) {
  if (name == "fig2") return fig2();
  if (name == "fig5") return fig5();
  if (name == "fig6") return gain_vs_p_for_L(TrafficMode::dependent, "fig6");
  if (name == "fig7") return gain_vs_p_for_L(TrafficMode::independent, "fig7");
  if (name == "fig8") return fig8();
  if (name == "fig9") return gains_vs_p(2, 1, 1, 1, "fig9");
  if (name == "fig12a") return gains_vs_p(4, 2, 7, 1, "fig12a");
  if (name == "fig12b") return gains_vs_p(4, 2, 1, 1, "fig12b");
  if (name == "fig13") return fig13();
  throw std::invalid_argument("unknown figure name: " + name +
                              " (see `figure --list` for the catalog)");
}

}  // namespace burstymac
