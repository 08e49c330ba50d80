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

namespace burstymac {

// Canned CSV datasets behind the study's plots.  Parameters are baked in so
// that `burstymac figure <name>` is a pure function of the name: same bytes
// every run, 12 significant digits, one '#' header comment documenting the
// parameters and columns.
//
//   fig2    sum DoF with/without relay vs p          (K=2, M=1, N=1, L=1)
//   fig5    peak gains and their location vs K       (M=N=1, L=K-1, K=2..64)
//   fig6    dependent-traffic gain vs p, L=0..5      (K=4, M=1, N=1)
//   fig7    independent-traffic gain vs p, L=0..5    (K=4, M=1, N=1)
//   fig8    both gains vs L at p=0.25                (K=4, M=1, N=1)
//   fig9    both gains vs p                          (K=2, M=1, N=1, L=1)
//   fig12a  both gains vs p                          (K=4, M=2, N=7, L=1)
//   fig12b  both gains vs p                          (K=4, M=2, N=1, L=1)
//   fig13   min() sides and gains vs p               (K=4, M=1, N=1, L=3)

std::vector<std::string> figure_names();

/// CSV content for one figure; throws std::invalid_argument for unknown names.
std::string figure_csv(const std::string& name);

}  // namespace burstymac
