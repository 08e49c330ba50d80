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

#include <cmath>
#include <cstdio>
#include <string>

namespace burstymac {

/// Kahan–Neumaier compensated accumulator.
///
/// Most quantities in this library are expectations over up to 2^20 pattern
/// masses that downstream tests compare against closed forms at 1e-12
/// absolute tolerance.  Naive summation of ~1e6 terms can lose ~1e-10, so
/// every expectation-style loop goes through this instead.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

/// x^n by repeated multiplication for small integer exponents.
///
/// Used instead of std::pow so that dyadic cases come out bit-exact
/// (0.75^4 == 0.31640625 exactly) and so that the same products are formed
/// identically on every code path that builds Bernoulli pattern masses.
inline double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

/// Shortest round-trippable-ish decimal with 12 significant digits.
/// All CSV output in the project is formatted through this one function so
/// emitted files are byte-stable across runs.
inline std::string fmt_g12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

}  // namespace burstymac
