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

#include "burstymac/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "burstymac/numeric.hpp"
#include "burstymac/region.hpp"
#include "burstymac/rng.hpp"

namespace burstymac {

namespace {

// RNG stream ids (stream 0 is activity sampling, see sim.cpp).
constexpr std::uint64_t kChannelStream = 1;
constexpr std::uint64_t kCombineStream = 2;
constexpr std::uint64_t kPenaltyStream = 3;

constexpr double kPi = 3.14159265358979323846;
constexpr double kEuler = 2.71828182845904523536;

inline std::uint32_t mulmod(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(a) * b) % kPrime);
}

inline std::uint32_t addmod(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t s = a + b;  // a, b < 2^31, no overflow in 32 bits
  return s >= kPrime ? s - kPrime : s;
}

inline std::uint32_t submod(std::uint32_t a, std::uint32_t b) {
  return a >= b ? a - b : a + kPrime - b;
}

std::uint32_t powmod(std::uint32_t a, std::uint64_t e) {
  std::uint32_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

inline std::uint32_t invmod(std::uint32_t a) { return powmod(a, kPrime - 2); }

void check_channel_matches(const AntennaConfig& config, const ChannelInstance& channel,
                           const char* what) {
  const AntennaConfig& c = channel.config;
  if (c.K != config.K || c.M != config.M || c.N != config.N || c.L != config.L) {
    throw std::invalid_argument(std::string(what) +
                                ": channel was sampled for a different configuration");
  }
}

/// log2 det(I + P X X^T) via Cholesky; X may have zero columns (-> 0).
double logdet2_capacity(double P, const Eigen::MatrixXd& X) {
  if (X.rows() == 0 || X.cols() == 0) return 0.0;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(X.rows(), X.rows());
  A.noalias() += P * (X * X.transpose());
  const Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("cut-set evaluation: Cholesky failed on I + P X X^T");
  }
  const auto& Lfac = llt.matrixLLT();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < Lfac.rows(); ++i) {
    logdet += std::log2(Lfac(i, i));
  }
  return 2.0 * logdet;
}

// ---------------------------------------------------------------------------
// Field-generic construction of the receiver's stacked linear system.
//
// Unknowns: one column per transmitted symbol (user antenna-slot pairs, in
// slot order, active users ascending).  Rows: the receiver's N observations
// per slot.  The relay appends its own L observation rows per busy slot to a
// side store; when the replayed policy says it forwarded r_t coordinates in
// slot t, each coordinate carries a fresh random combination of the entire
// store so far, and enters the receiver rows through the relay->receiver
// matrix.  Decodable symbols = rank of the receiver system.
// ---------------------------------------------------------------------------

struct PrimeOps {
  using T = std::uint32_t;
  const ChannelInstance& ch;

  static T zero() { return 0; }
  static T add(T a, T b) { return addmod(a, b); }
  static T mul(T a, T b) { return mulmod(a, b); }
  T to_receiver(int k, int r, int m) const { return ch.to_receiver_gf[static_cast<std::size_t>(k)].at(r, m); }
  T to_relay(int k, int l, int m) const { return ch.to_relay_gf[static_cast<std::size_t>(k)].at(l, m); }
  T from_relay(int r, int j) const { return ch.from_relay_gf.at(r, j); }
  static T draw(Xoshiro256ss& rng) { return static_cast<T>(rng.next_below(kPrime)); }
  static int rank(std::vector<std::vector<T>> rows) { return gf_rank(std::move(rows)); }
};

struct RealOps {
  using T = double;
  const ChannelInstance& ch;

  static T zero() { return 0.0; }
  static T add(T a, T b) { return a + b; }
  static T mul(T a, T b) { return a * b; }
  T to_receiver(int k, int r, int m) const { return ch.to_receiver[static_cast<std::size_t>(k)](r, m); }
  T to_relay(int k, int l, int m) const { return ch.to_relay[static_cast<std::size_t>(k)](l, m); }
  T from_relay(int r, int j) const { return ch.from_relay(r, j); }
  static T draw(Xoshiro256ss& rng) { return rng.next_gaussian(); }
  static int rank(std::vector<std::vector<T>> rows) {
    if (rows.empty()) return 0;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
      }
    }
    return real_rank(m);
  }
};

template <class Ops>
int stacked_system_rank(const AntennaConfig& config, const ActivityTrace& trace,
                        const std::vector<int>& relayed_per_slot, const Ops& ops,
                        Xoshiro256ss& combine_rng) {
  using T = typename Ops::T;
  const int N = config.N;
  const int L = config.L;

  std::size_t total_cols = 0;
  for (Pattern a : trace.slots) total_cols += static_cast<std::size_t>(config.sum_M(a));
  if (total_cols == 0) return 0;

  std::vector<std::vector<T>> store;   // relay observation rows, all past slots
  std::vector<std::vector<T>> recv;    // receiver rows over the whole horizon
  std::size_t col_cursor = 0;

  for (std::size_t t = 0; t < trace.slots.size(); ++t) {
    const Pattern a = trace.slots[t];

    // Column base for each active user's symbols this slot.
    std::vector<std::pair<int, std::size_t>> active;  // (user, first column)
    std::size_t cur = col_cursor;
    for (int k = 0; k < config.K; ++k) {
      if (a & (Pattern{1} << k)) {
        active.emplace_back(k, cur);
        cur += static_cast<std::size_t>(config.M[static_cast<std::size_t>(k)]);
      }
    }

    // Receiver's direct observations.
    std::vector<std::vector<T>> rows_t(static_cast<std::size_t>(N),
                                       std::vector<T>(total_cols, Ops::zero()));
    for (const auto& [k, base] : active) {
      for (int r = 0; r < N; ++r) {
        for (int m = 0; m < config.M[static_cast<std::size_t>(k)]; ++m) {
          rows_t[static_cast<std::size_t>(r)][base + static_cast<std::size_t>(m)] =
              ops.to_receiver(k, r, m);
        }
      }
    }

    // Relay transmission: r_t fresh combinations of everything it has heard,
    // one per used relay antenna, entering through the relay->receiver matrix.
    for (int j = 0; j < relayed_per_slot[t]; ++j) {
      std::vector<T> comb(total_cols, Ops::zero());
      for (const auto& srow : store) {
        const T c = Ops::draw(combine_rng);
        for (std::size_t idx = 0; idx < total_cols; ++idx) {
          comb[idx] = Ops::add(comb[idx], Ops::mul(c, srow[idx]));
        }
      }
      for (int r = 0; r < N; ++r) {
        const T f = ops.from_relay(r, j);
        for (std::size_t idx = 0; idx < total_cols; ++idx) {
          rows_t[static_cast<std::size_t>(r)][idx] =
              Ops::add(rows_t[static_cast<std::size_t>(r)][idx], Ops::mul(f, comb[idx]));
        }
      }
    }
    for (auto& row : rows_t) recv.push_back(std::move(row));

    // The relay hears this slot's users (not itself); strict causality means
    // these rows become forwardable only from the next slot on.
    if (!active.empty()) {
      for (int l = 0; l < L; ++l) {
        std::vector<T> row(total_cols, Ops::zero());
        for (const auto& [k, base] : active) {
          for (int m = 0; m < config.M[static_cast<std::size_t>(k)]; ++m) {
            row[base + static_cast<std::size_t>(m)] = ops.to_relay(k, l, m);
          }
        }
        store.push_back(std::move(row));
      }
    }
    col_cursor = cur;
  }
  return Ops::rank(std::move(recv));
}

}  // namespace

int gf_rank(std::vector<std::vector<std::uint32_t>> rows) {
  if (rows.empty()) return 0;
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_cols && rank < n_rows; ++col) {
    std::size_t piv = rank;
    while (piv < n_rows && rows[piv][col] == 0) ++piv;
    if (piv == n_rows) continue;
    std::swap(rows[rank], rows[piv]);
    const std::uint32_t inv = invmod(rows[rank][col]);
    for (std::size_t c = col; c < n_cols; ++c) {
      rows[rank][c] = mulmod(rows[rank][c], inv);
    }
    for (std::size_t r = rank + 1; r < n_rows; ++r) {
      const std::uint32_t f = rows[r][col];
      if (f == 0) continue;
      for (std::size_t c = col; c < n_cols; ++c) {
        rows[r][c] = submod(rows[r][c], mulmod(f, rows[rank][c]));
      }
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

int real_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = 1e-8 * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  }
  return rank;
}

ChannelInstance sample_channel(const AntennaConfig& config, ChannelField field,
                               std::uint64_t seed) {
  ChannelInstance ch;
  ch.config = config;
  ch.field = field;
  ch.seed = seed;
  Xoshiro256ss rng(seed, kChannelStream);

  const auto draw_prime = [&](int r, int c) {
    for (int attempt = 0; attempt < 10; ++attempt) {
      PrimeMatrix m(r, c);
      for (auto& e : m.v) {
        e = 1 + static_cast<std::uint32_t>(rng.next_below(kPrime - 1));
      }
      std::vector<std::vector<std::uint32_t>> rows(static_cast<std::size_t>(r));
      for (int i = 0; i < r; ++i) {
        rows[static_cast<std::size_t>(i)].assign(
            m.v.begin() + static_cast<std::ptrdiff_t>(i) * c,
            m.v.begin() + static_cast<std::ptrdiff_t>(i + 1) * c);
      }
      if (r == 0 || c == 0 || gf_rank(std::move(rows)) == std::min(r, c)) return m;
    }
    throw std::runtime_error("channel sampling: rank-deficient draws 10 times in a row");
  };
  const auto draw_real = [&](int r, int c) {
    for (int attempt = 0; attempt < 10; ++attempt) {
      Eigen::MatrixXd m(r, c);
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c; ++j) m(i, j) = rng.next_gaussian();
      }
      if (r == 0 || c == 0 || real_rank(m) == std::min(r, c)) return m;
    }
    throw std::runtime_error("channel sampling: rank-deficient draws 10 times in a row");
  };

  if (field == ChannelField::prime) {
    for (int k = 0; k < config.K; ++k) {
      const int Mk = config.M[static_cast<std::size_t>(k)];
      ch.to_receiver_gf.push_back(draw_prime(config.N, Mk));
      ch.to_relay_gf.push_back(draw_prime(config.L, Mk));
    }
    ch.from_relay_gf = draw_prime(config.N, config.L);
  } else {
    for (int k = 0; k < config.K; ++k) {
      const int Mk = config.M[static_cast<std::size_t>(k)];
      ch.to_receiver.push_back(draw_real(config.N, Mk));
      ch.to_relay.push_back(draw_real(config.L, Mk));
    }
    ch.from_relay = draw_real(config.N, config.L);
  }
  return ch;
}

int rank_decode_count(const AntennaConfig& config, const ActivityTrace& trace,
                      const ChannelInstance& channel) {
  check_channel_matches(config, channel, "rank_decode_count");
  if (config.K != trace.K) {
    throw std::invalid_argument("rank_decode_count: trace and config disagree on K");
  }
  if (config.K > 4) {
    throw std::invalid_argument("rank_decode_count: exhaustive check is limited to K <= 4");
  }
  if (trace.slots.size() > 200) {
    throw std::invalid_argument("rank_decode_count: limited to 200 slots");
  }
  if (trace.slots.empty()) {
    throw std::invalid_argument("rank_decode_count: trace has no slots");
  }

  // Replay the forwarding policy to learn how many coordinates the relay
  // transmits in each slot; the linear system mirrors those decisions.
  std::vector<int> relayed_per_slot;
  relayed_per_slot.reserve(trace.slots.size());
  SimState st;
  for (Pattern a : trace.slots) {
    relayed_per_slot.push_back(step(st, a, config).relayed);
  }

  Xoshiro256ss combine_rng(channel.seed, kCombineStream);
  if (channel.field == ChannelField::prime) {
    return stacked_system_rank(config, trace, relayed_per_slot, PrimeOps{channel},
                               combine_rng);
  }
  return stacked_system_rank(config, trace, relayed_per_slot, RealOps{channel},
                             combine_rng);
}

CutsetValue cutset_evaluate(const AntennaConfig& config, const ActivityDistribution& dist,
                            Pattern subset, double P, const ChannelInstance& channel) {
  check_channel_matches(config, channel, "cutset_evaluate");
  if (channel.field != ChannelField::real) {
    throw std::invalid_argument("cutset_evaluate: needs a real-field channel");
  }
  if (config.K != dist.user_count()) {
    throw std::invalid_argument("cutset_evaluate: config and traffic law disagree on K");
  }
  const Pattern full = (Pattern{1} << config.K) - 1;
  if (subset == 0 || (subset & ~full)) {
    throw std::invalid_argument("cutset_evaluate: subset must be non-empty and within 1..K");
  }
  if (!(P > 0.0)) {
    throw std::invalid_argument("cutset_evaluate: transmit power P must be positive");
  }

  // Pool the law onto the subset (patterns outside it do not matter).
  std::vector<double> pooled(std::size_t{1} << config.K, 0.0);
  const auto& mass = dist.masses();
  for (Pattern a = 0; a < mass.size(); ++a) pooled[a & subset] += mass[a];

  KahanSum receive;
  KahanSum transmit;
  // Iterate exactly the submasks of `subset` (standard subset-walk), so the
  // work is 2^|subset| regardless of K.
  Pattern b = subset;
  for (;;) {
    const double q = pooled[b];
    if (q > 0.0) {
      int m_b = 0;
      std::vector<int> users;
      for (int k = 0; k < config.K; ++k) {
        if (b & (Pattern{1} << k)) {
          users.push_back(k);
          m_b += config.M[static_cast<std::size_t>(k)];
        }
      }
      // Receive side: receiver and relay listen together.
      Eigen::MatrixXd G(config.N + config.L, m_b);
      int col = 0;
      for (int k : users) {
        const int Mk = config.M[static_cast<std::size_t>(k)];
        G.block(0, col, config.N, Mk) = channel.to_receiver[static_cast<std::size_t>(k)];
        if (config.L > 0) {
          G.block(config.N, col, config.L, Mk) = channel.to_relay[static_cast<std::size_t>(k)];
        }
        col += Mk;
      }
      receive.add(q * logdet2_capacity(P, G));

      // Transmit side: receiver hears the users and the relay.
      Eigen::MatrixXd F(config.N, m_b + config.L);
      col = 0;
      for (int k : users) {
        const int Mk = config.M[static_cast<std::size_t>(k)];
        F.block(0, col, config.N, Mk) = channel.to_receiver[static_cast<std::size_t>(k)];
        col += Mk;
      }
      if (config.L > 0) {
        F.block(0, col, config.N, config.L) = channel.from_relay;
      }
      transmit.add(q * logdet2_capacity(P, F));
    }
    if (b == 0) break;
    b = (b - 1) & subset;
  }
  return CutsetValue{receive.value(), transmit.value()};
}

CutsetSlope cutset_slope(const AntennaConfig& config, const ActivityDistribution& dist,
                         Pattern subset, std::span<const double> P_grid,
                         const ChannelInstance& channel) {
  if (P_grid.size() < 2) {
    throw std::invalid_argument("cutset_slope: need at least two power points");
  }
  std::vector<double> x;
  std::vector<double> y;
  x.reserve(P_grid.size());
  y.reserve(P_grid.size());
  for (double P : P_grid) {
    const CutsetValue v = cutset_evaluate(config, dist, subset, P, channel);
    x.push_back(std::log2(P));
    y.push_back(std::min(v.receive_bits, v.transmit_bits));
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(x.size());
  mean_y /= static_cast<double>(y.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mean_x) * (y[i] - mean_y);
    den += (x[i] - mean_x) * (x[i] - mean_x);
  }
  if (den == 0.0) {
    throw std::invalid_argument("cutset_slope: power grid points must be distinct");
  }
  CutsetSlope out;
  out.slope = num / den;
  out.bound = cut_bound(config, dist, subset);
  out.abs_error = std::abs(out.slope - out.bound);
  return out;
}

double rate_penalty(int L) {
  if (L < 0) throw std::invalid_argument("rate_penalty: L must be >= 0");
  return static_cast<double>(L);
}

double rate_penalty_entropy_difference(int L) {
  if (L < 0) throw std::invalid_argument("rate_penalty: L must be >= 0");
  // h(CN(0, s^2 I_L)) = L log2(pi e s^2); the sum of the relay's observation
  // noise and the unit quantization dither has s^2 = 2, the dither alone 1.
  const double h_sum = L * std::log2(kPi * kEuler * 2.0);
  const double h_dither = L * std::log2(kPi * kEuler * 1.0);
  return h_sum - h_dither;
}

double rate_penalty_mc(int L, std::uint64_t samples, std::uint64_t seed) {
  if (L < 0) throw std::invalid_argument("rate_penalty: L must be >= 0");
  if (samples == 0) throw std::invalid_argument("rate_penalty_mc: need samples");
  if (L == 0) return 0.0;
  Xoshiro256ss rng(seed, kPenaltyStream);
  const double log2e = 1.4426950408889634074;  // log2(e)
  const double inv_sqrt2 = 0.70710678118654752440;
  KahanSum acc;
  for (std::uint64_t n = 0; n < samples; ++n) {
    // z, zh ~ CN(0, I_L): each complex coordinate has N(0, 1/2) real parts.
    double norm_sum = 0.0;   // ||z + zh||^2
    double norm_hat = 0.0;   // ||zh||^2
    for (int i = 0; i < 2 * L; ++i) {
      const double z = rng.next_gaussian() * inv_sqrt2;
      const double zh = rng.next_gaussian() * inv_sqrt2;
      norm_sum += (z + zh) * (z + zh);
      norm_hat += zh * zh;
    }
    // -log2 f_{CN(0,2I)}(z+zh) = L log2(2 pi) + (||.||^2 / 2) log2 e
    // -log2 f_{CN(0, I)}(zh)   = L log2(pi)   +  ||.||^2      log2 e
    const double surprisal_sum = L * std::log2(2.0 * kPi) + 0.5 * norm_sum * log2e;
    const double surprisal_hat = L * std::log2(kPi) + norm_hat * log2e;
    acc.add(surprisal_sum - surprisal_hat);
  }
  return acc.value() / static_cast<double>(samples);
}

}  // namespace burstymac
