// Copyright 2026 The cochlear-bank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Randomized checks of the continuity and deformation-stability bounds of
// the scattering transform. Shared by the unit suite and the acceptance
// binary.

#ifndef COCHLEAR_TESTS_LEMMAS_HPP_
#define COCHLEAR_TESTS_LEMMAS_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "cochlear/gammatone.hpp"
#include "support/oracles.hpp"

namespace lemmas {

inline constexpr double kSampleRate = 44100.0;
inline constexpr double kSlack = 1e-9;

struct Outcome {
  int trials = 0;
  int violations = 0;
  double worst_ratio = 0.0;  // max lhs / rhs
};

// Three well-separated modes with short kernels.
inline cochlear::FilterBank bank() {
  using cd = std::complex<double>;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  return cochlear::build_filter_bank(
      oracle::toy_spectrum({cd(kTwoPi * 500, -kTwoPi * 20), cd(kTwoPi * 2000, -kTwoPi * 40),
                            cd(kTwoPi * 8000, -kTwoPi * 80)},
                           {0.7, 1.0, 1.3}),
      kSampleRate);
}

inline double l1_norm(const std::vector<double>& x, double fs) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s / fs;
}

inline void record(Outcome& o, double lhs, double rhs) {
  ++o.trials;
  if (lhs > rhs + kSlack * std::max(1.0, rhs)) ++o.violations;
  if (rhs > 0.0) o.worst_ratio = std::max(o.worst_ratio, lhs / rhs);
}

inline double channel_gap(const cochlear::ChannelDecomposition& a,
                          const cochlear::ChannelDecomposition& b) {
  double m = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    m = std::max(m, oracle::max_abs_diff(a.channels[c], b.channels[c]));
  }
  return m;
}

// Additive perturbations: sup-norm channel change against C1 ||s1 - s2||_1.
inline Outcome continuity(const cochlear::FilterBank& bank, int pairs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> length(256, 4096);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> scale(1e-3, 1.0);
  const double c1 = cochlear::kernel_sup_bound(bank);
  Outcome o;
  for (int p = 0; p < pairs; ++p) {
    const std::size_t n = length(rng);
    std::vector<double> s1(n);
    std::vector<double> s2(n);
    const double eps = scale(rng);
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) {
      s1[i] = g(rng);
      s2[i] = s1[i] + eps * g(rng);
      diff[i] = s1[i] - s2[i];
    }
    const double lhs = channel_gap(cochlear::transform(bank, s1, kSampleRate),
                                   cochlear::transform(bank, s2, kSampleRate));
    record(o, lhs, c1 * l1_norm(diff, kSampleRate));
  }
  return o;
}

struct WarpCase {
  std::vector<double> signal;
  std::vector<double> tau;  // seconds
  double tau_sup = 0.0;
  double tau_slope = 0.0;   // sup |tau'|, dimensionless
};

// Hann-windowed sum of tones below the lowest bank mode, and a sinusoidal
// warp much slower than every mode with sup |tau'| <= 0.4.
inline WarpCase smooth_case(std::mt19937_64& rng) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::uniform_int_distribution<std::size_t> length(1024, 4096);
  std::uniform_real_distribution<double> tone(20.0, 300.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> warp_freq(2.0, 40.0);
  WarpCase w;
  const std::size_t n = length(rng);
  w.signal.assign(n, 0.0);
  w.tau.assign(n, 0.0);
  for (int j = 0; j < 3; ++j) {
    const double f = tone(rng);
    const double amp = unit(rng) - 0.5;
    const double ph = kTwoPi * unit(rng);
    for (std::size_t i = 0; i < n; ++i) {
      w.signal[i] += amp * std::sin(kTwoPi * f * static_cast<double>(i) / kSampleRate + ph);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double hann = std::sin(std::numbers::pi * static_cast<double>(i) /
                                 static_cast<double>(n - 1));
    w.signal[i] *= hann * hann;
  }
  const double fw = warp_freq(rng);
  const double slope = 0.4 * unit(rng);
  const double amp = slope / (kTwoPi * fw);
  const double ph = kTwoPi * unit(rng);
  for (std::size_t i = 0; i < n; ++i) {
    w.tau[i] = amp * std::sin(kTwoPi * fw * static_cast<double>(i) / kSampleRate + ph);
  }
  w.tau_sup = std::abs(amp);
  w.tau_slope = slope;
  return w;
}

// Pointwise deformation: sup-norm change against C2 ||s||_1 ||tau||_inf.
inline Outcome pointwise_warp(const cochlear::FilterBank& bank, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double c2 = cochlear::kernel_derivative_sup_bound(bank);
  Outcome o;
  for (int k = 0; k < cases; ++k) {
    const WarpCase w = smooth_case(rng);
    const auto warped = cochlear::time_warp(w.signal, w.tau, kSampleRate);
    const double lhs = channel_gap(cochlear::transform(bank, w.signal, kSampleRate),
                                   cochlear::transform(bank, warped, kSampleRate));
    record(o, lhs, c2 * l1_norm(w.signal, kSampleRate) * w.tau_sup);
  }
  return o;
}

// Averaged deformation over a random window [t1, t2]:
// |<a[s]> - <a[T s]>| <= C1/(1 - c) ||s||_1 (2 ||tau|| / (t2 - t1) + c).
inline Outcome averaged_warp(const cochlear::FilterBank& bank, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double c1 = cochlear::kernel_sup_bound(bank);
  Outcome o;
  for (int k = 0; k < cases; ++k) {
    const WarpCase w = smooth_case(rng);
    const double duration = static_cast<double>(w.signal.size()) / kSampleRate;
    const double t1 = 0.5 * duration * unit(rng);
    const double t2 = t1 + (duration - t1) * (0.2 + 0.8 * unit(rng));
    const auto warped = cochlear::time_warp(w.signal, w.tau, kSampleRate);
    const auto a = cochlear::transform(bank, w.signal, kSampleRate);
    const auto b = cochlear::transform(bank, warped, kSampleRate);
    double lhs = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
      lhs = std::max(lhs, std::abs(cochlear::temporal_average(a.channels[c], kSampleRate, t1, t2) -
                                   cochlear::temporal_average(b.channels[c], kSampleRate, t1, t2)));
    }
    const double c3 = c1 / (1.0 - w.tau_slope);
    const double rhs = c3 * l1_norm(w.signal, kSampleRate) *
                       (2.0 * w.tau_sup / (t2 - t1) + w.tau_slope);
    record(o, lhs, rhs);
  }
  return o;
}

}  // namespace lemmas

#endif  // COCHLEAR_TESTS_LEMMAS_HPP_
