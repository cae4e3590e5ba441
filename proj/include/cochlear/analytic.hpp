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

// Analytic-signal decomposition of a channel into instantaneous amplitude,
// carrier-relative phase and instantaneous frequency.

#ifndef COCHLEAR_ANALYTIC_HPP_
#define COCHLEAR_ANALYTIC_HPP_

#include <complex>
#include <span>
#include <vector>

namespace cochlear {

inline constexpr double kDefaultSilenceThreshold = 1e-5;
inline constexpr std::size_t kMinAnalyticLength = 16;

struct AnalyticChannel {
  std::vector<double> amplitude;       // A_n(t) >= 0
  std::vector<double> phase;           // unwrapped, carrier removed (rad)
  std::vector<double> inst_frequency;  // d phase / dt (rad/s)
  // false where the amplitude is below the silence threshold times the
  // channel maximum; phase is meaningless there.
  std::vector<bool> valid;
  double center_frequency = 0.0;  // rad/s
  double sample_rate = 0.0;

  std::size_t size() const { return amplitude.size(); }
  std::size_t valid_count() const;
};

// s + i H(s) by the frequency-domain method: negative bins zeroed, positive
// bins doubled, DC and Nyquist kept.
std::vector<std::complex<double>> analytic_samples(std::span<const double> x);
// Uses the real part only, so analytic input is returned unchanged.
std::vector<std::complex<double>> analytic_samples(
    std::span<const std::complex<double>> x);

// Unwraps so that consecutive samples never differ by more than pi.
std::vector<double> unwrap_phase(std::span<const double> wrapped);

// Throws SignalTooShort below kMinAnalyticLength samples and
// NyquistViolation when the center frequency is not below Nyquist.
AnalyticChannel analytic_signal(std::span<const double> channel,
                                double center_frequency, double sample_rate,
                                double silence_threshold = kDefaultSilenceThreshold);

}  // namespace cochlear

#endif  // COCHLEAR_ANALYTIC_HPP_
