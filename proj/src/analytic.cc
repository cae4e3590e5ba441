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

#include "cochlear/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cochlear/error.hpp"
#include "cochlear/fft.hpp"

namespace cochlear {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::complex<double>> positive_half(
    std::vector<std::complex<double>> bins) {
  const std::size_t n = bins.size();
  const std::size_t half = n / 2;
  const std::size_t last_doubled = n % 2 == 0 ? half - 1 : half;
  for (std::size_t k = 1; k <= last_doubled && k < n; ++k) bins[k] *= 2.0;
  for (std::size_t k = last_doubled + 1; k < n; ++k) {
    if (n % 2 == 0 && k == half) continue;  // Nyquist
    bins[k] = 0.0;
  }
  return fft::inverse(bins);
}

}  // namespace

std::size_t AnalyticChannel::valid_count() const {
  return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), true));
}

std::vector<std::complex<double>> analytic_samples(std::span<const double> x) {
  if (x.empty()) return {};
  const std::vector<std::complex<double>> z(x.begin(), x.end());
  return positive_half(fft::forward(z));
}

std::vector<std::complex<double>> analytic_samples(
    std::span<const std::complex<double>> x) {
  std::vector<double> re(x.size());
  std::transform(x.begin(), x.end(), re.begin(),
                 [](const std::complex<double>& v) { return v.real(); });
  return analytic_samples(re);
}

std::vector<double> unwrap_phase(std::span<const double> wrapped) {
  std::vector<double> out(wrapped.begin(), wrapped.end());
  double offset = 0.0;
  for (std::size_t k = 1; k < out.size(); ++k) {
    const double d = wrapped[k] - wrapped[k - 1];
    double dd = std::remainder(d, 2.0 * kPi);  // in [-pi, pi]
    if (dd == -kPi && d > 0.0) dd = kPi;
    if (std::abs(d) >= kPi) offset += dd - d;
    out[k] = wrapped[k] + offset;
  }
  return out;
}

AnalyticChannel analytic_signal(std::span<const double> channel,
                                double center_frequency, double sample_rate,
                                double silence_threshold) {
  if (!(sample_rate > 0.0)) fail(ErrorCode::kInvalidArgument, "sample rate must be positive");
  if (channel.size() < kMinAnalyticLength) {
    fail(ErrorCode::kSignalTooShort,
         std::to_string(channel.size()) + " samples, need at least " +
             std::to_string(kMinAnalyticLength));
  }
  if (!(center_frequency >= 0.0) || center_frequency >= kPi * sample_rate) {
    fail(ErrorCode::kNyquistViolation, "center frequency not below Nyquist");
  }
  const std::size_t n = channel.size();
  const std::vector<std::complex<double>> z = analytic_samples(channel);

  AnalyticChannel out;
  out.center_frequency = center_frequency;
  out.sample_rate = sample_rate;
  out.amplitude.resize(n);
  std::vector<double> wrapped(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.amplitude[k] = std::abs(z[k]);
    wrapped[k] = std::arg(z[k]);
  }
  const double peak = *std::max_element(out.amplitude.begin(), out.amplitude.end());
  const double floor = silence_threshold * peak;
  out.valid.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.valid[k] = peak > 0.0 && out.amplitude[k] > floor;
  }

  out.phase = unwrap_phase(wrapped);
  const double dt = 1.0 / sample_rate;
  for (std::size_t k = 0; k < n; ++k) {
    out.phase[k] -= center_frequency * static_cast<double>(k) * dt;
  }
  out.inst_frequency.resize(n);
  out.inst_frequency[0] = (out.phase[1] - out.phase[0]) / dt;
  out.inst_frequency[n - 1] = (out.phase[n - 1] - out.phase[n - 2]) / dt;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    out.inst_frequency[k] = (out.phase[k + 1] - out.phase[k - 1]) / (2.0 * dt);
  }
  return out;
}

}  // namespace cochlear
