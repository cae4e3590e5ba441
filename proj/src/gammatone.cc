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

#include "cochlear/gammatone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cochlear/error.hpp"
#include "cochlear/kernels.hpp"

namespace cochlear {
namespace {

constexpr double kPi = std::numbers::pi;

// cos(x - phase). Phases on the quarter-turn lattice are applied exactly so
// that, e.g., the sine kernel is exactly zero at t = 0.
double shifted_cos(double x, double phase) {
  const double quarters = phase / (kPi / 2);
  const double k = std::round(quarters);
  if (std::abs(k) < 1e6 && k * (kPi / 2) == phase) {
    switch (static_cast<long long>(std::fmod(std::fmod(k, 4.0) + 4.0, 4.0))) {
      case 0: return std::cos(x);
      case 1: return std::sin(x);
      case 2: return -std::cos(x);
      default: return -std::sin(x);
    }
  }
  return std::cos(x - phase);
}

double truncation_time(int order, double decay) {
  const double log_floor = std::log(kKernelTruncation);
  if (order == 1) return -log_floor / decay;
  // log envelope (m-1) log t - decay t peaks at t* = (m-1)/decay.
  const double m1 = order - 1;
  const double peak_t = m1 / decay;
  const double target = m1 * (std::log(peak_t) - 1.0) + log_floor;
  auto log_env = [&](double t) { return m1 * std::log(t) - decay * t; };
  double lo = peak_t;
  double hi = 2.0 * peak_t;
  while (log_env(hi) > target) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (log_env(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

void check_rate(double rate, const char* what) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    fail(ErrorCode::kInvalidArgument, std::string(what) + " must be positive");
  }
}

void check_same_rate(double bank_rate, double signal_rate) {
  check_rate(signal_rate, "signal sample rate");
  if (std::abs(bank_rate - signal_rate) > 1e-9 * bank_rate) {
    fail(ErrorCode::kSampleRateMismatch,
         "signal at " + std::to_string(signal_rate) + " Hz, bank at " +
             std::to_string(bank_rate) + " Hz");
  }
}

double apply(Activation activation, double x) {
  switch (activation) {
    case Activation::kModulus: return std::abs(x);
    case Activation::kRectifier: return std::max(x, 0.0);
    case Activation::kIdentity: break;
  }
  return x;
}

}  // namespace

double GammatoneKernel::center_frequency_hz() const {
  return omega.real() / (2.0 * kPi);
}

double GammatoneKernel::value(double t) const {
  if (t < 0.0) return 0.0;
  const double power = order == 1 ? 1.0 : std::pow(t, order - 1);
  return gain * power * std::exp(omega.imag() * t) *
         shifted_cos(omega.real() * t, phase);
}

std::size_t truncated_length(int order, double im_omega, double sample_rate) {
  if (order < 1) fail(ErrorCode::kInvalidArgument, "gammatone order must be >= 1");
  if (!(im_omega < 0.0)) {
    fail(ErrorCode::kUnstableKernel, "Im(omega) must be negative");
  }
  check_rate(sample_rate, "sample rate");
  const double t_end = truncation_time(order, -im_omega);
  return static_cast<std::size_t>(std::floor(t_end * sample_rate)) + 1;
}

GammatoneKernel higher_order_gammatone(int order, std::complex<double> omega,
                                       double phase, double sample_rate,
                                       double gain, double max_seconds) {
  if (!std::isfinite(omega.real()) || !std::isfinite(omega.imag()) ||
      !std::isfinite(phase) || !std::isfinite(gain)) {
    fail(ErrorCode::kInvalidArgument, "non-finite gammatone parameter");
  }
  if (!(omega.imag() < 0.0)) {
    fail(ErrorCode::kUnstableKernel,
         "Im(omega) = " + std::to_string(omega.imag()) + " is not negative");
  }
  check_rate(sample_rate, "sample rate");
  if (order < 1) fail(ErrorCode::kInvalidArgument, "gammatone order must be >= 1");
  const double t_end = truncation_time(order, -omega.imag());
  if (t_end > max_seconds) {
    fail(ErrorCode::kKernelTooLong,
         "kernel needs " + std::to_string(t_end) + " s, limit is " +
             std::to_string(max_seconds) + " s");
  }
  GammatoneKernel k;
  k.order = order;
  k.omega = omega;
  k.phase = phase;
  k.gain = gain;
  k.sample_rate = sample_rate;
  const std::size_t n = static_cast<std::size_t>(std::floor(t_end * sample_rate)) + 1;
  k.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    k.samples[i] = k.value(static_cast<double>(i) / sample_rate);
  }
  return k;
}

std::vector<std::vector<double>> FilterBank::kernel_samples() const {
  std::vector<std::vector<double>> out;
  out.reserve(kernels.size());
  for (const auto& k : kernels) out.push_back(k.samples);
  return out;
}

FilterBank build_filter_bank(const SubwavelengthSpectrum& spectrum,
                             double sample_rate, double max_kernel_seconds) {
  check_rate(sample_rate, "sample rate");
  if (spectrum.size() == 0) fail(ErrorCode::kInvalidArgument, "empty spectrum");
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    const double f = spectrum.frequencies[n].real() / (2.0 * kPi);
    if (!(sample_rate > 2.0 * f)) {
      fail(ErrorCode::kNyquistViolation,
           "mode " + std::to_string(n + 1) + " at " + std::to_string(f) +
               " Hz needs a sample rate above " + std::to_string(2.0 * f) +
               " Hz");
    }
  }
  FilterBank bank;
  bank.spectrum = spectrum;
  bank.sample_rate = sample_rate;
  bank.kernels.reserve(spectrum.size());
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    const std::complex<double> w = spectrum.frequencies[n];
    const double gain = spectrum.modal_weights[n] * w.real();
    bank.kernels.push_back(higher_order_gammatone(1, w, kPi / 2, sample_rate,
                                                  gain, max_kernel_seconds));
  }
  return bank;
}

ChannelDecomposition transform(const FilterBank& bank,
                               std::span<const double> signal,
                               double signal_rate, Backend backend) {
  check_same_rate(bank.sample_rate, signal_rate);
  const double dt = 1.0 / bank.sample_rate;
  const auto kernels = bank.kernel_samples();
  ChannelDecomposition out;
  out.sample_rate = bank.sample_rate;
  out.channels = backend == Backend::kParallelFft
                     ? kernels::convolve_bank(signal, kernels, dt)
                     : kernels::convolve_bank_serial(signal, kernels, dt);
  out.path_labels.resize(bank.size());
  for (std::size_t n = 0; n < bank.size(); ++n) out.path_labels[n] = {n + 1};
  return out;
}

double temporal_average(std::span<const double> channel, double sample_rate,
                        double t1, double t2) {
  check_rate(sample_rate, "sample rate");
  const std::size_t n = channel.size();
  const double dt = 1.0 / sample_rate;
  const double duration = static_cast<double>(n) * dt;
  if (!(t1 >= 0.0) || !(t2 > t1) || t2 > duration * (1.0 + 1e-12)) {
    fail(ErrorCode::kInvalidArgument,
         "window [" + std::to_string(t1) + ", " + std::to_string(t2) +
             "] outside [0, " + std::to_string(duration) + "]");
  }
  const double first = std::ceil(t1 * sample_rate - 1e-9);
  const double last = std::min(std::floor(t2 * sample_rate + 1e-9),
                               static_cast<double>(n) - 1.0);
  if (last - first + 1.0 < 2.0) {
    fail(ErrorCode::kEmptyWindow, "fewer than two samples in window");
  }
  // Cumulative integral of the interpolant up to each sample.
  std::vector<double> prefix(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    prefix[k] = prefix[k - 1] + 0.5 * dt * (channel[k - 1] + channel[k]);
  }
  auto integral_to = [&](double t) {
    const double pos = std::min(t * sample_rate, static_cast<double>(n));
    auto j = static_cast<std::size_t>(std::floor(pos));
    if (j >= n) j = n - 1;
    const double u = pos - static_cast<double>(j);
    const double next = j + 1 < n ? channel[j + 1] : channel[j];
    const double end_value = channel[j] + u * (next - channel[j]);
    return prefix[j] + 0.5 * u * dt * (channel[j] + end_value);
  };
  return (integral_to(t2) - integral_to(t1)) / (t2 - t1);
}

Activation parse_activation(const std::string& name) {
  if (name == "identity") return Activation::kIdentity;
  if (name == "modulus") return Activation::kModulus;
  if (name == "rectifier") return Activation::kRectifier;
  fail(ErrorCode::kInvalidArgument, "unknown activation '" + name + "'");
}

const char* to_string(Activation activation) {
  switch (activation) {
    case Activation::kModulus: return "modulus";
    case Activation::kRectifier: return "rectifier";
    case Activation::kIdentity: break;
  }
  return "identity";
}

std::vector<double> cascade(const FilterBank& bank,
                            std::span<const double> signal,
                            double signal_rate,
                            std::span<const std::size_t> path,
                            Activation activation) {
  check_same_rate(bank.sample_rate, signal_rate);
  if (path.empty()) fail(ErrorCode::kInvalidPathIndex, "empty cascade path");
  for (std::size_t idx : path) {
    if (idx < 1 || idx > bank.size()) {
      fail(ErrorCode::kInvalidPathIndex,
           "path index " + std::to_string(idx) + " outside 1.." +
               std::to_string(bank.size()));
    }
  }
  const double dt = 1.0 / bank.sample_rate;
  std::vector<double> current(signal.begin(), signal.end());
  for (std::size_t idx : path) {
    current = kernels::convolve_fft(current, bank.kernels[idx - 1].samples, dt);
    if (activation != Activation::kIdentity) {
      for (double& v : current) v = apply(activation, v);
    }
  }
  return current;
}

std::vector<double> self_cascade_coefficients(int depth, double re_omega) {
  if (depth < 1) fail(ErrorCode::kInvalidArgument, "cascade depth must be >= 1");
  if (!(re_omega > 0.0)) fail(ErrorCode::kInvalidArgument, "Re(omega) must be positive");
  const double inv2a = 1.0 / (2.0 * re_omega);
  // products[m-1] = expansion of G^m * G^1 over G^1..G^{m+1}.
  std::vector<std::vector<double>> products;
  std::vector<double> coeffs{1.0};
  for (int d = 2; d <= depth; ++d) {
    const int m = d - 1;  // highest order present in coeffs
    std::vector<double> next(static_cast<std::size_t>(m + 1), 0.0);
    next[static_cast<std::size_t>(m)] = 1.0 / (2.0 * m);
    if (m == 1) {
      next[0] = inv2a;
    } else {
      const auto& prev = products[static_cast<std::size_t>(m - 2)];
      for (std::size_t i = 0; i < prev.size(); ++i) {
        next[i] += (m - 1) * inv2a * prev[i];
      }
    }
    products.push_back(std::move(next));
    std::vector<double> result(static_cast<std::size_t>(d), 0.0);
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const auto& e = products[j];
      for (std::size_t i = 0; i < e.size(); ++i) result[i] += coeffs[j] * e[i];
    }
    coeffs = std::move(result);
  }
  return coeffs;
}

std::vector<double> self_cascade_closed_form(std::complex<double> omega,
                                             double gain, int depth,
                                             double sample_rate,
                                             std::size_t length) {
  check_rate(sample_rate, "sample rate");
  const std::vector<double> b = self_cascade_coefficients(depth, omega.real());
  std::vector<GammatoneKernel> terms;
  for (int m = 1; m <= depth; ++m) {
    GammatoneKernel g;
    g.order = m;
    g.omega = omega;
    g.phase = m * kPi / 2;
    g.gain = b[static_cast<std::size_t>(m - 1)] * std::pow(gain, depth);
    g.sample_rate = sample_rate;
    terms.push_back(g);
  }
  std::vector<double> out(length, 0.0);
  for (std::size_t k = 0; k < length; ++k) {
    const double t = static_cast<double>(k) / sample_rate;
    for (const auto& g : terms) out[k] += g.value(t);
  }
  return out;
}

std::vector<double> time_warp(std::span<const double> signal,
                              std::span<const double> tau,
                              double sample_rate) {
  check_rate(sample_rate, "sample rate");
  if (signal.size() != tau.size()) {
    fail(ErrorCode::kLengthMismatch,
         "signal has " + std::to_string(signal.size()) + " samples, warp has " +
             std::to_string(tau.size()));
  }
  const std::size_t n = signal.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  const double last = static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) + tau[k] * sample_rate;
    if (!(x >= 0.0) || x > last) continue;
    const auto i = static_cast<std::size_t>(std::floor(x));
    const double u = x - static_cast<double>(i);
    out[k] = i + 1 < n ? (1.0 - u) * signal[i] + u * signal[i + 1] : signal[i];
  }
  return out;
}

double kernel_sup_bound(const FilterBank& bank) {
  double best = 0.0;
  for (const auto& k : bank.kernels) {
    const double a = k.omega.real();
    const double b = -k.omega.imag();
    // |sin| e^{-bt} peaks where tan(at) = a/b; later lobes are smaller.
    const double t = std::atan2(a, b) / a;
    best = std::max(best, std::abs(k.gain) * std::exp(-b * t) * a / std::hypot(a, b));
  }
  return best;
}

double kernel_derivative_sup_bound(const FilterBank& bank) {
  double best = 0.0;
  for (const auto& k : bank.kernels) {
    const double a = k.omega.real();
    const double b = -k.omega.imag();
    // h' = c R e^{-bt} cos(at + theta), theta = atan(b/a): the value at
    // t = 0 is c a, the next extremum sits at at + theta = pi.
    const double r = std::hypot(a, b);
    const double theta = std::atan2(b, a);
    const double lobe = r * std::exp(-b * (kPi - theta) / a);
    best = std::max(best, std::abs(k.gain) * std::max(a, lobe));
  }
  return best;
}

}  // namespace cochlear
