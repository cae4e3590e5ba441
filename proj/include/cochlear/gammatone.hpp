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

// Time-domain kernels of a resonator array, the filter bank they form, and
// the operations built on it: the scattering transform, temporal averages,
// cascades and time warps.
//
// Continuous-time convolutions are represented by discrete linear
// convolutions scaled by the sample period, so a discrete unit impulse has
// height sample_rate and returns the kernel itself.

#ifndef COCHLEAR_GAMMATONE_HPP_
#define COCHLEAR_GAMMATONE_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cochlear/resonator.hpp"

namespace cochlear {

inline constexpr double kDefaultSampleRate = 44100.0;
inline constexpr double kKernelTruncation = 1e-6;
inline constexpr double kDefaultMaxKernelSeconds = 10.0;

// gain * t^{m-1} e^{Im(omega) t} cos(Re(omega) t - phase), t >= 0.
struct GammatoneKernel {
  int order = 1;
  std::complex<double> omega;
  double phase = 0.0;
  double gain = 1.0;
  double sample_rate = kDefaultSampleRate;
  std::vector<double> samples;  // samples[k] is the value at t = k / rate

  double center_frequency_hz() const;
  double value(double t) const;  // continuous form, zero for t < 0
};

// Number of samples needed until the envelope t^{m-1} e^{Im(omega) t} has
// dropped below kKernelTruncation of its peak (peak sample included).
std::size_t truncated_length(int order, double im_omega, double sample_rate);

// Throws UnstableKernel if Im(omega) >= 0, KernelTooLong if the truncated
// kernel would exceed max_seconds.
GammatoneKernel higher_order_gammatone(
    int order, std::complex<double> omega, double phase, double sample_rate,
    double gain = 1.0, double max_seconds = kDefaultMaxKernelSeconds);

struct FilterBank {
  std::vector<GammatoneKernel> kernels;  // ascending center frequency
  SubwavelengthSpectrum spectrum;
  double sample_rate = kDefaultSampleRate;

  std::size_t size() const { return kernels.size(); }
  std::vector<std::vector<double>> kernel_samples() const;
};

// h_n(t) = nu_n Re(omega_n) e^{Im(omega_n) t} sin(Re(omega_n) t).
// Throws NyquistViolation when a center frequency is at or above
// sample_rate / 2.
FilterBank build_filter_bank(const SubwavelengthSpectrum& spectrum,
                             double sample_rate,
                             double max_kernel_seconds = kDefaultMaxKernelSeconds);

struct ChannelDecomposition {
  std::vector<std::vector<double>> channels;
  double sample_rate = kDefaultSampleRate;
  // 1-based resonator indices; one entry per channel.
  std::vector<std::vector<std::size_t>> path_labels;

  std::size_t size() const { return channels.size(); }
  std::size_t length() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

enum class Backend { kParallelFft, kSerialDirect };

// a_n[s] = s * h_n, trimmed to the signal length. Throws
// SampleRateMismatch when signal_rate differs from the bank rate.
ChannelDecomposition transform(const FilterBank& bank,
                               std::span<const double> signal,
                               double signal_rate,
                               Backend backend = Backend::kParallelFft);

// Mean of the piecewise-linear interpolant over [t1, t2]. The series
// covers [0, n / sample_rate); the final sample is held over the last
// period. Throws EmptyWindow when fewer than two samples lie in the window.
double temporal_average(std::span<const double> channel, double sample_rate,
                        double t1, double t2);

enum class Activation { kIdentity, kModulus, kRectifier };

Activation parse_activation(const std::string& name);
const char* to_string(Activation activation);

// a^(j) = activation(a^(j-1) * h_{path[j]}), a^(0) = s. Path indices are
// 1-based; InvalidPathIndex otherwise.
std::vector<double> cascade(const FilterBank& bank,
                            std::span<const double> signal,
                            double signal_rate,
                            std::span<const std::size_t> path,
                            Activation activation);

// Coefficients b_1..b_k (index m-1) with
//   G^1 * ... * G^1 (k factors) = sum_m b_m G^m,  G^m = g(t; m, omega, m pi/2),
// from the recursion
//   G^m * G^1 = G^{m+1} / (2m) + (m-1) / (2 Re omega) * (G^{m-1} * G^1).
std::vector<double> self_cascade_coefficients(int depth, double re_omega);

// Impulse response of a depth-k same-channel identity cascade through a
// kernel with the given gain and omega, sampled on `length` points.
std::vector<double> self_cascade_closed_form(std::complex<double> omega,
                                             double gain, int depth,
                                             double sample_rate,
                                             std::size_t length);

// f(t + tau(t)) by linear interpolation; tau in seconds, reads outside the
// signal support are zero. Throws LengthMismatch.
std::vector<double> time_warp(std::span<const double> signal,
                              std::span<const double> tau,
                              double sample_rate);

// sup_t |h_n(t)| and sup_t |h_n'(t)| maximized over the bank, evaluated
// from the continuous kernels.
double kernel_sup_bound(const FilterBank& bank);
double kernel_derivative_sup_bound(const FilterBank& bank);

}  // namespace cochlear

#endif  // COCHLEAR_GAMMATONE_HPP_
