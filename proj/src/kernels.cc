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

#include "cochlear/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <complex>
#include <cstddef>

#include "cochlear/fft.hpp"

namespace cochlear::kernels {

Series convolve_direct(std::span<const double> signal,
                       std::span<const double> kernel, double scale) {
  const std::size_t n = signal.size();
  const std::size_t m = kernel.size();
  Series out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t first = k + 1 > m ? k + 1 - m : 0;
    double acc = 0.0;
    for (std::size_t j = first; j <= k; ++j) acc += signal[j] * kernel[k - j];
    out[k] = scale * acc;
  }
  return out;
}

namespace {

// Multiplies a precomputed signal spectrum by the kernel spectrum and
// returns the trimmed, scaled result.
Series apply_spectrum(const std::vector<std::complex<double>>& signal_bins,
                      std::span<const double> kernel, std::size_t n,
                      std::size_t fft_len, double scale) {
  std::vector<std::complex<double>> bins = fft::forward_real(kernel, fft_len);
  for (std::size_t k = 0; k < bins.size(); ++k) bins[k] *= signal_bins[k];
  Series full = fft::inverse_real(bins, fft_len);
  Series out(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n));
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace

Series convolve_fft(std::span<const double> signal,
                    std::span<const double> kernel, double scale) {
  const std::size_t n = signal.size();
  if (n == 0) return {};
  if (kernel.empty()) return Series(n, 0.0);
  kernel = kernel.first(std::min(kernel.size(), n));
  // Only the first n outputs are kept, so a length of n + m - 1 keeps
  // circular wrap-around out of them.
  const std::size_t fft_len = fft::next_power_of_two(n + kernel.size() - 1);
  return apply_spectrum(fft::forward_real(signal, fft_len), kernel, n, fft_len,
                        scale);
}

std::vector<Series> convolve_bank(std::span<const double> signal,
                                  const std::vector<Series>& kernels,
                                  double scale) {
  const std::size_t n = signal.size();
  std::vector<Series> out(kernels.size());
  if (n == 0) return out;
  // Kernel samples past the signal length never reach the kept outputs.
  std::size_t longest = 1;
  for (const auto& k : kernels) longest = std::max(longest, std::min(k.size(), n));
  const std::size_t fft_len = fft::next_power_of_two(n + longest - 1);
  const std::vector<std::complex<double>> signal_bins =
      fft::forward_real(signal, fft_len);
  const auto count = static_cast<std::ptrdiff_t>(kernels.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    const auto idx = static_cast<std::size_t>(c);
    const std::span<const double> k(kernels[idx].data(),
                                    std::min(kernels[idx].size(), n));
    out[idx] = k.empty() ? Series(n, 0.0)
                         : apply_spectrum(signal_bins, k, n, fft_len, scale);
  }
  return out;
}

std::vector<Series> convolve_bank_serial(std::span<const double> signal,
                                         const std::vector<Series>& kernels,
                                         double scale) {
  std::vector<Series> out;
  out.reserve(kernels.size());
  for (const auto& k : kernels) out.push_back(convolve_direct(signal, k, scale));
  return out;
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace cochlear::kernels
