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

// Convolution kernels behind the scattering transform. The FFT paths are
// the production route (channels run in parallel under OpenMP); the direct
// time-domain loops are the serial reference kept for tests and benchmarks.
//
// All routines compute the causal linear convolution scaled by `scale`
// (normally the sample period, so sums approximate integrals) and return
// the first signal.size() samples, aligned at t = 0.

#ifndef COCHLEAR_KERNELS_HPP_
#define COCHLEAR_KERNELS_HPP_

#include <span>
#include <vector>

namespace cochlear::kernels {

using Series = std::vector<double>;

Series convolve_direct(std::span<const double> signal,
                       std::span<const double> kernel, double scale);

Series convolve_fft(std::span<const double> signal,
                    std::span<const double> kernel, double scale);

// One output per kernel. The signal spectrum is computed once and shared.
std::vector<Series> convolve_bank(std::span<const double> signal,
                                  const std::vector<Series>& kernels,
                                  double scale);

// Serial reference for convolve_bank.
std::vector<Series> convolve_bank_serial(std::span<const double> signal,
                                         const std::vector<Series>& kernels,
                                         double scale);

// Number of OpenMP threads the parallel kernels will use.
int max_threads();

}  // namespace cochlear::kernels

#endif  // COCHLEAR_KERNELS_HPP_
