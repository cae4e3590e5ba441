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

// Thin layer over FFTW. Plans are made with FFTW_ESTIMATE so results do not
// depend on timing measurements. Planning is serialized because the FFTW
// planner is not re-entrant; plans are cached per length and shared across
// threads.

#ifndef COCHLEAR_FFT_HPP_
#define COCHLEAR_FFT_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace cochlear::fft {

// Forward real-to-complex transform of `x` zero-padded to length `n`;
// returns n/2 + 1 bins, unnormalized.
std::vector<std::complex<double>> forward_real(std::span<const double> x,
                                               std::size_t n);

// Inverse of forward_real for a length-`n` signal, including the 1/n factor.
std::vector<double> inverse_real(std::span<const std::complex<double>> bins,
                                 std::size_t n);

// Full complex transforms; `inverse` applies the 1/n factor.
std::vector<std::complex<double>> forward(
    std::span<const std::complex<double>> x);
std::vector<std::complex<double>> inverse(
    std::span<const std::complex<double>> x);

std::size_t next_power_of_two(std::size_t n);

}  // namespace cochlear::fft

#endif  // COCHLEAR_FFT_HPP_
