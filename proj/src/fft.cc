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

#include "cochlear/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "cochlear/error.hpp"

namespace cochlear::fft {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

FftwBuffer<double> alloc_real(std::size_t n) {
  return FftwBuffer<double>(fftw_alloc_real(std::max<std::size_t>(n, 1)));
}

FftwBuffer<fftw_complex> alloc_complex(std::size_t n) {
  return FftwBuffer<fftw_complex>(
      fftw_alloc_complex(std::max<std::size_t>(n, 1)));
}

enum class Kind { kForward, kBackward, kRealToComplex, kComplexToReal };

// Plans are cached per (kind, length) and executed through the new-array
// interface, which is thread-safe. All buffers come from fftw_alloc, so they
// share the alignment the plans were made with.
fftw_plan cached_plan(Kind kind, int n) {
  static std::map<std::pair<Kind, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find({kind, n});
  if (it != cache.end()) return it->second;
  const auto len = static_cast<std::size_t>(n);
  auto real = alloc_real(len);
  auto in = alloc_complex(len);
  auto out = alloc_complex(len);
  fftw_plan plan = nullptr;
  switch (kind) {
    case Kind::kForward:
      plan = fftw_plan_dft_1d(n, in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE);
      break;
    case Kind::kBackward:
      plan = fftw_plan_dft_1d(n, in.get(), out.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
      break;
    case Kind::kRealToComplex:
      plan = fftw_plan_dft_r2c_1d(n, real.get(), out.get(), FFTW_ESTIMATE);
      break;
    case Kind::kComplexToReal:
      plan = fftw_plan_dft_c2r_1d(n, in.get(), real.get(), FFTW_ESTIMATE);
      break;
  }
  if (plan == nullptr) fail(ErrorCode::kInvalidArgument, "FFTW planning failed");
  cache.emplace(std::make_pair(kind, n), plan);
  return plan;
}

int checked_size(std::size_t n) {
  if (n == 0 || n > static_cast<std::size_t>(1) << 30) {
    fail(ErrorCode::kInvalidArgument, "unsupported FFT length");
  }
  return static_cast<int>(n);
}

std::vector<std::complex<double>> complex_transform(
    std::span<const std::complex<double>> x, Kind kind) {
  const std::size_t n = x.size();
  const fftw_plan plan = cached_plan(kind, checked_size(n));
  auto in = alloc_complex(n);
  auto out = alloc_complex(n);
  for (std::size_t i = 0; i < n; ++i) {
    in[i][0] = x[i].real();
    in[i][1] = x[i].imag();
  }
  fftw_execute_dft(plan, in.get(), out.get());
  std::vector<std::complex<double>> result(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = {out[i][0], out[i][1]};
  return result;
}

}  // namespace

std::vector<std::complex<double>> forward_real(std::span<const double> x,
                                               std::size_t n) {
  const fftw_plan plan = cached_plan(Kind::kRealToComplex, checked_size(n));
  auto in = alloc_real(n);
  auto out = alloc_complex(n / 2 + 1);
  const std::size_t copy = std::min(n, x.size());
  std::copy_n(x.begin(), copy, in.get());
  std::fill(in.get() + copy, in.get() + n, 0.0);
  fftw_execute_dft_r2c(plan, in.get(), out.get());
  std::vector<std::complex<double>> bins(n / 2 + 1);
  for (std::size_t k = 0; k < bins.size(); ++k) bins[k] = {out[k][0], out[k][1]};
  return bins;
}

std::vector<double> inverse_real(std::span<const std::complex<double>> bins,
                                 std::size_t n) {
  const int len = checked_size(n);
  if (bins.size() != n / 2 + 1) {
    fail(ErrorCode::kInvalidArgument, "inverse_real: bin count does not match length");
  }
  const fftw_plan plan = cached_plan(Kind::kComplexToReal, len);
  // c2r destroys its input; `in` is scratch.
  auto in = alloc_complex(bins.size());
  auto out = alloc_real(n);
  for (std::size_t k = 0; k < bins.size(); ++k) {
    in[k][0] = bins[k].real();
    in[k][1] = bins[k].imag();
  }
  fftw_execute_dft_c2r(plan, in.get(), out.get());
  std::vector<double> result(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = out[i] * scale;
  return result;
}

std::vector<std::complex<double>> forward(
    std::span<const std::complex<double>> x) {
  return complex_transform(x, Kind::kForward);
}

std::vector<std::complex<double>> inverse(
    std::span<const std::complex<double>> x) {
  auto result = complex_transform(x, Kind::kBackward);
  const double scale = 1.0 / static_cast<double>(x.size());
  for (auto& v : result) v *= scale;
  return result;
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace cochlear::fft
