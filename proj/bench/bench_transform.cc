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

// Filter-bank transform throughput: OpenMP FFT path against the serial
// direct-convolution reference, on a 22-resonator graded array.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cochlear/design.hpp"
#include "cochlear/gammatone.hpp"
#include "cochlear/kernels.hpp"
#include "cochlear/resonator.hpp"

namespace {

constexpr double kSampleRate = 44100.0;

const cochlear::FilterBank& graded_bank() {
  static const cochlear::FilterBank bank = [] {
    const auto material = cochlear::MaterialParams::air_in_water();
    const double delta = material.contrast();
    const auto array =
        cochlear::design_graded_array(22, 0.035, 2000.0, 20000.0, material, delta);
    const auto spectrum =
        cochlear::solve_spectrum(cochlear::build_capacitance_dilute(array), array, delta);
    return cochlear::build_filter_bank(spectrum, kSampleRate);
  }();
  return bank;
}

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 0.1);
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

void BM_Transform(benchmark::State& state, cochlear::Backend backend) {
  const auto& bank = graded_bank();
  const auto signal = noise(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto d = cochlear::transform(bank, signal, kSampleRate, backend);
    benchmark::DoNotOptimize(d.channels.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) *
                          static_cast<std::int64_t>(bank.size()));
  state.counters["threads"] = cochlear::kernels::max_threads();
}

void BM_TransformParallelFft(benchmark::State& state) {
  BM_Transform(state, cochlear::Backend::kParallelFft);
}

void BM_TransformSerialDirect(benchmark::State& state) {
  BM_Transform(state, cochlear::Backend::kSerialDirect);
}

}  // namespace

BENCHMARK(BM_TransformParallelFft)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransformSerialDirect)->RangeMultiplier(4)->Range(1 << 12, 1 << 14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
