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

// Pooled statistics of normalized log-amplitude and instantaneous
// frequency, and fits of their two parametric densities:
//
//   p_A(x)      = beta exp(beta x - alpha - e^{beta x - alpha})
//   p_lambda(x) = K (zeta^2 + x^2)^{-eta/2}
//
// K normalizes p_lambda over the histogram support.

#ifndef COCHLEAR_DISTRIBUTIONS_HPP_
#define COCHLEAR_DISTRIBUTIONS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "cochlear/analytic.hpp"

namespace cochlear {

inline constexpr std::size_t kMinFitSamples = 500;
inline constexpr int kDefaultHistogramBins = 64;
inline constexpr double kDefaultQuantileLo = 0.001;
inline constexpr double kDefaultQuantileHi = 0.999;

// (x - mean) / stdev with population moments. ZeroVariance when the
// spread is negligible relative to the values, AllSilent when empty.
std::vector<double> standardize(std::span<const double> x);

// log10 A over the non-silent samples, standardized. AllSilent when no
// sample is above the silence threshold, ZeroVariance for a flat envelope.
std::vector<double> normalize_log_amplitude(const AnalyticChannel& channel);

// |standardized lambda| over the non-silent samples.
std::vector<double> normalize_inst_frequency(const AnalyticChannel& channel);

// Means of consecutive disjoint windows, for every window length in turn
// (a trailing partial window is dropped). WindowTooLong when a length
// exceeds the series, InvalidArgument below 2.
std::vector<double> windowed_means(std::span<const double> series,
                                   std::span<const std::size_t> window_lengths);

// Linear-interpolated sample quantile (the usual "type 7" rule).
double quantile(std::vector<double> x, double q);

struct Histogram {
  std::vector<double> centers;
  std::vector<double> densities;  // count / (total samples * width)
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
  std::size_t total = 0;
};

// `bins` equal bins over [quantile(q_lo), quantile(q_hi)].
Histogram density_histogram(std::span<const double> samples,
                            int bins = kDefaultHistogramBins,
                            double q_lo = kDefaultQuantileLo,
                            double q_hi = kDefaultQuantileHi);

double log_amplitude_density(double x, double alpha, double beta);
double inst_frequency_kernel(double x, double zeta, double eta);
double inst_frequency_normalizer(double zeta, double eta, double lo, double hi);

struct AmplitudeFit {
  double alpha = 0.0;
  double beta = 0.0;
  double residual = 0.0;  // RMS density error over the bins
  std::size_t samples = 0;
  int iterations = 0;
  Histogram histogram;
};

struct FrequencyFit {
  double zeta = 0.0;
  double eta = 0.0;
  // K over the histogram support; overflows to infinity for very steep
  // shapes, which density() avoids by working relative to the peak.
  double normalizer = 0.0;
  double reference = 0.0;      // support point closest to zero
  double relative_area = 1.0;  // area of kernel / kernel(reference)
  double residual = 0.0;
  std::size_t samples = 0;
  int iterations = 0;
  Histogram histogram;

  double density(double x) const;
};

// InsufficientSamples below kMinFitSamples, FitDiverged from the solver.
AmplitudeFit fit_log_amplitude_distribution(std::span<const double> samples,
                                            int bins = kDefaultHistogramBins);
FrequencyFit fit_inst_frequency_distribution(std::span<const double> samples,
                                             int bins = kDefaultHistogramBins);

}  // namespace cochlear

#endif  // COCHLEAR_DISTRIBUTIONS_HPP_
