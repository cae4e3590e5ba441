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

#include "cochlear/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

#include "cochlear/error.hpp"
#include "cochlear/least_squares.hpp"

namespace cochlear {
namespace {

void require_samples(std::size_t n) {
  if (n < kMinFitSamples) {
    fail(ErrorCode::kInsufficientSamples,
         std::to_string(n) + " samples, need at least " +
             std::to_string(kMinFitSamples));
  }
}

std::vector<double> valid_values(const AnalyticChannel& channel,
                                 const std::vector<double>& series) {
  std::vector<double> out;
  out.reserve(series.size());
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (channel.valid[k]) out.push_back(series[k]);
  }
  if (out.empty()) fail(ErrorCode::kAllSilent, "every sample is below the silence threshold");
  return out;
}

double rms(const Eigen::VectorXd& r) {
  return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

// Point of [lo, hi] closest to zero, where the kernel peaks.
double peak_location(double lo, double hi) {
  return std::clamp(0.0, lo, hi);
}

// Kernel divided by its value at `ref`; finite for any eta.
double relative_kernel(double x, double zeta, double eta, double ref) {
  const double z2 = zeta * zeta;
  return std::pow((z2 + x * x) / (z2 + ref * ref), -0.5 * eta);
}

// Composite Gauss-Legendre on a mesh graded geometrically away from the
// peak, so the rule resolves both Cauchy-like tails and very steep shapes
// with a fixed number of evaluations.
double integrate_from_peak(double zeta, double eta, double ref, double end) {
  constexpr int kLevels = 48;
  const double span = end - ref;
  if (span == 0.0) return 0.0;
  auto f = [&](double x) { return relative_kernel(x, zeta, eta, ref); };
  double total = 0.0;
  double inner = 0.0;
  for (int k = kLevels; k >= 0; --k) {
    const double outer = std::ldexp(1.0, -k);
    total += boost::math::quadrature::gauss<double, 20>::integrate(
        f, ref + inner * span, ref + outer * span);
    inner = outer;
  }
  return std::abs(total);
}

double relative_kernel_area(double zeta, double eta, double lo, double hi) {
  const double ref = peak_location(lo, hi);
  return integrate_from_peak(zeta, eta, ref, hi) +
         integrate_from_peak(zeta, eta, ref, lo);
}

}  // namespace

std::vector<double> standardize(std::span<const double> x) {
  if (x.empty()) fail(ErrorCode::kAllSilent, "no samples to normalize");
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double var = 0.0;
  double scale = 0.0;
  for (double v : x) {
    var += (v - mean) * (v - mean);
    scale = std::max(scale, std::abs(v));
  }
  var /= n;
  const double sd = std::sqrt(var);
  if (!(sd > 1e-12 * std::max(1.0, scale))) {
    fail(ErrorCode::kZeroVariance, "series has no spread to normalize");
  }
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - mean) / sd;
  return out;
}

std::vector<double> normalize_log_amplitude(const AnalyticChannel& channel) {
  std::vector<double> logs = valid_values(channel, channel.amplitude);
  for (double& v : logs) v = std::log10(v);
  return standardize(logs);
}

std::vector<double> normalize_inst_frequency(const AnalyticChannel& channel) {
  std::vector<double> out =
      standardize(valid_values(channel, channel.inst_frequency));
  for (double& v : out) v = std::abs(v);
  return out;
}

std::vector<double> windowed_means(std::span<const double> series,
                                   std::span<const std::size_t> window_lengths) {
  std::vector<double> out;
  for (std::size_t w : window_lengths) {
    if (w < 2) fail(ErrorCode::kInvalidArgument, "window length must be >= 2");
    if (w > series.size()) {
      fail(ErrorCode::kWindowTooLong,
           "window of " + std::to_string(w) + " samples exceeds series of " +
               std::to_string(series.size()));
    }
    for (std::size_t start = 0; start + w <= series.size(); start += w) {
      const auto first = series.begin() + static_cast<std::ptrdiff_t>(start);
      out.push_back(std::accumulate(first, first + static_cast<std::ptrdiff_t>(w), 0.0) /
                    static_cast<double>(w));
    }
  }
  return out;
}

double quantile(std::vector<double> x, double q) {
  if (x.empty()) fail(ErrorCode::kInsufficientSamples, "quantile of empty sample");
  std::sort(x.begin(), x.end());
  const double pos = q * static_cast<double>(x.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i + 1 >= x.size()) return x.back();
  const double u = pos - static_cast<double>(i);
  return x[i] + u * (x[i + 1] - x[i]);
}

Histogram density_histogram(std::span<const double> samples, int bins,
                            double q_lo, double q_hi) {
  if (bins < 1) fail(ErrorCode::kInvalidArgument, "histogram needs at least one bin");
  if (samples.empty()) fail(ErrorCode::kInsufficientSamples, "no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  auto q = [&](double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= sorted.size()) return sorted.back();
    return sorted[i] + (pos - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
  };
  Histogram h;
  h.lo = q(q_lo);
  h.hi = q(q_hi);
  if (!(h.hi > h.lo)) fail(ErrorCode::kZeroVariance, "samples have no spread");
  h.total = samples.size();
  h.width = (h.hi - h.lo) / bins;
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double x : samples) {
    if (x < h.lo || x > h.hi) continue;
    auto b = static_cast<std::size_t>((x - h.lo) / h.width);
    counts[std::min(b, counts.size() - 1)]++;
  }
  h.centers.resize(counts.size());
  h.densities.resize(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b) {
    h.centers[b] = h.lo + (static_cast<double>(b) + 0.5) * h.width;
    h.densities[b] = static_cast<double>(counts[b]) /
                     (static_cast<double>(h.total) * h.width);
  }
  return h;
}

double log_amplitude_density(double x, double alpha, double beta) {
  const double y = beta * x - alpha;
  return beta * std::exp(y - std::exp(y));
}

double inst_frequency_kernel(double x, double zeta, double eta) {
  return std::pow(zeta * zeta + x * x, -0.5 * eta);
}

double inst_frequency_normalizer(double zeta, double eta, double lo, double hi) {
  const double ref = peak_location(lo, hi);
  const double log_k = -std::log(relative_kernel_area(zeta, eta, lo, hi)) +
                       0.5 * eta * std::log(zeta * zeta + ref * ref);
  return std::exp(log_k);
}

double FrequencyFit::density(double x) const {
  return relative_kernel(x, zeta, eta, reference) / relative_area;
}

AmplitudeFit fit_log_amplitude_distribution(std::span<const double> samples,
                                            int bins) {
  require_samples(samples.size());
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double var = 0.0;
  for (double v : samples) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / n);
  if (!(sd > 0.0)) fail(ErrorCode::kZeroVariance, "samples have no spread");

  AmplitudeFit fit;
  fit.samples = samples.size();
  fit.histogram = density_histogram(samples, bins);
  const Histogram& h = fit.histogram;

  // Gumbel-family moments: sd = pi / (sqrt(6) beta), mean = (alpha - gamma_E) / beta.
  const double beta0 = std::numbers::pi / (std::sqrt(6.0) * sd);
  const double alpha0 = beta0 * mean + std::numbers::egamma;

  auto residuals = [&h](const Eigen::VectorXd& p) {
    const double alpha = p[0];
    const double beta = std::exp(p[1]);
    Eigen::VectorXd r(static_cast<Eigen::Index>(h.centers.size()));
    for (std::size_t b = 0; b < h.centers.size(); ++b) {
      r[static_cast<Eigen::Index>(b)] =
          log_amplitude_density(h.centers[b], alpha, beta) - h.densities[b];
    }
    return r;
  };
  const LeastSquaresResult ls =
      damped_gauss_newton(residuals, Eigen::Vector2d(alpha0, std::log(beta0)));
  fit.alpha = ls.params[0];
  fit.beta = std::exp(ls.params[1]);
  fit.residual = rms(residuals(ls.params));
  fit.iterations = ls.iterations;
  return fit;
}

FrequencyFit fit_inst_frequency_distribution(std::span<const double> samples,
                                             int bins) {
  require_samples(samples.size());
  FrequencyFit fit;
  fit.samples = samples.size();
  fit.histogram = density_histogram(samples, bins);
  const Histogram& h = fit.histogram;

  std::vector<double> magnitudes(samples.begin(), samples.end());
  for (double& v : magnitudes) v = std::abs(v);
  double zeta0 = quantile(std::move(magnitudes), 0.5);
  if (!(zeta0 > 0.0)) zeta0 = h.width;
  const double eta0 = 3.0;

  auto unpack = [](const Eigen::VectorXd& p) {
    return std::pair{std::exp(p[0]), 1.0 + std::exp(p[1])};
  };
  // Evaluated relative to the kernel's largest value on the support, so
  // steep trial shapes neither overflow nor underflow the normalizer.
  const double ref = peak_location(h.lo, h.hi);
  auto residuals = [&h, &unpack, ref](const Eigen::VectorXd& p) {
    const auto [zeta, eta] = unpack(p);
    const double area = relative_kernel_area(zeta, eta, h.lo, h.hi);
    Eigen::VectorXd r(static_cast<Eigen::Index>(h.centers.size()));
    for (std::size_t b = 0; b < h.centers.size(); ++b) {
      r[static_cast<Eigen::Index>(b)] =
          relative_kernel(h.centers[b], zeta, eta, ref) / area - h.densities[b];
    }
    return r;
  };
  const LeastSquaresResult ls = damped_gauss_newton(
      residuals, Eigen::Vector2d(std::log(zeta0), std::log(eta0 - 1.0)));
  std::tie(fit.zeta, fit.eta) = unpack(ls.params);
  fit.reference = ref;
  fit.relative_area = relative_kernel_area(fit.zeta, fit.eta, h.lo, h.hi);
  fit.normalizer = inst_frequency_normalizer(fit.zeta, fit.eta, h.lo, h.hi);
  fit.residual = rms(residuals(ls.params));
  fit.iterations = ls.iterations;
  return fit;
}

}  // namespace cochlear
