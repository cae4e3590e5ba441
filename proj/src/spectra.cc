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

#include "cochlear/spectra.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <numeric>
#include <string>

#include "cochlear/error.hpp"
#include "cochlear/fft.hpp"

namespace cochlear {

const char* to_string(SpectrumSource source) {
  return source == SpectrumSource::kPhase ? "phase" : "amplitude";
}

PowerSpectrum periodogram(std::span<const double> series, double sample_rate,
                          SpectrumSource source) {
  if (!(sample_rate > 0.0)) fail(ErrorCode::kInvalidArgument, "sample rate must be positive");
  const std::size_t n = series.size();
  if (n < kMinSpectrumLength) {
    fail(ErrorCode::kSignalTooShort,
         std::to_string(n) + " samples, need at least " +
             std::to_string(kMinSpectrumLength));
  }
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) /
                      static_cast<double>(n);
  std::vector<double> centered(series.begin(), series.end());
  for (double& v : centered) v -= mean;
  const auto bins = fft::forward_real(centered, n);
  PowerSpectrum out;
  out.source = source;
  const double scale = 1.0 / (static_cast<double>(n) * sample_rate);
  for (std::size_t k = 1; k <= n / 2; ++k) {
    out.frequencies.push_back(static_cast<double>(k) * sample_rate /
                              static_cast<double>(n));
    out.power.push_back(std::norm(bins[k]) * scale);
  }
  return out;
}

PowerSpectrum envelope_power_spectrum(const AnalyticChannel& channel,
                                      SpectrumSource source) {
  const auto& series =
      source == SpectrumSource::kPhase ? channel.phase : channel.amplitude;
  return periodogram(series, channel.sample_rate, source);
}

PowerSpectrum average_spectra(std::span<const PowerSpectrum> spectra) {
  if (spectra.empty()) fail(ErrorCode::kInvalidArgument, "no spectra to average");
  PowerSpectrum out = spectra.front();
  for (std::size_t s = 1; s < spectra.size(); ++s) {
    if (spectra[s].frequencies != out.frequencies) {
      fail(ErrorCode::kGridMismatch,
           "spectrum " + std::to_string(s) + " has a different frequency grid");
    }
    for (std::size_t k = 0; k < out.power.size(); ++k) {
      out.power[k] += spectra[s].power[k];
    }
  }
  const double inv = 1.0 / static_cast<double>(spectra.size());
  for (double& p : out.power) p *= inv;
  return out;
}

PowerLawFit fit_power_law(const PowerSpectrum& spectrum, double f_lo,
                          double f_hi) {
  if (!(f_lo > 0.0) || !(f_hi > f_lo)) {
    fail(ErrorCode::kInvalidArgument, "fit band must satisfy 0 < f_lo < f_hi");
  }
  std::vector<double> x;
  std::vector<double> y;
  std::size_t in_band = 0;
  std::size_t nonpositive = 0;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double f = spectrum.frequencies[k];
    if (f < f_lo || f > f_hi) continue;
    ++in_band;
    const double p = spectrum.power[k];
    if (!(p > 0.0)) {
      ++nonpositive;
      continue;
    }
    x.push_back(std::log10(f));
    y.push_back(std::log10(p));
  }
  if (in_band < kMinFitBins) {
    fail(ErrorCode::kInsufficientBins,
         std::to_string(in_band) + " bins in [" + std::to_string(f_lo) + ", " +
             std::to_string(f_hi) + "] Hz, need " + std::to_string(kMinFitBins));
  }
  if (nonpositive > 0) {
    if (10 * nonpositive >= in_band) {
      fail(ErrorCode::kNonpositivePower,
           std::to_string(nonpositive) + " of " + std::to_string(in_band) +
               " in-band bins are not positive");
    }
    spdlog::warn("power-law fit: dropping {} non-positive bins of {}",
                 nonpositive, in_band);
  }
  if (x.size() < kMinFitBins) {
    fail(ErrorCode::kInsufficientBins, "too few positive bins in fit band");
  }
  const double m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  PowerLawFit fit;
  fit.gamma = -slope;
  fit.intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / m);
  fit.bins = x.size();
  fit.excluded = nonpositive;
  return fit;
}

}  // namespace cochlear
