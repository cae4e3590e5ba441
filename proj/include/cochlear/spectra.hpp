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

// Modulation power spectra of envelope and phase series and 1/f^gamma fits.

#ifndef COCHLEAR_SPECTRA_HPP_
#define COCHLEAR_SPECTRA_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "cochlear/analytic.hpp"

namespace cochlear {

inline constexpr std::size_t kMinSpectrumLength = 256;
inline constexpr std::size_t kMinFitBins = 8;

enum class SpectrumSource { kAmplitude, kPhase };

const char* to_string(SpectrumSource source);

struct PowerSpectrum {
  std::vector<double> frequencies;  // Hz, DC excluded, strictly increasing
  std::vector<double> power;
  SpectrumSource source = SpectrumSource::kAmplitude;

  std::size_t size() const { return frequencies.size(); }
};

// Boxcar-taper periodogram of the mean-removed series,
// P(f_k) = |X_k|^2 / (n * sample_rate) for k = 1..n/2.
PowerSpectrum periodogram(std::span<const double> series, double sample_rate,
                          SpectrumSource source);

// Periodogram of A_n (kAmplitude) or phi_n (kPhase). SignalTooShort below
// kMinSpectrumLength samples.
PowerSpectrum envelope_power_spectrum(const AnalyticChannel& channel,
                                      SpectrumSource source);

// Pointwise mean; GridMismatch unless all grids are identical.
PowerSpectrum average_spectra(std::span<const PowerSpectrum> spectra);

struct PowerLawFit {
  double gamma = 0.0;      // negative log-log slope
  double intercept = 0.0;  // log10 power at f = 1 Hz
  double residual = 0.0;   // RMS in log10 power
  std::size_t bins = 0;    // bins used
  std::size_t excluded = 0;  // non-positive in-band bins dropped
};

// OLS of log10 P on log10 f over [f_lo, f_hi]. Non-positive bins are
// dropped when they are under 10% of the band, otherwise NonpositivePower.
// InsufficientBins below kMinFitBins usable bins.
PowerLawFit fit_power_law(const PowerSpectrum& spectrum, double f_lo,
                          double f_hi);

}  // namespace cochlear

#endif  // COCHLEAR_SPECTRA_HPP_
