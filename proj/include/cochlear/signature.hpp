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

// The six-parameter natural-sound signature of a channel decomposition:
// modulation exponents of amplitude and phase, and the two fitted
// densities of pooled temporal averages.

#ifndef COCHLEAR_SIGNATURE_HPP_
#define COCHLEAR_SIGNATURE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "cochlear/distributions.hpp"
#include "cochlear/gammatone.hpp"
#include "cochlear/resonator.hpp"
#include "cochlear/spectra.hpp"

namespace cochlear {

struct StatsConfig {
  double fit_f_lo = 0.5;   // Hz
  double fit_f_hi = 50.0;  // Hz
  double silence_threshold = kDefaultSilenceThreshold;
  std::vector<std::size_t> window_lengths{32, 64, 128, 256, 512, 1024, 2048, 4096};
  int histogram_bins = kDefaultHistogramBins;

  // Throws InvalidArgument on inconsistent values.
  void validate() const;
};

struct NaturalSoundSignature {
  double gamma_A = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma_phi = 0.0;
  double zeta = 0.0;
  double eta = 0.0;
  // RMS residuals of the four fits and the data sizes behind them.
  double residual_gamma_A = 0.0;
  double residual_amplitude = 0.0;
  double residual_gamma_phi = 0.0;
  double residual_frequency = 0.0;
  std::size_t bins_gamma_A = 0;
  std::size_t samples_amplitude = 0;
  std::size_t bins_gamma_phi = 0;
  std::size_t samples_frequency = 0;
};

struct SignatureReport {
  NaturalSoundSignature signature;
  PowerSpectrum amplitude_spectrum;  // averaged over channels
  PowerSpectrum phase_spectrum;
  PowerLawFit amplitude_power_law;
  PowerLawFit phase_power_law;
  AmplitudeFit amplitude_fit;
  FrequencyFit frequency_fit;
  std::vector<std::size_t> used_channels;     // 1-based
  std::vector<std::size_t> skipped_channels;  // 1-based
  std::vector<std::string> warnings;
};

// Channels whose envelope is silent or flat are skipped with a warning;
// if every channel is skipped the last such error is rethrown. Clips
// shorter than 1 / fit_f_lo raise InsufficientSamples.
SignatureReport extract_signature(const ChannelDecomposition& decomposition,
                                  const SubwavelengthSpectrum& spectrum,
                                  const StatsConfig& config);

}  // namespace cochlear

#endif  // COCHLEAR_SIGNATURE_HPP_
