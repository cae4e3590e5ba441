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

#include "cochlear/signature.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <exception>
#include <string>

#include "cochlear/error.hpp"

namespace cochlear {
namespace {

struct ChannelStats {
  bool used = false;
  std::string warning;
  ErrorCode skip_code = ErrorCode::kAllSilent;
  std::exception_ptr failure;
  PowerSpectrum amplitude_spectrum;
  PowerSpectrum phase_spectrum;
  std::vector<double> amplitude_means;
  std::vector<double> frequency_means;
};

std::vector<std::size_t> fitting_windows(const std::vector<std::size_t>& all,
                                         std::size_t length) {
  std::vector<std::size_t> out;
  for (std::size_t w : all) {
    if (w <= length) out.push_back(w);
  }
  return out;
}

ChannelStats channel_stats(const std::vector<double>& series,
                           double center_frequency, double sample_rate,
                           const StatsConfig& config, std::size_t label) {
  ChannelStats out;
  try {
    const AnalyticChannel chan = analytic_signal(
        series, center_frequency, sample_rate, config.silence_threshold);
    const std::vector<double> log_amp = normalize_log_amplitude(chan);
    const std::vector<double> freq = normalize_inst_frequency(chan);
    out.amplitude_spectrum =
        envelope_power_spectrum(chan, SpectrumSource::kAmplitude);
    out.phase_spectrum = envelope_power_spectrum(chan, SpectrumSource::kPhase);
    out.amplitude_means = windowed_means(
        log_amp, fitting_windows(config.window_lengths, log_amp.size()));
    out.frequency_means =
        windowed_means(freq, fitting_windows(config.window_lengths, freq.size()));
    out.used = true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kAllSilent || e.code() == ErrorCode::kZeroVariance) {
      out.skip_code = e.code();
      out.warning = "channel " + std::to_string(label) + " skipped: " + e.what();
    } else {
      out.failure = std::current_exception();
    }
  } catch (...) {
    out.failure = std::current_exception();
  }
  return out;
}

}  // namespace

void StatsConfig::validate() const {
  if (!(fit_f_lo > 0.0) || !(fit_f_hi > fit_f_lo)) {
    fail(ErrorCode::kInvalidArgument, "stats fit band must satisfy 0 < lo < hi");
  }
  if (!(silence_threshold >= 0.0) || !(silence_threshold < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "silence threshold must lie in [0, 1)");
  }
  if (window_lengths.empty()) {
    fail(ErrorCode::kInvalidArgument, "at least one averaging window is required");
  }
  for (std::size_t w : window_lengths) {
    if (w < 2) fail(ErrorCode::kInvalidArgument, "averaging windows must be >= 2 samples");
  }
  if (histogram_bins < 4) {
    fail(ErrorCode::kInvalidArgument, "histogram needs at least 4 bins");
  }
}

SignatureReport extract_signature(const ChannelDecomposition& decomposition,
                                  const SubwavelengthSpectrum& spectrum,
                                  const StatsConfig& config) {
  config.validate();
  if (decomposition.size() == 0) {
    fail(ErrorCode::kInvalidArgument, "empty channel decomposition");
  }
  if (decomposition.size() != spectrum.size()) {
    fail(ErrorCode::kDimensionMismatch,
         std::to_string(decomposition.size()) + " channels for " +
             std::to_string(spectrum.size()) + " modes");
  }
  const double rate = decomposition.sample_rate;
  if (config.fit_f_hi >= 0.5 * rate) {
    fail(ErrorCode::kInvalidArgument, "fit band exceeds the envelope Nyquist rate");
  }
  const double duration = static_cast<double>(decomposition.length()) / rate;
  if (duration < 1.0 / config.fit_f_lo) {
    fail(ErrorCode::kInsufficientSamples,
         "clip lasts " + std::to_string(duration) +
             " s; resolving the modulation band down to " +
             std::to_string(config.fit_f_lo) + " Hz needs at least " +
             std::to_string(1.0 / config.fit_f_lo) + " s");
  }

  const auto count = static_cast<std::ptrdiff_t>(decomposition.size());
  std::vector<ChannelStats> stats(decomposition.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    const auto n = static_cast<std::size_t>(c);
    stats[n] = channel_stats(decomposition.channels[n],
                             spectrum.frequencies[n].real(), rate, config, n + 1);
  }

  SignatureReport report;
  std::vector<PowerSpectrum> amp_spectra;
  std::vector<PowerSpectrum> phase_spectra;
  std::vector<double> amp_pool;
  std::vector<double> freq_pool;
  ErrorCode last_skip = ErrorCode::kAllSilent;
  for (std::size_t n = 0; n < stats.size(); ++n) {
    ChannelStats& s = stats[n];
    if (s.failure) std::rethrow_exception(s.failure);
    if (!s.used) {
      report.skipped_channels.push_back(n + 1);
      report.warnings.push_back(s.warning);
      spdlog::warn("{}", s.warning);
      last_skip = s.skip_code;
      continue;
    }
    report.used_channels.push_back(n + 1);
    amp_spectra.push_back(std::move(s.amplitude_spectrum));
    phase_spectra.push_back(std::move(s.phase_spectrum));
    amp_pool.insert(amp_pool.end(), s.amplitude_means.begin(), s.amplitude_means.end());
    freq_pool.insert(freq_pool.end(), s.frequency_means.begin(), s.frequency_means.end());
  }
  if (report.used_channels.empty()) {
    fail(last_skip, "no channel has a usable envelope");
  }

  report.amplitude_spectrum = average_spectra(amp_spectra);
  report.phase_spectrum = average_spectra(phase_spectra);
  report.amplitude_power_law =
      fit_power_law(report.amplitude_spectrum, config.fit_f_lo, config.fit_f_hi);
  report.phase_power_law =
      fit_power_law(report.phase_spectrum, config.fit_f_lo, config.fit_f_hi);
  report.amplitude_fit = fit_log_amplitude_distribution(amp_pool, config.histogram_bins);
  report.frequency_fit = fit_inst_frequency_distribution(freq_pool, config.histogram_bins);

  NaturalSoundSignature& sig = report.signature;
  sig.gamma_A = report.amplitude_power_law.gamma;
  sig.gamma_phi = report.phase_power_law.gamma;
  sig.alpha = report.amplitude_fit.alpha;
  sig.beta = report.amplitude_fit.beta;
  sig.zeta = report.frequency_fit.zeta;
  sig.eta = report.frequency_fit.eta;
  sig.residual_gamma_A = report.amplitude_power_law.residual;
  sig.residual_gamma_phi = report.phase_power_law.residual;
  sig.residual_amplitude = report.amplitude_fit.residual;
  sig.residual_frequency = report.frequency_fit.residual;
  sig.bins_gamma_A = report.amplitude_power_law.bins;
  sig.bins_gamma_phi = report.phase_power_law.bins;
  sig.samples_amplitude = report.amplitude_fit.samples;
  sig.samples_frequency = report.frequency_fit.samples;
  return report;
}

}  // namespace cochlear
