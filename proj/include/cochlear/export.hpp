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

// Plot-ready CSV and JSON serialization of pipeline results. Numbers are
// written in shortest round-trip form with '.' as decimal separator, so
// identical results give identical bytes.

#ifndef COCHLEAR_EXPORT_HPP_
#define COCHLEAR_EXPORT_HPP_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cochlear/distributions.hpp"
#include "cochlear/gammatone.hpp"
#include "cochlear/resonator.hpp"
#include "cochlear/signature.hpp"
#include "cochlear/spectra.hpp"

namespace cochlear {

std::string format_number(double value);

// Comma-delimited with a header row. Every row must match the header width.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Two-space indented, trailing newline.
void write_json(const std::filesystem::path& path,
                const nlohmann::ordered_json& value);

nlohmann::ordered_json spectrum_json(const SubwavelengthSpectrum& spectrum);
nlohmann::ordered_json geometry_json(const ResonatorArray& array);
nlohmann::ordered_json bank_json(const FilterBank& bank);
nlohmann::ordered_json signature_json(const SignatureReport& report,
                                      const nlohmann::ordered_json& config_echo);

// Mode index, frequency, and the resonator where the mode's eigenvector
// peaks (position and radius), one row per mode.
void write_tonotopic_csv(const std::filesystem::path& path,
                         const ResonatorArray& array,
                         const SubwavelengthSpectrum& spectrum);

// time_s followed by one column per channel, labeled with its path and
// center frequency in Hz.
void write_channels_csv(const std::filesystem::path& path,
                        const ChannelDecomposition& decomposition,
                        const FilterBank& bank);

void write_series_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& value_columns,
                      const std::vector<std::vector<double>>& series,
                      double sample_rate);

void write_kernel_csv(const std::filesystem::path& path,
                      const GammatoneKernel& kernel);

void write_histogram_csv(const std::filesystem::path& path,
                         const Histogram& histogram,
                         const std::function<double(double)>& fitted_density);

void write_power_spectrum_csv(const std::filesystem::path& path,
                              const PowerSpectrum& spectrum,
                              const PowerLawFit& fit);

}  // namespace cochlear

#endif  // COCHLEAR_EXPORT_HPP_
