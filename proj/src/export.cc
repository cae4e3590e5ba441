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

#include "cochlear/export.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "cochlear/error.hpp"

namespace cochlear {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoFailure, "cannot create " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail(ErrorCode::kIoFailure, "cannot write " + path.string());
}

double hz(double omega) { return omega / (2.0 * std::numbers::pi); }

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out = open_output(path);
  std::string line;
  for (std::size_t i = 0; i < header.size(); ++i) {
    line += (i ? "," : "") + header[i];
  }
  out << line << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      fail(ErrorCode::kInvalidArgument, "CSV row width differs from header");
    }
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line += ',';
      line += format_number(row[i]);
    }
    out << line << '\n';
  }
  finish(out, path);
}

void write_json(const std::filesystem::path& path,
                const nlohmann::ordered_json& value) {
  std::ofstream out = open_output(path);
  out << value.dump(2) << '\n';
  finish(out, path);
}

nlohmann::ordered_json spectrum_json(const SubwavelengthSpectrum& spectrum) {
  nlohmann::ordered_json j;
  j["delta"] = spectrum.delta;
  j["degenerate"] = spectrum.degenerate;
  j["modes"] = nlohmann::ordered_json::array();
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    nlohmann::ordered_json m;
    m["n"] = n + 1;
    m["re_omega"] = spectrum.frequencies[n].real();
    m["im_omega"] = spectrum.frequencies[n].imag();
    m["lambda"] = spectrum.eigenvalues[n];
    m["tau"] = spectrum.decay_rates[n];
    m["nu"] = spectrum.modal_weights[n];
    j["modes"].push_back(m);
  }
  return j;
}

nlohmann::ordered_json geometry_json(const ResonatorArray& array) {
  nlohmann::ordered_json j;
  j["centers"] = nlohmann::ordered_json::array();
  for (const auto& c : array.centers()) j["centers"].push_back({c.x(), c.y(), c.z()});
  j["radii"] = array.radii();
  const MaterialParams& m = array.material();
  j["material"] = {{"rho_background", m.rho_background()},
                   {"rho_inclusion", m.rho_inclusion()},
                   {"kappa_background", m.kappa_background()},
                   {"kappa_inclusion", m.kappa_inclusion()}};
  return j;
}

nlohmann::ordered_json bank_json(const FilterBank& bank) {
  nlohmann::ordered_json j;
  j["sample_rate"] = bank.sample_rate;
  j["kernels"] = nlohmann::ordered_json::array();
  for (std::size_t n = 0; n < bank.size(); ++n) {
    const GammatoneKernel& k = bank.kernels[n];
    nlohmann::ordered_json e;
    e["n"] = n + 1;
    e["re_omega"] = k.omega.real();
    e["im_omega"] = k.omega.imag();
    e["gain"] = k.gain;
    e["length_samples"] = k.samples.size();
    j["kernels"].push_back(e);
  }
  return j;
}

nlohmann::ordered_json signature_json(const SignatureReport& report,
                                      const nlohmann::ordered_json& config_echo) {
  const NaturalSoundSignature& s = report.signature;
  nlohmann::ordered_json j;
  j["gamma_A"] = s.gamma_A;
  j["alpha"] = s.alpha;
  j["beta"] = s.beta;
  j["gamma_phi"] = s.gamma_phi;
  j["zeta"] = s.zeta;
  j["eta"] = s.eta;
  j["residuals"] = {{"gamma_A", s.residual_gamma_A},
                    {"amplitude_density", s.residual_amplitude},
                    {"gamma_phi", s.residual_gamma_phi},
                    {"frequency_density", s.residual_frequency}};
  j["sample_counts"] = {{"gamma_A_bins", s.bins_gamma_A},
                        {"amplitude_samples", s.samples_amplitude},
                        {"gamma_phi_bins", s.bins_gamma_phi},
                        {"frequency_samples", s.samples_frequency}};
  j["channels_used"] = report.used_channels;
  j["channels_skipped"] = report.skipped_channels;
  j["warnings"] = report.warnings;
  j["config_echo"] = config_echo;
  return j;
}

void write_tonotopic_csv(const std::filesystem::path& path,
                         const ResonatorArray& array,
                         const SubwavelengthSpectrum& spectrum) {
  std::vector<std::vector<double>> rows;
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    Eigen::Index peak = 0;
    spectrum.eigenvectors.col(static_cast<Eigen::Index>(n)).cwiseAbs().maxCoeff(&peak);
    const auto i = static_cast<std::size_t>(peak);
    rows.push_back({static_cast<double>(n + 1), hz(spectrum.frequencies[n].real()),
                    static_cast<double>(i + 1), array.centers()[i].x(),
                    array.radii()[i]});
  }
  write_csv(path, {"mode", "frequency_hz", "resonator", "position_m", "radius_m"}, rows);
}

void write_series_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& value_columns,
                      const std::vector<std::vector<double>>& series,
                      double sample_rate) {
  if (value_columns.size() != series.size()) {
    fail(ErrorCode::kInvalidArgument, "column labels differ from series count");
  }
  std::size_t length = 0;
  for (const auto& s : series) length = std::max(length, s.size());
  std::ofstream out = open_output(path);
  std::string line = "time_s";
  for (const auto& c : value_columns) line += "," + c;
  out << line << '\n';
  for (std::size_t k = 0; k < length; ++k) {
    line = format_number(static_cast<double>(k) / sample_rate);
    for (const auto& s : series) {
      line += ',';
      line += format_number(k < s.size() ? s[k] : 0.0);
    }
    out << line << '\n';
  }
  finish(out, path);
}

void write_channels_csv(const std::filesystem::path& path,
                        const ChannelDecomposition& decomposition,
                        const FilterBank& bank) {
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < decomposition.size(); ++c) {
    std::string label = "ch";
    const auto& p = decomposition.path_labels[c];
    for (std::size_t i = 0; i < p.size(); ++i) {
      label += (i ? "-" : "") + std::to_string(p[i]);
    }
    // Rounded to 0.1 Hz so labels stay readable.
    const double hz = std::round(bank.kernels[p.back() - 1].center_frequency_hz() * 10.0) / 10.0;
    label += "_" + format_number(hz) + "Hz";
    labels.push_back(label);
  }
  write_series_csv(path, labels, decomposition.channels, decomposition.sample_rate);
}

void write_kernel_csv(const std::filesystem::path& path,
                      const GammatoneKernel& kernel) {
  write_series_csv(path, {"value"}, {kernel.samples}, kernel.sample_rate);
}

void write_histogram_csv(const std::filesystem::path& path,
                         const Histogram& histogram,
                         const std::function<double(double)>& fitted_density) {
  std::vector<std::vector<double>> rows;
  for (std::size_t b = 0; b < histogram.centers.size(); ++b) {
    rows.push_back({histogram.centers[b], histogram.densities[b],
                    fitted_density(histogram.centers[b])});
  }
  write_csv(path, {"bin_center", "density", "fitted_density"}, rows);
}

void write_power_spectrum_csv(const std::filesystem::path& path,
                              const PowerSpectrum& spectrum,
                              const PowerLawFit& fit) {
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const double f = spectrum.frequencies[k];
    rows.push_back({f, spectrum.power[k],
                    std::pow(10.0, fit.intercept - fit.gamma * std::log10(f))});
  }
  write_csv(path, {"frequency_hz", "power", "fitted_power"}, rows);
}

}  // namespace cochlear
