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

#include "cochlear/pipeline.hpp"

#include <openssl/evp.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "cochlear/design.hpp"
#include "cochlear/error.hpp"
#include "cochlear/export.hpp"

namespace fs = std::filesystem;

namespace cochlear {
namespace {

using Clock = std::chrono::steady_clock;

class Manifest {
 public:
  Manifest(const PipelineConfig& config, std::string command, bool timings)
      : config_echo_(config.echo()), command_(std::move(command)), timings_(timings) {}

  void add_input(const fs::path& path) { inputs_.push_back(path); }

  template <typename F>
  auto stage(const std::string& name, F&& f) {
    const auto start = Clock::now();
    struct Record {
      Manifest* m;
      std::string name;
      Clock::time_point start;
      ~Record() {
        m->stages_.emplace_back(
            name, std::chrono::duration<double>(Clock::now() - start).count());
      }
    } record{this, name, start};
    return f();
  }

  // Hashes everything under out_dir except the manifest itself.
  void write(const fs::path& out_dir) const {
    nlohmann::ordered_json j;
    j["tool"] = "cochlear_bank";
    j["command"] = command_;
    j["modules"] = {{"resonator_core", kVersion}, {"gammatone_bank", kVersion},
                    {"natural_stats", kVersion}, {"signal_io", kVersion},
                    {"cli_pipeline", kVersion}};
    j["config"] = config_echo_;
    j["inputs"] = nlohmann::ordered_json::array();
    for (const auto& in : inputs_) {
      j["inputs"].push_back({{"path", in.generic_string()}, {"sha256", sha256_file(in)}});
    }
    if (timings_) {
      nlohmann::ordered_json t = nlohmann::ordered_json::object();
      for (const auto& [name, seconds] : stages_) t[name] = seconds;
      j["timings_s"] = t;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(out_dir)) {
      if (!entry.is_regular_file()) continue;
      const fs::path rel = fs::relative(entry.path(), out_dir);
      if (rel == "manifest.json") continue;
      files.push_back(rel);
    }
    std::sort(files.begin(), files.end());
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& rel : files) {
      j["outputs"].push_back({{"file", rel.generic_string()},
                              {"bytes", fs::file_size(out_dir / rel)},
                              {"sha256", sha256_file(out_dir / rel)}});
    }
    write_json(out_dir / "manifest.json", j);
  }

 private:
  nlohmann::ordered_json config_echo_;
  std::string command_;
  bool timings_;
  std::vector<fs::path> inputs_;
  std::vector<std::pair<std::string, double>> stages_;
};

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIoFailure, "cannot create " + dir.string() + ": " + ec.message());
}

std::string two_digits(std::size_t n) {
  return (n < 10 ? "0" : "") + std::to_string(n);
}

void write_signature_outputs(const SignatureReport& report,
                             const PipelineConfig& config, const fs::path& out_dir) {
  write_json(out_dir / "signature.json", signature_json(report, config.echo()));
  const AmplitudeFit& a = report.amplitude_fit;
  write_histogram_csv(out_dir / "amplitude_histogram.csv", a.histogram,
                      [&](double x) { return log_amplitude_density(x, a.alpha, a.beta); });
  const FrequencyFit& f = report.frequency_fit;
  write_histogram_csv(out_dir / "frequency_histogram.csv", f.histogram,
                      [&](double x) { return f.density(x); });
  write_power_spectrum_csv(out_dir / "amplitude_spectrum.csv",
                           report.amplitude_spectrum, report.amplitude_power_law);
  write_power_spectrum_csv(out_dir / "phase_spectrum.csv", report.phase_spectrum,
                           report.phase_power_law);
}

SignatureReport signature_into(const PipelineConfig& config, const fs::path& input,
                               const fs::path& out_dir, Manifest& manifest) {
  prepare_dir(out_dir);
  manifest.add_input(input);
  const Model model = manifest.stage("model", [&] { return build_model(config); });
  const FilterBank bank = manifest.stage("bank", [&] {
    return build_filter_bank(model.spectrum, config.bank.sample_rate,
                             config.bank.max_kernel_seconds);
  });
  const AudioBuffer audio =
      manifest.stage("ingest", [&] { return load_audio(input, config.bank.sample_rate); });
  const ChannelDecomposition decomposition = manifest.stage(
      "transform", [&] { return transform(bank, audio.samples, audio.sample_rate); });
  SignatureReport report = manifest.stage("statistics", [&] {
    return extract_signature(decomposition, model.spectrum, config.stats);
  });
  write_signature_outputs(report, config, out_dir);
  return report;
}

}  // namespace

std::vector<std::size_t> parse_cascade_path(const std::string& text) {
  std::string body = text;
  if (body.rfind("path=", 0) == 0) body = body.substr(5);
  std::vector<std::size_t> path;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 1) {
      fail(ErrorCode::kInvalidArgument, "bad cascade path entry '" + item + "'");
    }
    path.push_back(static_cast<std::size_t>(v));
  }
  if (path.empty()) fail(ErrorCode::kInvalidArgument, "empty cascade path");
  return path;
}

Model build_model(const PipelineConfig& config) {
  const double delta = config.effective_delta();
  std::optional<ResonatorArray> array;
  std::optional<CapacitanceMatrix> cap;
  if (const auto* d = std::get_if<DesignSpec>(&config.array)) {
    array.emplace(design_graded_array(d->count, d->length, d->f_lo, d->f_hi,
                                      d->material, delta, d->options));
    cap.emplace(build_capacitance_dilute(*array));
  } else {
    const auto& g = std::get<GeometrySpec>(config.array);
    array.emplace(g.centers, g.radii, g.material);
    cap.emplace(g.capacitance_file
                    ? load_capacitance(read_matrix_file(*g.capacitance_file), *array)
                    : build_capacitance_dilute(*array));
  }
  SubwavelengthSpectrum spectrum = solve_spectrum(*cap, *array, delta);
  return Model{std::move(*array), std::move(*cap), std::move(spectrum)};
}

AudioBuffer load_audio(const fs::path& path, double sample_rate) {
  AudioBuffer raw = read_wav(path);
  if (raw.sample_rate != sample_rate) {
    spdlog::info("resampling {} from {} Hz to {} Hz", path.string(), raw.sample_rate,
                 sample_rate);
    return resample(raw, sample_rate);
  }
  return raw;
}

void run_design(const PipelineConfig& config, const fs::path& out_dir,
                const RunOptions& options) {
  prepare_dir(out_dir);
  Manifest manifest(config, "design", options.timings);
  const Model model = manifest.stage("model", [&] { return build_model(config); });
  write_json(out_dir / "geometry.json", geometry_json(model.array));
  write_json(out_dir / "spectrum.json", spectrum_json(model.spectrum));
  write_tonotopic_csv(out_dir / "tonotopic.csv", model.array, model.spectrum);
  manifest.write(out_dir);
}

void run_transform(const PipelineConfig& config, const fs::path& input,
                   const fs::path& out_dir,
                   const std::optional<CascadeRequest>& cascade_request,
                   const RunOptions& options) {
  prepare_dir(out_dir);
  Manifest manifest(config, "transform", options.timings);
  manifest.add_input(input);
  const Model model = manifest.stage("model", [&] { return build_model(config); });
  const FilterBank bank = manifest.stage("bank", [&] {
    return build_filter_bank(model.spectrum, config.bank.sample_rate,
                             config.bank.max_kernel_seconds);
  });
  if (cascade_request) {
    for (std::size_t idx : cascade_request->path) {
      if (idx < 1 || idx > bank.size()) {
        fail(ErrorCode::kInvalidPathIndex,
             "path index " + std::to_string(idx) + " outside 1.." +
                 std::to_string(bank.size()));
      }
    }
  }
  const AudioBuffer audio =
      manifest.stage("ingest", [&] { return load_audio(input, config.bank.sample_rate); });
  const ChannelDecomposition decomposition = manifest.stage(
      "transform", [&] { return transform(bank, audio.samples, audio.sample_rate); });

  write_channels_csv(out_dir / "channels.csv", decomposition, bank);
  write_json(out_dir / "bank.json", bank_json(bank));
  for (std::size_t n = 0; n < bank.size(); ++n) {
    write_kernel_csv(out_dir / "kernels" / ("kernel_" + two_digits(n + 1) + ".csv"),
                     bank.kernels[n]);
  }

  if (cascade_request) {
    const auto& path = cascade_request->path;
    const std::vector<double> out = manifest.stage("cascade", [&] {
      return cascade(bank, audio.samples, audio.sample_rate, path,
                     cascade_request->activation);
    });
    std::string label = "cascade_";
    for (std::size_t i = 0; i < path.size(); ++i) {
      label += (i ? "-" : "") + std::to_string(path[i]);
    }
    write_series_csv(out_dir / "cascade.csv", {label}, {out}, audio.sample_rate);

    const bool same_channel = std::all_of(path.begin(), path.end(),
                                          [&](std::size_t i) { return i == path.front(); });
    if (same_channel && cascade_request->activation == Activation::kIdentity) {
      const GammatoneKernel& k = bank.kernels[path.front() - 1];
      const auto depth = static_cast<int>(path.size());
      const std::vector<double> closed = self_cascade_closed_form(
          k.omega, k.gain, depth, bank.sample_rate, audio.samples.size());
      write_series_csv(out_dir / "cascade_closed_form.csv", {"unit_impulse_response"},
                       {closed}, bank.sample_rate);
      nlohmann::ordered_json terms = nlohmann::ordered_json::array();
      const std::vector<double> b = self_cascade_coefficients(depth, k.omega.real());
      for (int m = 1; m <= depth; ++m) {
        terms.push_back({{"order", m},
                         {"phase", m * std::numbers::pi / 2},
                         {"coefficient", b[static_cast<std::size_t>(m - 1)] *
                                             std::pow(k.gain, depth)}});
      }
      write_json(out_dir / "cascade_closed_form.json",
                 nlohmann::ordered_json{{"channel", path.front()},
                                        {"depth", depth},
                                        {"re_omega", k.omega.real()},
                                        {"im_omega", k.omega.imag()},
                                        {"terms", terms}});
    }
  }
  manifest.write(out_dir);
}

SignatureReport run_signature(const PipelineConfig& config, const fs::path& input,
                              const fs::path& out_dir, const RunOptions& options) {
  Manifest manifest(config, "signature", options.timings);
  SignatureReport report = signature_into(config, input, out_dir, manifest);
  manifest.write(out_dir);
  return report;
}

int run_batch(const PipelineConfig& config, const fs::path& in_dir,
              const fs::path& out_dir, int jobs, const RunOptions& options) {
  if (!fs::is_directory(in_dir)) {
    fail(ErrorCode::kIoFailure, "not a directory: " + in_dir.string());
  }
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(in_dir)) {
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (entry.is_regular_file() && ext == ".wav") inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());
  if (inputs.empty()) fail(ErrorCode::kInsufficientSamples, "no .wav files in " + in_dir.string());
  prepare_dir(out_dir);

  struct Outcome {
    std::optional<NaturalSoundSignature> signature;
    std::string error;
    int code = 0;
  };
  std::vector<Outcome> outcomes(inputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      Manifest manifest(config, "signature", options.timings);
      const fs::path dir = out_dir / inputs[i].stem();
      try {
        outcomes[i].signature =
            signature_into(config, inputs[i], dir, manifest).signature;
        manifest.write(dir);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
        outcomes[i].code = exit_code_for(e);
        spdlog::error("{}: {}", inputs[i].string(), e.what());
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(workers, inputs.size()); ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) t.join();

  std::ofstream table(out_dir / "table.csv", std::ios::binary | std::ios::trunc);
  if (!table) fail(ErrorCode::kIoFailure, "cannot create table.csv");
  table << "file,gamma_A,alpha,beta,gamma_phi,zeta,eta,status\n";
  int worst = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Outcome& o = outcomes[i];
    table << inputs[i].filename().string();
    if (o.signature) {
      const NaturalSoundSignature& s = *o.signature;
      for (double v : {s.gamma_A, s.alpha, s.beta, s.gamma_phi, s.zeta, s.eta}) {
        table << ',' << format_number(v);
      }
      table << ",ok\n";
    } else {
      std::string msg = o.error;
      std::replace(msg.begin(), msg.end(), '"', '\'');
      table << ",,,,,,,\"" << msg << "\"\n";
      worst = std::max(worst, o.code);
    }
  }
  table.close();
  if (!table) fail(ErrorCode::kIoFailure, "cannot write table.csv");

  Manifest manifest(config, "batch", options.timings);
  for (const auto& in : inputs) manifest.add_input(in);
  manifest.write(out_dir);
  return worst;
}

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return static_cast<int>(category(err->code()));
  }
  if (dynamic_cast<const fs::filesystem_error*>(&e) != nullptr) return 2;
  return 3;
}

void configure_logging() {
  auto logger = spdlog::get("cochlear_bank");
  if (!logger) logger = spdlog::stderr_color_mt("cochlear_bank");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("COCHLEAR_BANK_LOG")) {
    const std::string v = env;
    if (v == "error") level = spdlog::level::err;
    else if (v == "warn") level = spdlog::level::warn;
    else if (v == "info") level = spdlog::level::info;
    else if (v == "debug") level = spdlog::level::debug;
    else spdlog::warn("COCHLEAR_BANK_LOG='{}' not recognized, using warn", v);
  }
  spdlog::set_level(level);
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kIoFailure, "SHA-256 unavailable");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const std::streamsize got = in.gcount();
    if (got > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(got));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

}  // namespace cochlear
