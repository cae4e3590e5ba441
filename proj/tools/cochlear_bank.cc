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

// Command-line front end: design, transform, signature and batch.
// Flags override config fields, which override built-in defaults.

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "cochlear/config.hpp"
#include "cochlear/error.hpp"
#include "cochlear/pipeline.hpp"

namespace {

struct Flags {
  std::string config;
  std::string in;
  std::string in_dir;
  std::string out;
  std::string cascade;
  std::string activation = "identity";
  int jobs = 1;
  double sample_rate = 0.0;
  bool timings = false;
};

cochlear::PipelineConfig load(const Flags& flags) {
  cochlear::PipelineConfig cfg = cochlear::parse_config(flags.config);
  if (flags.sample_rate > 0.0) cfg.bank.sample_rate = flags.sample_rate;
  if (!flags.out.empty()) cfg.output_dir = flags.out;
  if (cfg.output_dir.empty()) {
    cochlear::fail(cochlear::ErrorCode::kInvalidArgument,
                   "no output directory: pass --out or set output_dir");
  }
  if (cfg.stats.fit_f_hi >= 0.5 * cfg.bank.sample_rate) {
    cochlear::fail(cochlear::ErrorCode::kSchemaViolation,
                   "stats.fit_band: must lie below half the bank sample rate");
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  cochlear::configure_logging();
  CLI::App app{"Graded resonator filter bank and natural-sound statistics"};
  app.set_version_flag("--version", cochlear::kVersion);
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Pipeline config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out, "Output directory (overrides output_dir)");
    sub->add_option("--sample-rate", flags.sample_rate,
                    "Bank sample rate in Hz (overrides bank.sample_rate)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--timings", flags.timings, "Record stage timings in the manifest");
  };

  CLI::App* design = app.add_subcommand("design", "Design the array and solve its spectrum");
  add_common(design);

  CLI::App* transform = app.add_subcommand("transform", "Apply the filter bank to a WAV file");
  add_common(transform);
  transform->add_option("--in", flags.in, "Input WAV")->required();
  transform->add_option("--cascade", flags.cascade, "Cascade path, e.g. path=3,3");
  transform->add_option("--activation", flags.activation, "identity|modulus|rectifier")
      ->check(CLI::IsMember({"identity", "modulus", "rectifier"}));

  CLI::App* signature =
      app.add_subcommand("signature", "Extract the natural-sound signature of a WAV file");
  add_common(signature);
  signature->add_option("--in", flags.in, "Input WAV")->required();

  CLI::App* batch = app.add_subcommand("batch", "Signatures for every WAV in a directory");
  add_common(batch);
  batch->add_option("--in-dir", flags.in_dir, "Directory of WAV files")->required();
  batch->add_option("--jobs", flags.jobs, "Files processed in parallel")
      ->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const cochlear::RunOptions options{.timings = flags.timings};
    const cochlear::PipelineConfig cfg = load(flags);
    const std::filesystem::path out = cfg.output_dir;
    if (design->parsed()) {
      cochlear::run_design(cfg, out, options);
    } else if (transform->parsed()) {
      std::optional<cochlear::CascadeRequest> request;
      if (!flags.cascade.empty()) {
        request = cochlear::CascadeRequest{cochlear::parse_cascade_path(flags.cascade),
                                           cochlear::parse_activation(flags.activation)};
      }
      cochlear::run_transform(cfg, flags.in, out, request, options);
    } else if (signature->parsed()) {
      const auto report = cochlear::run_signature(cfg, flags.in, out, options);
      for (const auto& w : report.warnings) spdlog::warn("{}", w);
    } else if (batch->parsed()) {
      return cochlear::run_batch(cfg, flags.in_dir, out, flags.jobs, options);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cochlear::exit_code_for(e);
  }
  return 0;
}
