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

// End-to-end stages behind the command-line tool: design/solve, transform,
// signature and batch. Each stage writes its outputs plus a manifest.json
// listing every emitted file with its SHA-256.

#ifndef COCHLEAR_PIPELINE_HPP_
#define COCHLEAR_PIPELINE_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cochlear/config.hpp"
#include "cochlear/gammatone.hpp"
#include "cochlear/resonator.hpp"
#include "cochlear/signature.hpp"
#include "cochlear/wav.hpp"

namespace cochlear {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  // Per-stage wall-clock timings go into the manifest only when set, since
  // they would otherwise break byte-identical reruns.
  bool timings = false;
};

struct CascadeRequest {
  std::vector<std::size_t> path;  // 1-based
  Activation activation = Activation::kIdentity;
};

// Parses "path=3,3" or "3,3". Throws InvalidArgument.
std::vector<std::size_t> parse_cascade_path(const std::string& text);

struct Model {
  ResonatorArray array;
  CapacitanceMatrix capacitance;
  SubwavelengthSpectrum spectrum;
};

// Designs or loads the geometry, builds C and solves the spectrum.
Model build_model(const PipelineConfig& config);

// Reads, downmixes and resamples to the bank rate.
AudioBuffer load_audio(const std::filesystem::path& path, double sample_rate);

void run_design(const PipelineConfig& config, const std::filesystem::path& out_dir,
                const RunOptions& options = {});

void run_transform(const PipelineConfig& config, const std::filesystem::path& input,
                   const std::filesystem::path& out_dir,
                   const std::optional<CascadeRequest>& cascade_request = std::nullopt,
                   const RunOptions& options = {});

SignatureReport run_signature(const PipelineConfig& config,
                              const std::filesystem::path& input,
                              const std::filesystem::path& out_dir,
                              const RunOptions& options = {});

// One signature per *.wav in `in_dir` (sorted by name) under
// out_dir/<stem>/, plus table.csv. Files fail independently; returns the
// exit code of the worst failure, 0 if all succeeded.
int run_batch(const PipelineConfig& config, const std::filesystem::path& in_dir,
              const std::filesystem::path& out_dir, int jobs,
              const RunOptions& options = {});

// 0 success, 1 usage/config, 2 data, 3 numerical.
int exit_code_for(const std::exception& e);

// Reads COCHLEAR_BANK_LOG (error|warn|info|debug; default warn).
void configure_logging();

std::string sha256_file(const std::filesystem::path& path);

}  // namespace cochlear

#endif  // COCHLEAR_PIPELINE_HPP_
