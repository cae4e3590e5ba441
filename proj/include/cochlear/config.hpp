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

// Pipeline configuration: a JSON document with either an explicit
// resonator geometry or a design target, plus bank, statistics and output
// settings. Unknown keys are rejected. See docs/config.md.

#ifndef COCHLEAR_CONFIG_HPP_
#define COCHLEAR_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cochlear/design.hpp"
#include "cochlear/gammatone.hpp"
#include "cochlear/resonator.hpp"
#include "cochlear/signature.hpp"

namespace cochlear {

struct GeometrySpec {
  std::vector<Eigen::Vector3d> centers;
  std::vector<double> radii;
  MaterialParams material = MaterialParams::air_in_water();
  // Resolved against the config file's directory.
  std::optional<std::filesystem::path> capacitance_file;
};

struct DesignSpec {
  std::size_t count = 22;
  double length = 0.035;  // m
  double f_lo = 0.0;      // Hz
  double f_hi = 0.0;      // Hz
  MaterialParams material = MaterialParams::air_in_water();
  DesignOptions options;
};

struct BankConfig {
  double sample_rate = kDefaultSampleRate;
  double max_kernel_seconds = kDefaultMaxKernelSeconds;
};

struct PipelineConfig {
  std::variant<GeometrySpec, DesignSpec> array;
  std::optional<double> delta;  // overrides the material contrast
  BankConfig bank;
  StatsConfig stats;
  std::string output_dir;

  bool has_design() const { return std::holds_alternative<DesignSpec>(array); }
  const MaterialParams& material() const;
  double effective_delta() const;

  // Canonical form with every default filled in and a fixed key order, so
  // the echo does not depend on how the input was laid out.
  nlohmann::ordered_json echo() const;
};

// Throws SchemaViolation naming the offending field, ConflictingGeometry
// when both `geometry` and `design` are present, IoFailure if unreadable.
PipelineConfig parse_config(const std::filesystem::path& path);
PipelineConfig parse_config_text(const std::string& text,
                                 const std::filesystem::path& base_dir = {});

// Whitespace-separated matrix, one row per line.
Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path);

}  // namespace cochlear

#endif  // COCHLEAR_CONFIG_HPP_
