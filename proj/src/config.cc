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

#include "cochlear/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cochlear/error.hpp"

namespace cochlear {
namespace {

using Json = nlohmann::json;

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  fail(ErrorCode::kSchemaViolation, path + ": " + what);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) schema(path.empty() ? "<root>" : path, "expected an object");
}

void reject_unknown(const Json& j, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) schema(join(path, key), "unknown key");
  }
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(path, "must be finite");
  return v;
}

double positive(const Json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) schema(path, "must be positive");
  return v;
}

std::size_t count_value(const Json& j, const std::string& path, std::size_t min) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < static_cast<long long>(min)) {
    schema(path, "must be at least " + std::to_string(min));
  }
  return static_cast<std::size_t>(v);
}

std::pair<double, double> band(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema(path, "expected [low, high]");
  const double lo = positive(j[0], path + "[0]");
  const double hi = positive(j[1], path + "[1]");
  return {lo, hi};
}

MaterialParams material(const Json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"rho_background", "rho_inclusion", "kappa_background", "kappa_inclusion"});
  const MaterialParams defaults = MaterialParams::air_in_water();
  auto field = [&](const char* key, double fallback) {
    return j.contains(key) ? positive(j[key], join(path, key)) : fallback;
  };
  const double rb = field("rho_background", defaults.rho_background());
  const double ri = field("rho_inclusion", defaults.rho_inclusion());
  const double kb = field("kappa_background", defaults.kappa_background());
  const double ki = field("kappa_inclusion", defaults.kappa_inclusion());
  if (!(ri < rb)) schema(join(path, "rho_inclusion"), "must be below rho_background");
  return MaterialParams(rb, ri, kb, ki);
}

GeometrySpec geometry(const Json& j, const std::string& path,
                      const std::filesystem::path& base_dir) {
  require_object(j, path);
  reject_unknown(j, path, {"centers", "radii", "material", "capacitance_file"});
  GeometrySpec g;
  if (!j.contains("centers")) schema(join(path, "centers"), "required");
  if (!j.contains("radii")) schema(join(path, "radii"), "required");
  const Json& c = j["centers"];
  const Json& r = j["radii"];
  if (!c.is_array() || c.empty()) schema(join(path, "centers"), "expected a non-empty list");
  if (!r.is_array()) schema(join(path, "radii"), "expected a list");
  if (r.size() != c.size()) {
    schema(join(path, "radii"), "length differs from centers");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::string p = join(path, "centers") + "[" + std::to_string(i) + "]";
    if (!c[i].is_array() || c[i].size() != 3) schema(p, "expected [x, y, z]");
    g.centers.emplace_back(number(c[i][0], p + "[0]"), number(c[i][1], p + "[1]"),
                           number(c[i][2], p + "[2]"));
    g.radii.push_back(positive(r[i], join(path, "radii") + "[" + std::to_string(i) + "]"));
  }
  if (j.contains("material")) g.material = material(j["material"], join(path, "material"));
  if (j.contains("capacitance_file")) {
    if (!j["capacitance_file"].is_string()) {
      schema(join(path, "capacitance_file"), "expected a path");
    }
    std::filesystem::path file = j["capacitance_file"].get<std::string>();
    g.capacitance_file = file.is_absolute() ? file : base_dir / file;
  }
  try {
    ResonatorArray(g.centers, g.radii, g.material);
  } catch (const Error& e) {
    schema(path, e.what());
  }
  return g;
}

DesignSpec design(const Json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"count", "length", "band", "material", "min_gap_fraction", "tolerance"});
  DesignSpec d;
  if (!j.contains("band")) schema(join(path, "band"), "required");
  if (j.contains("count")) d.count = count_value(j["count"], join(path, "count"), 1);
  if (j.contains("length")) d.length = positive(j["length"], join(path, "length"));
  std::tie(d.f_lo, d.f_hi) = band(j["band"], join(path, "band"));
  if (d.f_lo > d.f_hi) schema(join(path, "band"), "low edge above high edge");
  if (j.contains("material")) d.material = material(j["material"], join(path, "material"));
  if (j.contains("min_gap_fraction")) {
    d.options.min_gap_fraction =
        positive(j["min_gap_fraction"], join(path, "min_gap_fraction"));
  }
  if (j.contains("tolerance")) {
    d.options.tolerance = positive(j["tolerance"], join(path, "tolerance"));
  }
  return d;
}

BankConfig bank(const Json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"sample_rate", "max_kernel_seconds"});
  BankConfig b;
  if (j.contains("sample_rate")) b.sample_rate = positive(j["sample_rate"], join(path, "sample_rate"));
  if (j.contains("max_kernel_seconds")) {
    b.max_kernel_seconds = positive(j["max_kernel_seconds"], join(path, "max_kernel_seconds"));
  }
  return b;
}

StatsConfig stats(const Json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"fit_band", "silence_threshold", "window_lengths", "histogram_bins"});
  StatsConfig s;
  if (j.contains("fit_band")) {
    std::tie(s.fit_f_lo, s.fit_f_hi) = band(j["fit_band"], join(path, "fit_band"));
    if (!(s.fit_f_lo < s.fit_f_hi)) schema(join(path, "fit_band"), "low edge must be below high edge");
  }
  if (j.contains("silence_threshold")) {
    s.silence_threshold = number(j["silence_threshold"], join(path, "silence_threshold"));
    if (!(s.silence_threshold >= 0.0 && s.silence_threshold < 1.0)) {
      schema(join(path, "silence_threshold"), "must lie in [0, 1)");
    }
  }
  if (j.contains("window_lengths")) {
    const Json& w = j["window_lengths"];
    const std::string p = join(path, "window_lengths");
    if (!w.is_array() || w.empty()) schema(p, "expected a non-empty list");
    s.window_lengths.clear();
    for (std::size_t i = 0; i < w.size(); ++i) {
      s.window_lengths.push_back(count_value(w[i], p + "[" + std::to_string(i) + "]", 2));
    }
  }
  if (j.contains("histogram_bins")) {
    s.histogram_bins = static_cast<int>(
        count_value(j["histogram_bins"], join(path, "histogram_bins"), 4));
  }
  return s;
}

nlohmann::ordered_json material_echo(const MaterialParams& m) {
  nlohmann::ordered_json j;
  j["rho_background"] = m.rho_background();
  j["rho_inclusion"] = m.rho_inclusion();
  j["kappa_background"] = m.kappa_background();
  j["kappa_inclusion"] = m.kappa_inclusion();
  return j;
}

}  // namespace

const MaterialParams& PipelineConfig::material() const {
  return std::visit([](const auto& a) -> const MaterialParams& { return a.material; },
                    array);
}

double PipelineConfig::effective_delta() const {
  return delta ? *delta : material().contrast();
}

nlohmann::ordered_json PipelineConfig::echo() const {
  nlohmann::ordered_json j;
  if (const auto* d = std::get_if<DesignSpec>(&array)) {
    nlohmann::ordered_json b;
    b["count"] = d->count;
    b["length"] = d->length;
    b["band"] = {d->f_lo, d->f_hi};
    b["material"] = material_echo(d->material);
    b["min_gap_fraction"] = d->options.min_gap_fraction;
    b["tolerance"] = d->options.tolerance;
    j["design"] = b;
  } else {
    const auto& g = std::get<GeometrySpec>(array);
    nlohmann::ordered_json b;
    b["centers"] = nlohmann::ordered_json::array();
    for (const auto& c : g.centers) b["centers"].push_back({c.x(), c.y(), c.z()});
    b["radii"] = g.radii;
    b["material"] = material_echo(g.material);
    if (g.capacitance_file) b["capacitance_file"] = g.capacitance_file->generic_string();
    j["geometry"] = b;
  }
  j["delta"] = effective_delta();
  j["bank"] = {{"sample_rate", bank.sample_rate},
               {"max_kernel_seconds", bank.max_kernel_seconds}};
  nlohmann::ordered_json s;
  s["fit_band"] = {stats.fit_f_lo, stats.fit_f_hi};
  s["silence_threshold"] = stats.silence_threshold;
  s["window_lengths"] = stats.window_lengths;
  s["histogram_bins"] = stats.histogram_bins;
  s["inst_frequency_averaging"] = "standardize then modulus";
  j["stats"] = s;
  j["output_dir"] = output_dir;
  return j;
}

PipelineConfig parse_config_text(const std::string& text,
                                 const std::filesystem::path& base_dir) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::kSchemaViolation, std::string("<root>: invalid JSON: ") + e.what());
  }
  require_object(root, "");
  reject_unknown(root, "", {"geometry", "design", "delta", "bank", "stats", "output_dir"});
  const bool has_geometry = root.contains("geometry");
  const bool has_design = root.contains("design");
  if (has_geometry && has_design) {
    fail(ErrorCode::kConflictingGeometry, "both 'geometry' and 'design' are present");
  }
  if (!has_geometry && !has_design) {
    schema("<root>", "one of 'geometry' or 'design' is required");
  }
  PipelineConfig cfg;
  if (has_design) {
    cfg.array = design(root["design"], "design");
  } else {
    cfg.array = geometry(root["geometry"], "geometry", base_dir);
  }
  if (root.contains("delta")) {
    const double d = positive(root["delta"], "delta");
    if (!(d < 1.0)) schema("delta", "must lie in (0, 1)");
    cfg.delta = d;
  }
  if (root.contains("bank")) cfg.bank = bank(root["bank"], "bank");
  if (root.contains("stats")) cfg.stats = stats(root["stats"], "stats");
  if (cfg.stats.fit_f_hi >= 0.5 * cfg.bank.sample_rate) {
    schema("stats.fit_band", "must lie below half the bank sample rate");
  }
  if (root.contains("output_dir")) {
    if (!root["output_dir"].is_string()) schema("output_dir", "expected a string");
    cfg.output_dir = root["output_dir"].get<std::string>();
  }
  return cfg;
}

PipelineConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.parent_path());
}

Eigen::MatrixXd read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoFailure, "cannot open matrix " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    std::string token;
    while (ls >> token) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        fail(ErrorCode::kSchemaViolation,
             path.string() + ": row " + std::to_string(rows.size() + 1) +
                 ": not a number '" + token + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::kSchemaViolation, path.string() + ": empty matrix");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      fail(ErrorCode::kDimensionMismatch, path.string() + ": ragged rows");
    }
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return m;
}

}  // namespace cochlear
