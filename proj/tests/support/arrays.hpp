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

#ifndef COCHLEAR_TESTS_ARRAYS_HPP_
#define COCHLEAR_TESTS_ARRAYS_HPP_

#include <random>
#include <vector>

#include "cochlear/resonator.hpp"

namespace arrays {

// Spheres on the x axis at a fixed spacing.
inline cochlear::ResonatorArray line_array(
    const std::vector<double>& radii, double spacing,
    cochlear::MaterialParams m = cochlear::MaterialParams::air_in_water()) {
  std::vector<Eigen::Vector3d> centers;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    centers.emplace_back(spacing * static_cast<double>(i), 0.0, 0.0);
  }
  return cochlear::ResonatorArray(centers, radii, m);
}

// Air bubbles of radius 0.2-1.5 mm along a wobbly line, never touching.
inline cochlear::ResonatorArray random_array(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> radius(0.2e-3, 1.5e-3);
  std::uniform_real_distribution<double> gap(0.5e-3, 4e-3);
  std::uniform_real_distribution<double> wobble(-1e-3, 1e-3);
  std::vector<Eigen::Vector3d> centers;
  std::vector<double> radii;
  double x = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = radius(rng);
    if (i > 0) x += radii.back() + r + gap(rng) + 2e-3;
    centers.emplace_back(x, wobble(rng), wobble(rng));
    radii.push_back(r);
  }
  return cochlear::ResonatorArray(centers, radii, cochlear::MaterialParams::air_in_water());
}

}  // namespace arrays

#endif  // COCHLEAR_TESTS_ARRAYS_HPP_
