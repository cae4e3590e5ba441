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

#include "cochlear/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include <spdlog/spdlog.h>

#include "cochlear/error.hpp"

namespace cochlear {
namespace {

constexpr int kGrowthGridPoints = 48;
constexpr int kBisectionSteps = 60;

double pair_sum(std::size_t count, double first_radius, double growth) {
  double sum = 0.0;
  double r = first_radius;
  for (std::size_t i = 0; i + 1 < count; ++i) {
    sum += r * (1.0 + growth);
    r *= growth;
  }
  return sum;
}

double last_radius(std::size_t count, double first_radius, double growth) {
  return first_radius * std::pow(growth, static_cast<double>(count - 1));
}

// Largest first radius that still leaves the minimum gap fraction.
double max_first_radius(std::size_t count, double length, double growth,
                        double min_gap_fraction) {
  const double unit = 1.0 + last_radius(count, 1.0, growth) +
                      (1.0 + min_gap_fraction) * pair_sum(count, 1.0, growth);
  return length / unit;
}

double relative_error(double value, double target) {
  return std::abs(value / target - 1.0);
}

struct Candidate {
  double first_radius = 0.0;
  double growth = 1.0;
  BandEdges band;
};

class Search {
 public:
  Search(std::size_t count, double length, double f_lo, double f_hi,
         const MaterialParams& material, double delta,
         const DesignOptions& options)
      : count_(count),
        length_(length),
        f_lo_(f_lo),
        f_hi_(f_hi),
        material_(material),
        delta_(delta),
        options_(options) {}

  BandEdges evaluate(double first_radius, double growth) {
    const ResonatorArray array =
        graded_layout(count_, length_, first_radius, growth, material_);
    BandEdges band = band_edges(array, delta_);
    note(first_radius, growth, band);
    return band;
  }

  // Inner bisection: first radius whose lowest mode sits at f_lo. The
  // lowest mode falls monotonically as the spheres grow.
  std::optional<Candidate> match_lower_edge(double growth) {
    double hi = max_first_radius(count_, length_, growth,
                                 options_.min_gap_fraction) *
                (1.0 - 1e-12);
    BandEdges at_hi = evaluate(hi, growth);
    if (at_hi.f_min > f_lo_) return std::nullopt;
    double lo = hi * 1e-4;
    if (evaluate(lo, growth).f_min < f_lo_) return std::nullopt;
    for (int step = 0; step < kBisectionSteps; ++step) {
      const double mid = std::sqrt(lo * hi);
      if (evaluate(mid, growth).f_min > f_lo_) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi / lo - 1.0 < 1e-13) break;
    }
    const double r = std::sqrt(lo * hi);
    return Candidate{r, growth, evaluate(r, growth)};
  }

  const std::optional<Candidate>& closest() const { return closest_; }

 private:
  void note(double first_radius, double growth, const BandEdges& band) {
    const double err = std::max(relative_error(band.f_min, f_lo_),
                                relative_error(band.f_max, f_hi_));
    if (!closest_ || err < closest_error_) {
      closest_ = Candidate{first_radius, growth, band};
      closest_error_ = err;
    }
  }

  std::size_t count_;
  double length_;
  double f_lo_;
  double f_hi_;
  MaterialParams material_;
  double delta_;
  DesignOptions options_;
  std::optional<Candidate> closest_;
  double closest_error_ = std::numeric_limits<double>::infinity();
};

ResonatorArray single_sphere_design(double length, double f_lo, double f_hi,
                                    const MaterialParams& material,
                                    double delta,
                                    const DesignOptions& options) {
  // Minnaert: omega = (v_b / r) sqrt(3 delta).
  const double f_target = std::sqrt(f_lo * f_hi);
  const double radius = material.inclusion_speed() * std::sqrt(3.0 * delta) /
                        (2.0 * std::numbers::pi * f_target);
  if (relative_error(f_target, f_lo) > options.tolerance ||
      relative_error(f_target, f_hi) > options.tolerance) {
    std::ostringstream msg;
    msg << "a single resonator cannot span [" << f_lo << ", " << f_hi
        << "] Hz within " << options.tolerance * 100 << "%";
    fail(ErrorCode::kInfeasibleDesign, msg.str());
  }
  if (2.0 * radius > length) {
    fail(ErrorCode::kInfeasibleDesign,
         "the resonator for this band is larger than the array length");
  }
  return ResonatorArray({Eigen::Vector3d(radius, 0.0, 0.0)}, {radius},
                        material);
}

}  // namespace

double layout_gap_fraction(std::size_t count, double array_length,
                           double first_radius, double growth) {
  if (count < 2) return std::numeric_limits<double>::infinity();
  const double spare = array_length - first_radius -
                       last_radius(count, first_radius, growth);
  return spare / pair_sum(count, first_radius, growth) - 1.0;
}

ResonatorArray graded_layout(std::size_t count, double array_length,
                             double first_radius, double growth,
                             const MaterialParams& material) {
  if (count == 0 || !(array_length > 0.0) || !(first_radius > 0.0) ||
      !(growth > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "invalid graded layout parameters");
  }
  const double gap =
      layout_gap_fraction(count, array_length, first_radius, growth);
  if (!(gap > 0.0)) {
    fail(ErrorCode::kInvalidArgument,
         "graded resonators do not fit in the array length");
  }
  std::vector<Eigen::Vector3d> centers;
  std::vector<double> radii;
  double r = first_radius;
  double x = first_radius;
  for (std::size_t i = 0; i < count; ++i) {
    centers.emplace_back(x, 0.0, 0.0);
    radii.push_back(r);
    const double next = r * growth;
    if (count > 1) x += (1.0 + gap) * (r + next);
    r = next;
  }
  return ResonatorArray(std::move(centers), std::move(radii), material);
}

BandEdges band_edges(const ResonatorArray& array, double delta) {
  const SubwavelengthSpectrum spec =
      solve_spectrum(build_capacitance_dilute(array), array, delta);
  const double to_hz = 1.0 / (2.0 * std::numbers::pi);
  return {spec.frequencies.front().real() * to_hz,
          spec.frequencies.back().real() * to_hz};
}

ResonatorArray design_graded_array(std::size_t count, double array_length,
                                   double f_lo, double f_hi,
                                   const MaterialParams& material,
                                   double delta,
                                   const DesignOptions& options) {
  if (count == 0 || !(array_length > 0.0) || !(f_lo > 0.0) ||
      !(f_hi >= f_lo) || !(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::kInvalidArgument,
         "design needs count >= 1, positive length, 0 < f_lo <= f_hi and "
         "0 < delta < 1");
  }
  if (count == 1) {
    return single_sphere_design(array_length, f_lo, f_hi, material, delta,
                                options);
  }

  Search search(count, array_length, f_lo, f_hi, material, delta, options);
  const double target_ratio = f_hi / f_lo;
  auto ratio_gap = [&](const Candidate& c) {
    return std::log(c.band.f_max / c.band.f_min) - std::log(target_ratio);
  };

  // Bracket scan over log(growth - 1).
  std::optional<Candidate> previous;
  std::optional<double> infeasible_growth;
  std::optional<std::pair<Candidate, Candidate>> bracket;
  std::optional<Candidate> found;
  for (int k = 0; k < kGrowthGridPoints && !bracket && !found; ++k) {
    const double exponent =
        -4.0 + 4.0 * static_cast<double>(k) / (kGrowthGridPoints - 1);
    const double growth = 1.0 + std::pow(10.0, exponent);
    std::optional<Candidate> current = search.match_lower_edge(growth);
    if (!current) {
      if (!previous) infeasible_growth = growth;
      previous = current;
      continue;
    }
    if (!previous && infeasible_growth) {
      // Too small a growth cannot reach f_lo inside the length. Locate the
      // feasibility edge; the ratio there is the smallest available.
      double bad = *infeasible_growth;
      Candidate edge = *current;
      for (int step = 0; step < kBisectionSteps && edge.growth - bad > 1e-14; ++step) {
        const double mid = 0.5 * (bad + edge.growth);
        if (auto c = search.match_lower_edge(mid)) {
          edge = *c;
        } else {
          bad = mid;
        }
      }
      if ((ratio_gap(edge) <= 0.0) != (ratio_gap(*current) <= 0.0)) {
        bracket = std::make_pair(edge, *current);
      } else if (ratio_gap(edge) > 0.0) {
        found = edge;
      }
    } else if (previous &&
               (ratio_gap(*previous) <= 0.0) != (ratio_gap(*current) <= 0.0)) {
      bracket = std::make_pair(*previous, *current);
    }
    previous = current;
  }

  if (bracket) {
    Candidate lo = bracket->first;
    Candidate hi = bracket->second;
    const bool lo_below = ratio_gap(lo) <= 0.0;
    for (int step = 0; step < kBisectionSteps; ++step) {
      const double growth = 0.5 * (lo.growth + hi.growth);
      std::optional<Candidate> mid = search.match_lower_edge(growth);
      if (!mid) break;
      if ((ratio_gap(*mid) <= 0.0) == lo_below) {
        lo = *mid;
      } else {
        hi = *mid;
      }
      if (hi.growth - lo.growth < 1e-14) break;
    }
    found = std::abs(ratio_gap(lo)) < std::abs(ratio_gap(hi)) ? lo : hi;
  }

  if (found && relative_error(found->band.f_min, f_lo) <= options.tolerance &&
      relative_error(found->band.f_max, f_hi) <= options.tolerance) {
    spdlog::debug("graded design: r1 = {} m, growth = {}, band [{}, {}] Hz",
                  found->first_radius, found->growth, found->band.f_min,
                  found->band.f_max);
    return graded_layout(count, array_length, found->first_radius,
                         found->growth, material);
  }

  std::ostringstream msg;
  msg << "no graded " << count << "-resonator array of length "
      << array_length << " m reaches [" << f_lo << ", " << f_hi
      << "] Hz within " << options.tolerance * 100 << "%";
  if (const auto& best = search.closest()) {
    msg << "; closest admissible band [" << best->band.f_min << ", "
        << best->band.f_max << "] Hz (r1 = " << best->first_radius
        << " m, growth = " << best->growth << ")";
  }
  fail(ErrorCode::kInfeasibleDesign, msg.str());
}

}  // namespace cochlear
