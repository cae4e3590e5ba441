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

#ifndef COCHLEAR_DESIGN_HPP_
#define COCHLEAR_DESIGN_HPP_

#include <cstddef>

#include "cochlear/resonator.hpp"

namespace cochlear {

struct DesignOptions {
  // Gap between neighbours, as a fraction of their mean diameter, may not
  // fall below this value.
  double min_gap_fraction = 0.3;
  // Allowed relative mismatch at each band edge.
  double tolerance = 0.05;
};

struct BandEdges {
  double f_min = 0.0;  // Hz
  double f_max = 0.0;  // Hz
};

// Collinear array along x with radii r_i = first_radius * growth^i. The
// outer extent is exactly `array_length` (left edge at x = 0); neighbour
// gaps are a uniform fraction of their mean diameter, which is returned by
// layout_gap_fraction. Throws InvalidArgument if the spheres do not fit.
ResonatorArray graded_layout(std::size_t count, double array_length,
                             double first_radius, double growth,
                             const MaterialParams& material);
double layout_gap_fraction(std::size_t count, double array_length,
                           double first_radius, double growth);

// Lowest and highest Re(omega_n^+)/2pi using the dilute capacitance.
BandEdges band_edges(const ResonatorArray& array, double delta);

// Searches (first_radius, growth) so that the spectrum's lowest and highest
// mode frequencies land on [f_lo, f_hi] Hz. Outer loop: bracket scan and
// bisection on the growth factor for the band ratio; inner loop: bisection
// on the first radius for the lower edge. Throws InfeasibleDesign with the
// closest band found when no admissible design meets the tolerance.
ResonatorArray design_graded_array(std::size_t count, double array_length,
                                   double f_lo, double f_hi,
                                   const MaterialParams& material,
                                   double delta,
                                   const DesignOptions& options = {});

}  // namespace cochlear

#endif  // COCHLEAR_DESIGN_HPP_
