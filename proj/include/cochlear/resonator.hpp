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

// Graded arrays of high-contrast spherical resonators and their
// subwavelength spectrum. Everything here is leading order in the density
// contrast delta: the weighted capacitance matrix C^vol = diag(1/|D_i|) C
// governs the resonant frequencies, and the all-ones coupling through C
// gives the radiative decay.

#ifndef COCHLEAR_RESONATOR_HPP_
#define COCHLEAR_RESONATOR_HPP_

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace cochlear {

class MaterialParams {
 public:
  // Throws InvalidArgument unless all four values are positive and the
  // inclusion is lighter than the background (0 < delta < 1).
  MaterialParams(double rho_background, double rho_inclusion,
                 double kappa_background, double kappa_inclusion);

  // Air bubbles in water at room temperature (adiabatic air modulus).
  static MaterialParams air_in_water();

  double rho_background() const { return rho_background_; }
  double rho_inclusion() const { return rho_inclusion_; }
  double kappa_background() const { return kappa_background_; }
  double kappa_inclusion() const { return kappa_inclusion_; }

  double contrast() const { return rho_inclusion_ / rho_background_; }
  double background_speed() const;  // v
  double inclusion_speed() const;    // v_b

 private:
  double rho_background_;
  double rho_inclusion_;
  double kappa_background_;
  double kappa_inclusion_;
};

// N disjoint spheres. Volumes are derived from the radii on demand.
class ResonatorArray {
 public:
  ResonatorArray(std::vector<Eigen::Vector3d> centers,
                 std::vector<double> radii, MaterialParams material);

  std::size_t size() const { return radii_.size(); }
  const std::vector<Eigen::Vector3d>& centers() const { return centers_; }
  const std::vector<double>& radii() const { return radii_; }
  const MaterialParams& material() const { return material_; }

  double volume(std::size_t i) const;
  Eigen::VectorXd volumes() const;
  // Smallest |z_i - z_j| - (r_i + r_j); +infinity for a single sphere.
  double min_gap() const;

 private:
  std::vector<Eigen::Vector3d> centers_;
  std::vector<double> radii_;
  MaterialParams material_;
};

enum class CapacitanceProvenance { kDiluteApproximation, kUserSupplied };

class CapacitanceMatrix {
 public:
  // Symmetrizes `entries`; diagonal entries must be positive.
  CapacitanceMatrix(const Eigen::MatrixXd& entries,
                    CapacitanceProvenance provenance);

  const Eigen::MatrixXd& entries() const { return entries_; }
  CapacitanceProvenance provenance() const { return provenance_; }
  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }

 private:
  Eigen::MatrixXd entries_;
  CapacitanceProvenance provenance_;
};

// Leading-order spectrum, sorted ascending by Re(omega^+). The negative
// branch omega^- = -conj(omega^+) is never stored.
struct SubwavelengthSpectrum {
  std::vector<std::complex<double>> frequencies;  // omega_n^+, rad/s
  std::vector<double> decay_rates;                // tau_n, rad/s per unit delta
  std::vector<double> modal_weights;              // nu_n
  std::vector<double> eigenvalues;                // lambda_n of C^vol, 1/m^2
  Eigen::MatrixXd eigenvectors;                   // columns, unit norm
  double delta = 0.0;
  bool degenerate = false;

  std::size_t size() const { return frequencies.size(); }
  std::complex<double> negative_branch(std::size_t n) const {
    return -std::conj(frequencies[n]);
  }
};

// C = P^{-1} with P_ii = 1/(4 pi r_i), P_ij = 1/(4 pi |z_i - z_j|).
// Exact for a single sphere and as the separation grows.
CapacitanceMatrix build_capacitance_dilute(const ResonatorArray& array);

// Accepts an externally computed matrix (e.g. from a boundary-element
// solver). Relative asymmetry above 1e-6 is rejected.
CapacitanceMatrix load_capacitance(const Eigen::MatrixXd& matrix,
                                   const ResonatorArray& array);

// C^vol_ij = C_ij / |D_i|. Not symmetric in general.
Eigen::MatrixXd weighted_capacitance(const CapacitanceMatrix& cap,
                                     const ResonatorArray& array);

struct WeightedEigenpairs {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // unit norm, largest entry positive
  bool degenerate = false;
};

// Real eigendecomposition of a (generally non-symmetric) weighted
// capacitance matrix, with the ordering and sign conventions above.
WeightedEigenpairs solve_weighted_eigenproblem(const Eigen::MatrixXd& cvol);

SubwavelengthSpectrum solve_spectrum(const CapacitanceMatrix& cap,
                                     const ResonatorArray& array,
                                     double delta);
// Uses the contrast of the array's material.
SubwavelengthSpectrum solve_spectrum(const CapacitanceMatrix& cap,
                                     const ResonatorArray& array);

// Modal coefficients a_n for a plane wave of angular frequency `omega`:
// a_n (omega - omega_n^+)(omega - omega_n^-) = -A nu_n Re(omega_n^+)^2.
std::vector<std::complex<double>> frequency_response(
    const SubwavelengthSpectrum& spectrum, double omega, double amplitude);

}  // namespace cochlear

#endif  // COCHLEAR_RESONATOR_HPP_
