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

#include "cochlear/resonator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cochlear/error.hpp"

namespace cochlear {
namespace {

constexpr double kPi = std::numbers::pi;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

MaterialParams::MaterialParams(double rho_background, double rho_inclusion,
                               double kappa_background, double kappa_inclusion)
    : rho_background_(rho_background),
      rho_inclusion_(rho_inclusion),
      kappa_background_(kappa_background),
      kappa_inclusion_(kappa_inclusion) {
  if (!positive_finite(rho_background) || !positive_finite(rho_inclusion) ||
      !positive_finite(kappa_background) || !positive_finite(kappa_inclusion)) {
    fail(ErrorCode::kInvalidArgument,
         "material densities and bulk moduli must be positive and finite");
  }
  if (contrast() >= 1.0) {
    fail(ErrorCode::kInvalidArgument,
         "density contrast rho_inclusion/rho_background must be below 1");
  }
}

MaterialParams MaterialParams::air_in_water() {
  return MaterialParams(1000.0, 1.2, 2.2e9, 1.42e5);
}

double MaterialParams::background_speed() const {
  return std::sqrt(kappa_background_ / rho_background_);
}

double MaterialParams::inclusion_speed() const {
  return std::sqrt(kappa_inclusion_ / rho_inclusion_);
}

ResonatorArray::ResonatorArray(std::vector<Eigen::Vector3d> centers,
                               std::vector<double> radii,
                               MaterialParams material)
    : centers_(std::move(centers)),
      radii_(std::move(radii)),
      material_(material) {
  if (radii_.empty()) {
    fail(ErrorCode::kInvalidArgument, "resonator array must not be empty");
  }
  if (centers_.size() != radii_.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "got " + std::to_string(centers_.size()) + " centers but " +
             std::to_string(radii_.size()) + " radii");
  }
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!positive_finite(radii_[i])) {
      fail(ErrorCode::kInvalidArgument,
           "radius " + std::to_string(i) + " must be positive");
    }
    if (!centers_[i].allFinite()) {
      fail(ErrorCode::kInvalidArgument,
           "center " + std::to_string(i) + " is not finite");
    }
  }
  if (!(min_gap() > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "resonators overlap or touch");
  }
}

double ResonatorArray::volume(std::size_t i) const {
  const double r = radii_.at(i);
  return 4.0 / 3.0 * kPi * r * r * r;
}

Eigen::VectorXd ResonatorArray::volumes() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) v(static_cast<Eigen::Index>(i)) = volume(i);
  return v;
}

double ResonatorArray::min_gap() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      const double d = (centers_[i] - centers_[j]).norm();
      gap = std::min(gap, d - (radii_[i] + radii_[j]));
    }
  }
  return gap;
}

CapacitanceMatrix::CapacitanceMatrix(const Eigen::MatrixXd& entries,
                                     CapacitanceProvenance provenance)
    : entries_(0.5 * (entries + entries.transpose())), provenance_(provenance) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    fail(ErrorCode::kDimensionMismatch, "capacitance matrix must be square");
  }
  if (!entries_.allFinite()) {
    fail(ErrorCode::kInvalidArgument, "capacitance matrix is not finite");
  }
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    if (!(entries_(i, i) > 0.0)) {
      fail(ErrorCode::kInvalidArgument,
           "capacitance diagonal entry " + std::to_string(i) +
               " must be positive");
    }
  }
}

CapacitanceMatrix build_capacitance_dilute(const ResonatorArray& array) {
  const auto n = static_cast<Eigen::Index>(array.size());
  Eigen::MatrixXd potential(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    potential(i, i) = 1.0 / (4.0 * kPi * array.radii()[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (array.centers()[static_cast<std::size_t>(i)] -
                        array.centers()[static_cast<std::size_t>(j)])
                           .norm();
      potential(i, j) = potential(j, i) = 1.0 / (4.0 * kPi * d);
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(potential);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-13)) {
    std::ostringstream msg;
    msg << "potential-coefficient matrix is numerically singular (rcond "
        << rcond << "); resonators too close for the dilute approximation";
    fail(ErrorCode::kSingularPotentialMatrix, msg.str());
  }
  Eigen::MatrixXd cap = lu.inverse();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(cap(i, i) > 0.0)) {
      fail(ErrorCode::kSingularPotentialMatrix,
           "dilute capacitance lost positivity; resonators too close");
    }
  }
  return CapacitanceMatrix(cap, CapacitanceProvenance::kDiluteApproximation);
}

CapacitanceMatrix load_capacitance(const Eigen::MatrixXd& matrix,
                                   const ResonatorArray& array) {
  const auto n = static_cast<Eigen::Index>(array.size());
  if (matrix.rows() != n || matrix.cols() != n) {
    fail(ErrorCode::kDimensionMismatch,
         "capacitance matrix is " + std::to_string(matrix.rows()) + "x" +
             std::to_string(matrix.cols()) + " but the array has " +
             std::to_string(n) + " resonators");
  }
  const double scale = matrix.cwiseAbs().maxCoeff();
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (scale > 0.0 && asym / scale > 1e-6) {
    std::ostringstream msg;
    msg << "relative asymmetry " << asym / scale << " exceeds 1e-6";
    fail(ErrorCode::kAsymmetryTooLarge, msg.str());
  }
  return CapacitanceMatrix(matrix, CapacitanceProvenance::kUserSupplied);
}

Eigen::MatrixXd weighted_capacitance(const CapacitanceMatrix& cap,
                                     const ResonatorArray& array) {
  if (cap.size() != array.size()) {
    fail(ErrorCode::kDimensionMismatch,
         "capacitance matrix and array sizes differ");
  }
  return array.volumes().cwiseInverse().asDiagonal() * cap.entries();
}

WeightedEigenpairs solve_weighted_eigenproblem(const Eigen::MatrixXd& cvol) {
  if (cvol.rows() != cvol.cols() || cvol.rows() == 0) {
    fail(ErrorCode::kDimensionMismatch, "weighted capacitance must be square");
  }
  const Eigen::Index n = cvol.rows();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(cvol, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kComplexEigenvalues, "eigen decomposition did not converge");
  }
  const Eigen::VectorXcd values = solver.eigenvalues();
  const double scale = values.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(values(i).imag()) > 1e-10 * scale) {
      std::ostringstream msg;
      msg << "eigenvalue " << values(i) << " has a non-negligible imaginary part";
      fail(ErrorCode::kComplexEigenvalues, msg.str());
    }
    if (!(values(i).real() > 0.0)) {
      std::ostringstream msg;
      msg << "eigenvalue " << values(i).real()
          << " is not positive; capacitance input is invalid";
      fail(ErrorCode::kNegativeEigenvalue, msg.str());
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return values(a).real() < values(b).real();
  });

  WeightedEigenpairs out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  const Eigen::MatrixXcd vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = values(src).real();
    Eigen::VectorXd v = vectors.col(src).real();
    v.normalize();
    // Sign: the first entry (within roundoff) of largest magnitude is positive.
    const double peak = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(v(i)) >= peak * (1.0 - 1e-9)) {
        if (v(i) < 0.0) v = -v;
        break;
      }
    }
    out.eigenvectors.col(k) = v;
  }
  const double max_lambda = out.eigenvalues.maxCoeff();
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (out.eigenvalues(k + 1) - out.eigenvalues(k) < 1e-10 * max_lambda) {
      out.degenerate = true;
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.eigenvectors);
  const Eigen::VectorXd sv = svd.singularValues();
  const double rcond = sv(n - 1) / sv(0);
  if (!(rcond >= 1e-14)) {
    std::ostringstream msg;
    msg << "eigenvector matrix is singular (reciprocal condition " << rcond << ")";
    fail(ErrorCode::kSingularEigenbasis, msg.str());
  }
  return out;
}

SubwavelengthSpectrum solve_spectrum(const CapacitanceMatrix& cap,
                                     const ResonatorArray& array,
                                     double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "delta must lie in (0, 1)");
  }
  const WeightedEigenpairs pairs =
      solve_weighted_eigenproblem(weighted_capacitance(cap, array));
  const Eigen::Index n = pairs.eigenvalues.size();
  const Eigen::VectorXd vol = array.volumes();
  const double vb = array.material().inclusion_speed();
  const double v = array.material().background_speed();
  const double radiation = vb * vb / (8.0 * kPi * v);

  SubwavelengthSpectrum spec;
  spec.delta = delta;
  spec.degenerate = pairs.degenerate;
  spec.eigenvectors = pairs.eigenvectors;
  const Eigen::VectorXd nu =
      pairs.eigenvectors.fullPivLu().solve(Eigen::VectorXd::Ones(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXd mode = pairs.eigenvectors.col(k);
    const double lambda = pairs.eigenvalues(k);
    // v.CJCv = (sum_i (Cv)_i)^2 since J is the all-ones matrix.
    const double charge = (cap.entries() * mode).sum();
    const double norm_d = (vol.array() * mode.array().square()).sum();
    const double tau = radiation * charge * charge / norm_d;
    spec.eigenvalues.push_back(lambda);
    spec.decay_rates.push_back(tau);
    spec.modal_weights.push_back(nu(k));
    spec.frequencies.emplace_back(std::sqrt(vb * vb * lambda * delta),
                                  -tau * delta);
  }
  return spec;
}

SubwavelengthSpectrum solve_spectrum(const CapacitanceMatrix& cap,
                                     const ResonatorArray& array) {
  return solve_spectrum(cap, array, array.material().contrast());
}

std::vector<std::complex<double>> frequency_response(
    const SubwavelengthSpectrum& spectrum, double omega, double amplitude) {
  std::vector<std::complex<double>> out;
  out.reserve(spectrum.size());
  for (std::size_t n = 0; n < spectrum.size(); ++n) {
    const std::complex<double> wp = spectrum.frequencies[n];
    const std::complex<double> wm = spectrum.negative_branch(n);
    const std::complex<double> denom = (omega - wp) * (omega - wm);
    if (denom == 0.0) {
      fail(ErrorCode::kPoleOnRealAxis,
           "omega coincides with undamped resonance " + std::to_string(n));
    }
    const double re = wp.real();
    out.push_back(-amplitude * spectrum.modal_weights[n] * re * re / denom);
  }
  return out;
}

}  // namespace cochlear
