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

// Small dense nonlinear least squares: Gauss-Newton with a multiplicative
// damping schedule (Levenberg-Marquardt style) and central-difference
// Jacobians.

#ifndef COCHLEAR_LEAST_SQUARES_HPP_
#define COCHLEAR_LEAST_SQUARES_HPP_

#include <functional>

#include <Eigen/Dense>

namespace cochlear {

struct LeastSquaresOptions {
  int max_iterations = 500;
  double relative_tolerance = 1e-10;  // on the cost change
  int max_rejections = 50;            // consecutive, before FitDiverged
  double initial_damping = 1e-3;
};

struct LeastSquaresResult {
  Eigen::VectorXd params;
  double cost = 0.0;  // 0.5 * |r|^2
  int iterations = 0;
  bool converged = false;
};

using ResidualFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Throws FitDiverged after max_rejections consecutive steps that fail to
// lower the cost, or when residuals become non-finite at the start.
LeastSquaresResult damped_gauss_newton(const ResidualFunction& residuals,
                                       Eigen::VectorXd initial,
                                       const LeastSquaresOptions& options = {});

}  // namespace cochlear

#endif  // COCHLEAR_LEAST_SQUARES_HPP_
