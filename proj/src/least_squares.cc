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

#include "cochlear/least_squares.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cochlear/error.hpp"

namespace cochlear {
namespace {

double cost_of(const Eigen::VectorXd& r) {
  if (!r.allFinite()) return std::numeric_limits<double>::infinity();
  return 0.5 * r.squaredNorm();
}

Eigen::MatrixXd jacobian(const ResidualFunction& f, const Eigen::VectorXd& x,
                         Eigen::Index rows) {
  Eigen::MatrixXd j(rows, x.size());
  for (Eigen::Index c = 0; c < x.size(); ++c) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[c]));
    Eigen::VectorXd up = x;
    Eigen::VectorXd down = x;
    up[c] += h;
    down[c] -= h;
    j.col(c) = (f(up) - f(down)) / (2.0 * h);
  }
  return j;
}

}  // namespace

LeastSquaresResult damped_gauss_newton(const ResidualFunction& residuals,
                                       Eigen::VectorXd initial,
                                       const LeastSquaresOptions& options) {
  LeastSquaresResult result;
  result.params = std::move(initial);
  Eigen::VectorXd r = residuals(result.params);
  result.cost = cost_of(r);
  if (!std::isfinite(result.cost)) {
    fail(ErrorCode::kFitDiverged, "non-finite residuals at the initial guess");
  }
  double damping = options.initial_damping;
  int rejections = 0;
  while (result.iterations < options.max_iterations) {
    ++result.iterations;
    const Eigen::MatrixXd j = jacobian(residuals, result.params, r.size());
    if (!j.allFinite()) {
      fail(ErrorCode::kFitDiverged, "non-finite Jacobian");
    }
    const Eigen::MatrixXd jtj = j.transpose() * j;
    const Eigen::VectorXd grad = j.transpose() * r;
    if (grad.norm() <= 1e-14 * (1.0 + result.cost)) {
      result.converged = true;
      break;
    }
    Eigen::MatrixXd lhs = jtj;
    lhs.diagonal() += damping * (jtj.diagonal().array() + 1e-12).matrix();
    const Eigen::VectorXd step = lhs.ldlt().solve(-grad);
    const Eigen::VectorXd trial = result.params + step;
    const Eigen::VectorXd trial_r = residuals(trial);
    const double trial_cost = cost_of(trial_r);
    if (trial_cost <= result.cost) {
      const double change = (result.cost - trial_cost) /
                            std::max(result.cost, std::numeric_limits<double>::min());
      result.params = trial;
      r = trial_r;
      result.cost = trial_cost;
      damping = std::max(damping * 0.1, 1e-15);
      rejections = 0;
      if (change < options.relative_tolerance) {
        result.converged = true;
        break;
      }
    } else {
      damping *= 10.0;
      if (++rejections >= options.max_rejections) {
        fail(ErrorCode::kFitDiverged,
             "cost did not decrease for " + std::to_string(rejections) +
                 " damped steps");
      }
    }
  }
  return result;
}

}  // namespace cochlear
