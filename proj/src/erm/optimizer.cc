//
// Copyright 2026 The propdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "propdp/erm/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"

namespace propdp {

PerturbedObjective::PerturbedObjective(const Dataset& data, LossModel loss,
                                       double lambda, double nu,
                                       Eigen::VectorXd xi)
    : data_(&data),
      loss_(std::move(loss)),
      lambda_(lambda),
      nu_(nu),
      xi_(std::move(xi)) {}

double PerturbedObjective::Value(const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd eta = data_->X * beta;
  double total = 0.0;
  for (int i = 0; i < data_->n(); ++i) {
    total += LossValue(loss_, eta[i], data_->y[i]);
  }
  return total + 0.5 * lambda_ * beta.squaredNorm() + nu_ * xi_.dot(beta);
}

Eigen::VectorXd PerturbedObjective::Gradient(
    const Eigen::VectorXd& beta) const {
  const Eigen::VectorXd eta = data_->X * beta;
  Eigen::VectorXd slopes(data_->n());
  for (int i = 0; i < data_->n(); ++i) {
    slopes[i] = LossDerivative(loss_, eta[i], data_->y[i]);
  }
  return data_->X.transpose() * slopes + lambda_ * beta + nu_ * xi_;
}

double PerturbedObjective::CurvatureBound() const {
  const double r = data_->feature_radius;
  return lambda_ + loss_.smoothness() * r * r * data_->n();
}

absl::StatusOr<GdResult> MinimizeGd(const PerturbedObjective& objective,
                                    const Eigen::VectorXd& start,
                                    const GdOptions& options) {
  const double tolerance =
      options.tolerance_scale * std::max(1.0, double(objective.data().n()));
  const double cap = 2.0 / objective.CurvatureBound();
  constexpr double kEps = std::numeric_limits<double>::epsilon();

  GdResult result;
  result.beta = start;
  double value = objective.Value(result.beta);
  Eigen::VectorXd grad = objective.Gradient(result.beta);
  for (int it = 0;; ++it) {
    result.grad_norm = grad.norm();
    result.iterations = it;
    result.objective_value = value;
    if (!std::isfinite(result.grad_norm) || !std::isfinite(value)) {
      return absl::InternalError("objective became non-finite.");
    }
    if (result.grad_norm <= tolerance) return result;
    if (it >= options.max_iterations) break;

    const double g2 = grad.squaredNorm();
    double step = cap;
    bool accepted = false;
    Eigen::VectorXd trial;
    double trial_value = 0.0;
    for (int h = 0; h <= options.max_halvings; ++h, step *= 0.5) {
      trial = result.beta - step * grad;
      trial_value = objective.Value(trial);
      if (trial_value <= value - options.armijo_c * step * g2) {
        accepted = true;
        break;
      }
      // Near the optimum the decrease drops below rounding; a step of at
      // most 1 / CurvatureBound() is a guaranteed descent step.
      if (step <= 0.5 * cap &&
          std::abs(trial_value - value) <=
              64.0 * kEps * std::max(1.0, std::abs(value))) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    result.beta = std::move(trial);
    value = trial_value;
    grad = objective.Gradient(result.beta);
  }
  return absl::InternalError(absl::StrFormat(
      "gradient descent stalled after %d iterations with grad_norm=%.6g "
      "(tolerance %.3g).",
      result.iterations, result.grad_norm, tolerance));
}

}  // namespace propdp
