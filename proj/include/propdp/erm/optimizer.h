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

#ifndef PROPDP_ERM_OPTIMIZER_H_
#define PROPDP_ERM_OPTIMIZER_H_

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "propdp/erm/dataset.h"
#include "propdp/erm/loss_model.h"

namespace propdp {

// sum_i l(<x_i, beta>; y_i) + (lambda / 2) ||beta||^2 + nu <xi, beta>.
// Keeps a pointer to the dataset, which must outlive the objective.
class PerturbedObjective {
 public:
  PerturbedObjective(const Dataset& data, LossModel loss, double lambda,
                     double nu, Eigen::VectorXd xi);

  double Value(const Eigen::VectorXd& beta) const;
  Eigen::VectorXd Gradient(const Eigen::VectorXd& beta) const;

  // lambda + s R^2 n, an upper bound on the Hessian spectrum.
  double CurvatureBound() const;

  const Dataset& data() const { return *data_; }
  const LossModel& loss() const { return loss_; }
  double lambda() const { return lambda_; }
  double nu() const { return nu_; }
  const Eigen::VectorXd& xi() const { return xi_; }

 private:
  const Dataset* data_;
  LossModel loss_;
  double lambda_;
  double nu_;
  Eigen::VectorXd xi_;
};

struct GdOptions {
  // Stop once ||grad|| <= tolerance_scale * max(1, n).
  double tolerance_scale = 1e-9;
  int max_iterations = 1000000;
  double armijo_c = 1e-4;
  int max_halvings = 60;
};

struct GdResult {
  Eigen::VectorXd beta;
  double grad_norm = 0.0;
  int iterations = 0;
  double objective_value = 0.0;
};

// Full-batch gradient descent with Armijo backtracking from the step cap
// 2 / CurvatureBound(). Returns Internal on a stall, with the gradient norm
// in the message.
absl::StatusOr<GdResult> MinimizeGd(const PerturbedObjective& objective,
                                    const Eigen::VectorXd& start,
                                    const GdOptions& options = {});

}  // namespace propdp

#endif  // PROPDP_ERM_OPTIMIZER_H_
