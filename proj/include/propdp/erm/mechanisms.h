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

#ifndef PROPDP_ERM_MECHANISMS_H_
#define PROPDP_ERM_MECHANISMS_H_

#include <cstdint>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "propdp/erm/dataset.h"
#include "propdp/erm/loss_model.h"
#include "propdp/erm/optimizer.h"

namespace propdp {

struct FitResult {
  Eigen::VectorXd beta_hat;
  // Unperturbed minimizer for output perturbation; equals beta_hat for
  // objective perturbation.
  Eigen::VectorXd beta_tilde;
  Eigen::VectorXd xi;
  double grad_norm = 0.0;
  int iterations = 0;
  double objective_value = 0.0;
};

// The standard normal perturbation vector of length d keyed by `seed`.
Eigen::VectorXd PerturbationVector(uint64_t seed, int d);

// Minimizes the objective with the linear term nu <xi, beta>.
absl::StatusOr<FitResult> FitObjectivePerturbation(
    const Dataset& data, const LossModel& loss, double lambda, double nu,
    uint64_t seed, const GdOptions& options = {});

// Minimizes the nu = 0 objective, then adds nu xi.
absl::StatusOr<FitResult> FitOutputPerturbation(
    const Dataset& data, const LossModel& loss, double lambda, double nu,
    uint64_t seed, const GdOptions& options = {});

struct NoisyGdTrajectory {
  // beta^(0) = 0 through beta^(T).
  std::vector<Eigen::VectorXd> iterates;
  // xi^(t) used in the step from t to t + 1.
  std::vector<Eigen::VectorXd> xis;
};

// beta^(t+1) = beta^(t) - step (sum_i grad l_i(beta^(t)) + nu xi^(t)) on a
// conditional-expectation loss.
absl::StatusOr<NoisyGdTrajectory> RunNoisyGd(const Dataset& data,
                                             const LossModel& loss,
                                             double step_size, double nu,
                                             int steps, uint64_t seed);

}  // namespace propdp

#endif  // PROPDP_ERM_MECHANISMS_H_
