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

#include "propdp/erm/mechanisms.h"

#include <cmath>
#include <utility>

#include "propdp/common/counter_rng.h"

namespace propdp {
namespace {

Eigen::VectorXd NormalVector(uint64_t seed, StreamTag tag, uint64_t stream,
                             int d) {
  const CounterRng rng(seed, tag, stream);
  Eigen::VectorXd v(d);
  for (int j = 0; j < d; ++j) v[j] = rng.Normal(j);
  return v;
}

absl::Status ValidateFit(const LossModel& loss, double lambda, double nu) {
  if (!std::isfinite(lambda) || !(lambda > 0.0)) {
    return absl::InvalidArgumentError("lambda should be positive.");
  }
  if (!std::isfinite(nu) || !(nu >= 0.0)) {
    return absl::InvalidArgumentError("nu should be nonnegative.");
  }
  if (loss.kind != LossKind::kHuber && loss.kind != LossKind::kLogistic) {
    return absl::InvalidArgumentError(
        "perturbation fits take the huber or logistic loss.");
  }
  if (loss.kind == LossKind::kHuber &&
      (!std::isfinite(loss.L) || !(loss.L > 0.0))) {
    return absl::InvalidArgumentError("L should be positive.");
  }
  return absl::OkStatus();
}

FitResult FromGd(GdResult gd, Eigen::VectorXd xi) {
  FitResult fit;
  fit.beta_tilde = gd.beta;
  fit.beta_hat = std::move(gd.beta);
  fit.xi = std::move(xi);
  fit.grad_norm = gd.grad_norm;
  fit.iterations = gd.iterations;
  fit.objective_value = gd.objective_value;
  return fit;
}

}  // namespace

Eigen::VectorXd PerturbationVector(uint64_t seed, int d) {
  return NormalVector(seed, StreamTag::kPerturbation, 0, d);
}

absl::StatusOr<FitResult> FitObjectivePerturbation(
    const Dataset& data, const LossModel& loss, double lambda, double nu,
    uint64_t seed, const GdOptions& options) {
  if (absl::Status s = ValidateFit(loss, lambda, nu); !s.ok()) return s;
  Eigen::VectorXd xi = PerturbationVector(seed, data.d());
  const PerturbedObjective objective(data, loss, lambda, nu, xi);
  absl::StatusOr<GdResult> gd =
      MinimizeGd(objective, Eigen::VectorXd::Zero(data.d()), options);
  if (!gd.ok()) return gd.status();
  return FromGd(*std::move(gd), std::move(xi));
}

absl::StatusOr<FitResult> FitOutputPerturbation(
    const Dataset& data, const LossModel& loss, double lambda, double nu,
    uint64_t seed, const GdOptions& options) {
  if (absl::Status s = ValidateFit(loss, lambda, nu); !s.ok()) return s;
  const PerturbedObjective objective(data, loss, lambda, 0.0,
                                     Eigen::VectorXd::Zero(data.d()));
  absl::StatusOr<GdResult> gd =
      MinimizeGd(objective, Eigen::VectorXd::Zero(data.d()), options);
  if (!gd.ok()) return gd.status();
  FitResult fit = FromGd(*std::move(gd), PerturbationVector(seed, data.d()));
  fit.beta_hat = fit.beta_tilde + nu * fit.xi;
  return fit;
}

absl::StatusOr<NoisyGdTrajectory> RunNoisyGd(const Dataset& data,
                                             const LossModel& loss,
                                             double step_size, double nu,
                                             int steps, uint64_t seed) {
  if (!loss.is_conditional_expectation()) {
    return absl::InvalidArgumentError(
        "noisy gradient descent takes a conditional-expectation loss.");
  }
  if (steps < 0) return absl::InvalidArgumentError("steps should be >= 0.");
  if (!std::isfinite(nu) || !(nu >= 0.0)) {
    return absl::InvalidArgumentError("nu should be nonnegative.");
  }
  NoisyGdTrajectory out;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(data.d());
  Eigen::VectorXd slopes(data.n());
  out.iterates.push_back(beta);
  for (int t = 0; t < steps; ++t) {
    const Eigen::VectorXd eta = data.X * beta;
    for (int i = 0; i < data.n(); ++i) {
      slopes[i] = LossDerivative(loss, eta[i], data.y[i]);
    }
    Eigen::VectorXd xi = NormalVector(seed, StreamTag::kGradientNoise,
                                      static_cast<uint64_t>(t), data.d());
    beta -= step_size * (data.X.transpose() * slopes + nu * xi);
    out.iterates.push_back(beta);
    out.xis.push_back(std::move(xi));
  }
  return out;
}

}  // namespace propdp
