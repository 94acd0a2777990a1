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

#ifndef PROPDP_EXPERIMENT_METRICS_H_
#define PROPDP_EXPERIMENT_METRICS_H_

#include "Eigen/Dense"
#include "propdp/experiment/config.h"
#include "propdp/theory/huber_system.h"

namespace propdp {

inline constexpr char kEstimationError[] = "estimation_error";
inline constexpr char kBias[] = "bias";
inline constexpr char kXiCorrelation[] = "xi_correlation";
inline constexpr char kTruncatedResidual[] = "truncated_residual";
inline constexpr char kRhoDiff[] = "rho_diff";

struct MetricInputs {
  Eigen::VectorXd beta_hat;
  Eigen::VectorXd beta_star;
  // Unperturbed minimizer; used for xi_correlation under output
  // perturbation.
  Eigen::VectorXd beta_tilde;
  Eigen::VectorXd xi;
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
};

// estimation_error = ||beta_hat - beta*||^2 / d, bias = <beta_hat, beta*> / d,
// xi_correlation = <beta_hat - ref, xi> / d with ref = beta* (objective) or
// beta_tilde (output), plus truncated_residual = ||[y - X beta_hat]_L||^2 / n
// for Huber or rho_diff = ||rho'(X beta*) - rho'(X beta_hat)||^2 / n for
// logistic.
MetricMap EmpiricalMetrics(const MetricInputs& in, ModelKind model, double L);

// Per-iterate metric name, e.g. "estimation_error@2".
std::string IterateMetric(const char* base, int t);

}  // namespace propdp

#endif  // PROPDP_EXPERIMENT_METRICS_H_
