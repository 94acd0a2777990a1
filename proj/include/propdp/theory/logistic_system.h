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

// Three-equation fixed point for logistic-loss objective perturbation. With
// Z1, Z2 iid N(0,1) and p = prox_{gamma rho}(kappa alpha Z1 + sigma Z2):
//
//   sigma^2 = gamma^2 ((1/delta) E[2 rho'(-kappa Z1) rho'(p)^2] + nu^2)
//   alpha   = -(1/delta) E[2 rho''(-kappa Z1) p]
//   gamma   = (1/(lambda delta)) (delta - 1 + E[2 rho'(-kappa Z1) /
//                                              (1 + gamma rho''(p))])
//
// Expectations use a tensorized Gauss-Hermite rule.

#ifndef PROPDP_THEORY_LOGISTIC_SYSTEM_H_
#define PROPDP_THEORY_LOGISTIC_SYSTEM_H_

#include <functional>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "propdp/theory/huber_system.h"

namespace propdp {

inline constexpr int kLogisticQuadratureNodes = 80;

struct LogisticProblem {
  double delta = 1.0;
  double lambda = 1.0;
  double nu = 0.0;
  double kappa = 1.0;
};

absl::Status ValidateLogisticProblem(const LogisticProblem& problem);

// Largest tensor rule the solver refines to.
inline constexpr int kLogisticMaxQuadratureNodes = 640;

struct LogisticSolveOptions {
  bool include_privacy_term = true;
  // Starting rule size. The solve is repeated with twice the nodes, warm
  // started, while the residual under the doubled rule exceeds
  // kLogisticRefineTolerance, up to kLogisticMaxQuadratureNodes.
  int nodes = kLogisticQuadratureNodes;
};

inline constexpr double kLogisticRefineTolerance = 1e-9;

struct LogisticSolution {
  LogisticProblem problem;
  double alpha_star = 0.0;
  double sigma_star = 0.0;
  double gamma_star = 0.0;
  double residual_norm = 0.0;
  double jacobian_condition = 0.0;
  int iterations = 0;
  // Per-dimension size of the rule the solution satisfies.
  int nodes = kLogisticQuadratureNodes;
};

// The three expectations of the system at (alpha, sigma, gamma).
struct LogisticExpectations {
  // E[2 rho'(-kappa Z1) rho'(p)^2]
  double variance_term = 0.0;
  // E[2 rho''(-kappa Z1) p]
  double alignment_term = 0.0;
  // E[2 rho'(-kappa Z1) / (1 + gamma rho''(p))]
  double curvature_term = 0.0;
};

LogisticExpectations ComputeLogisticExpectations(
    const LogisticProblem& problem, double alpha, double sigma, double gamma,
    int nodes = kLogisticQuadratureNodes);

Eigen::Vector3d LogisticResidualFrom(const LogisticProblem& problem,
                                     double alpha, double sigma, double gamma,
                                     const LogisticExpectations& e,
                                     bool include_privacy_term = true);

Eigen::Vector3d LogisticResidual(const LogisticProblem& problem, double alpha,
                                 double sigma, double gamma,
                                 int nodes = kLogisticQuadratureNodes,
                                 bool include_privacy_term = true);

absl::StatusOr<LogisticSolution> SolveLogisticSystem(
    const LogisticProblem& problem, const LogisticSolveOptions& options = {});

absl::StatusOr<std::vector<LogisticSolution>> FindLogisticRoots(
    const LogisticProblem& problem);

// mse, bias, xi_corr and rho_diff. nodes = 0 uses solution.nodes.
MetricMap LogisticPredictions(const LogisticSolution& solution, int nodes = 0);

// Limiting mean of (rho'(kappa Z1) - v0)^2, where v0 = rho'(prox_{gamma
// rho}(alpha kappa Z1 + sigma Z2 + gamma y0)) and y0 | Z1 ~
// Bernoulli(rho'(kappa Z1)).
// nodes = 0 uses solution.nodes.
double LogisticRhoDiff(const LogisticSolution& solution, int nodes = 0);

// E f(beta0, xi0, b0) with beta0 ~ N(0, kappa^2) and b0 the limiting law
// of a coordinate of beta_hat: alpha beta0 + sqrt(sigma^2 - (gamma nu)^2) Z
// - gamma nu xi0.
double ExpectLogisticCoefficientLaw(
    const LogisticSolution& solution,
    const std::function<double(double beta0, double xi0, double b0)>& f,
    int nodes = 40);

}  // namespace propdp

#endif  // PROPDP_THEORY_LOGISTIC_SYSTEM_H_
