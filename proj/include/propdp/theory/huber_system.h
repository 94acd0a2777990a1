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

// Two-equation fixed point describing Huber-loss objective perturbation in
// the proportional regime d/n -> delta, and the predictions derived from it.
//
//   sigma^2 = tau^2 ((1/delta) E[W]_L^2 + lambda^2 kappa^2 + nu^2)
//   tau     = (1/(lambda delta)) (delta - tau/(1+tau) P(|W| < L))
//
// with W = (sigma Z + eps) / (1 + tau), Z ~ N(0,1) independent of the noise
// eps. Both expectations are closed form for Gaussian mixture noise.

#ifndef PROPDP_THEORY_HUBER_SYSTEM_H_
#define PROPDP_THEORY_HUBER_SYSTEM_H_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "propdp/theory/laws.h"

namespace propdp {

using MetricMap = std::map<std::string, double>;

struct HuberProblem {
  double delta = 1.0;
  double lambda = 1.0;
  double nu = 0.0;
  double L = 1.0;
  SignalLaw signal = SignalLaw::Gaussian(1.0);
  NoiseLaw noise = NoiseLaw::Gaussian(0.0);
};

absl::Status ValidateHuberProblem(const HuberProblem& problem);

struct HuberSolveOptions {
  // When false the nu^2 term is dropped from the first equation.
  bool include_privacy_term = true;
};

struct HuberSolution {
  HuberProblem problem;
  double sigma_star = 0.0;
  double tau_star = 0.0;
  double residual_norm = 0.0;
  double jacobian_condition = 0.0;
  int iterations = 0;
};

// E[[W]_L^2] and P(|W| < L) at (sigma, tau).
struct HuberExpectations {
  double clipped_second_moment = 0.0;
  double interval_probability = 0.0;
};

HuberExpectations ComputeHuberExpectations(const HuberProblem& problem,
                                           double sigma, double tau);

// Residuals of the two equations written as lhs - rhs, given precomputed
// expectations.
Eigen::Vector2d HuberResidualFrom(const HuberProblem& problem, double sigma,
                                  double tau, const HuberExpectations& e,
                                  bool include_privacy_term = true);

Eigen::Vector2d HuberResidual(const HuberProblem& problem, double sigma,
                              double tau, bool include_privacy_term = true);

// Solves for (sigma*, tau*). Refuses lambda < 1e-8. Nonconvergence returns
// an Internal error describing the last iterate and its residual.
absl::StatusOr<HuberSolution> SolveHuberSystem(
    const HuberProblem& problem, const HuberSolveOptions& options = {});

// Every distinct root reached from the default start and the multistart
// seeds.
absl::StatusOr<std::vector<HuberSolution>> FindHuberRoots(
    const HuberProblem& problem);

// mse, bias, xi_corr and residual_trunc.
MetricMap HuberPredictions(const HuberSolution& solution);

// E f(beta0, xi0, u0) where u0 is the limiting law of a coordinate of
// beta_hat - beta*: tau (sqrt(E[W]_L^2 / delta) Z - lambda beta0 - nu xi0).
double ExpectHuberCoefficientLaw(
    const HuberSolution& solution,
    const std::function<double(double beta0, double xi0, double u0)>& f,
    int nodes = 40);

// E f(eps0, [W]_L), the limiting law of a coordinate of the noise paired
// with the truncated residual.
double ExpectHuberResidualLaw(
    const HuberSolution& solution,
    const std::function<double(double eps0, double clipped)>& f,
    int nodes = 120);

}  // namespace propdp

#endif  // PROPDP_THEORY_HUBER_SYSTEM_H_
