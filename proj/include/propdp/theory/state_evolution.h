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

// Dynamical mean-field recursion for noisy full-batch gradient descent on
// the conditional-expectation losses. The state is theta^t = (beta^t_0,
// beta*_0) in R^2 and the row-side field is eta^t in R^2. Writing D(eta) for
// the Jacobian of the per-sample gradient nonlinearity f (first row only):
//
//   eta^t   = omega^t - step sum_{k<t} R_theta(t,k) [f(eta^k); 0]
//   Gamma^t = -(step/delta) E[D(eta^t)]
//   R_g(t,s) = -(step/delta) E[D(eta^t) d eta^t / d omega^s]
//   C_g(t,s) = (step^2/delta) E[f(eta^t) f(eta^s)] e1 e1^T
//   theta^{t+1} = (I + Gamma^t) theta^t - step nu [xi^t; 0]
//                 + sum_{k<t} R_g(t,k) theta^k + u^t
//
// omega is Gaussian with covariance C_theta and u is Gaussian with
// covariance C_g. Expectations are Monte Carlo averages over sampled paths.

#ifndef PROPDP_THEORY_STATE_EVOLUTION_H_
#define PROPDP_THEORY_STATE_EVOLUTION_H_

#include <cstdint>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "propdp/theory/laws.h"

namespace propdp {

inline constexpr int kMaxStateEvolutionSteps = 16;
inline constexpr int64_t kMinStateEvolutionSamples = 10000;

struct StateEvolutionConfig {
  int steps = 1;
  double step_size = 0.5;
  double nu = 0.0;
  double delta = 1.0;
  SignalLaw signal = SignalLaw::Gaussian(1.0);
  // Huber only.
  NoiseLaw noise = NoiseLaw::PointMass(0.0);
  double L = 1.0;
  int64_t mc_samples = 100000;
  uint64_t seed = 0;
};

struct StateEvolutionTrace {
  int steps = 0;
  int64_t mc_samples = 0;
  // Square tables indexed [t][s]. r_theta and c_theta have steps + 1 rows,
  // r_g and c_g have `steps` rows. r_theta[t][s] is the response of
  // theta^t to a field entering the update at step s, so r_theta[s+1][s] = I
  // and r_theta[t][s] = 0 for t <= s.
  std::vector<std::vector<Eigen::Matrix2d>> r_theta;
  std::vector<std::vector<Eigen::Matrix2d>> r_g;
  std::vector<std::vector<Eigen::Matrix2d>> c_theta;
  std::vector<std::vector<Eigen::Matrix2d>> c_g;
  std::vector<Eigen::Matrix2d> gamma;
  // Indexed by iterate t = 0..steps.
  std::vector<double> mse;
  std::vector<double> mse_stderr;
  std::vector<double> bias;
  std::vector<double> bias_stderr;
};

absl::StatusOr<StateEvolutionTrace> StateEvolutionHuber(
    const StateEvolutionConfig& config);

absl::StatusOr<StateEvolutionTrace> StateEvolutionLogistic(
    const StateEvolutionConfig& config);

// Factor A with A A^T = cov. Eigenvalues in [-1e-8, 0) are treated as zero;
// anything more negative is an Internal error.
absl::StatusOr<Eigen::MatrixXd> CovarianceFactor(const Eigen::MatrixXd& cov);

}  // namespace propdp

#endif  // PROPDP_THEORY_STATE_EVOLUTION_H_
