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

#ifndef PROPDP_PRIVACY_PRIVACY_ACCOUNTING_H_
#define PROPDP_PRIVACY_PRIVACY_ACCOUNTING_H_

#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace propdp {

// Per-example loss bounds of a generalized linear model: |l'| <= lipschitz,
// 0 <= l'' <= smoothness, and feature rows bounded by feature_radius. The
// accountant applies the feature-radius rescaling internally.
struct GlmSensitivity {
  double lipschitz = 1.0;
  double smoothness = 1.0;
  double feature_radius = 1.0;

  static GlmSensitivity Huber(double L, double R) { return {L, 1.0, R}; }
  static GlmSensitivity Logistic(double R) { return {1.0, 0.25, R}; }
};

absl::Status ValidateSensitivity(const GlmSensitivity& glm);

enum class Mechanism { kObjective, kOutput, kNoisyGradientDescent };

struct PrivacyReport {
  Mechanism mechanism = Mechanism::kObjective;
  double epsilon = 0.0;
  double delta = 0.0;
  // (alpha, epsilon(alpha)) pairs.
  std::vector<std::pair<double, double>> rdp_curve;
  double zcdp_rho = 0.0;
  // True when the raw delta formula left [0, 1] and was clamped.
  bool delta_clamped = false;
};

// Hockey-stick divergence between N(r, 1) and N(0, 1) at level epsilon.
double HockeyStick(double epsilon, double ratio);

// zCDP parameter of the Gaussian mechanism with the given L2 sensitivity.
double GaussianMechanismZcdp(double sensitivity, double nu);

// Raw two-branch objective-perturbation delta, before clamping.
absl::StatusOr<double> ObjectivePerturbationDeltaRaw(double epsilon,
                                                     const GlmSensitivity& glm,
                                                     double lambda, double nu);

// Objective-perturbation delta clamped to [0, 1].
absl::StatusOr<double> ObjectivePerturbationDelta(double epsilon,
                                                  const GlmSensitivity& glm,
                                                  double lambda, double nu);

absl::StatusOr<double> ObjectivePerturbationRdp(double alpha,
                                                const GlmSensitivity& glm,
                                                double lambda, double nu);

absl::StatusOr<double> ObjectivePerturbationZcdp(const GlmSensitivity& glm,
                                                 double lambda, double nu);

// Output perturbation: Gaussian mechanism with sensitivity L R / lambda.
absl::StatusOr<double> OutputPerturbationDelta(double epsilon,
                                               const GlmSensitivity& glm,
                                               double lambda, double nu);

absl::StatusOr<double> OutputPerturbationZcdp(const GlmSensitivity& glm,
                                              double lambda, double nu);

// T-fold composition of the per-step Gaussian mechanism of noisy gradient
// descent (sensitivity L R).
absl::StatusOr<double> DpsgdZcdp(int T, const GlmSensitivity& glm, double nu);

// RDP to approximate DP conversion: epsilon + log(1/delta) / (alpha - 1).
absl::StatusOr<double> RdpToDp(double alpha, double epsilon_rdp, double delta);

// Orders {1 + 2^k / 100 : k = 0..20}.
std::vector<double> DefaultAlphaGrid();

struct MechanismSpec {
  Mechanism mechanism = Mechanism::kObjective;
  GlmSensitivity glm;
  double lambda = 1.0;
  double nu = 1.0;
  int steps = 1;
  double epsilon = 1.0;
  // Defaults to DefaultAlphaGrid() when empty.
  std::vector<double> alphas;
};

// Fills every field of a PrivacyReport for the given mechanism.
absl::StatusOr<PrivacyReport> ComputePrivacyReport(const MechanismSpec& spec);

}  // namespace propdp

#endif  // PROPDP_PRIVACY_PRIVACY_ACCOUNTING_H_
