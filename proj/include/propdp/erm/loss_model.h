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

#ifndef PROPDP_ERM_LOSS_MODEL_H_
#define PROPDP_ERM_LOSS_MODEL_H_

#include <string>

#include "absl/status/statusor.h"
#include "propdp/theory/laws.h"

namespace propdp {

enum class LossKind {
  kHuber,
  kLogistic,
  // Conditional-expectation variants used by noisy gradient descent: the
  // loss is averaged over the label noise given the noiseless response.
  kHuberCe,
  kLogisticCe,
};

// A per-example loss l(eta; y) of the linear predictor eta = <x, beta>.
struct LossModel {
  LossKind kind = LossKind::kHuber;
  double L = 1.0;
  NoiseLaw noise = NoiseLaw::PointMass(0.0);

  static LossModel Huber(double L) { return {LossKind::kHuber, L, NoiseLaw::PointMass(0.0)}; }
  static LossModel Logistic() { return {LossKind::kLogistic, 1.0, NoiseLaw::PointMass(0.0)}; }
  static LossModel HuberCe(double L, NoiseLaw noise) { return {LossKind::kHuberCe, L, noise}; }
  static LossModel LogisticCe() { return {LossKind::kLogisticCe, 1.0, NoiseLaw::PointMass(0.0)}; }

  // Upper bound on d^2 l / d eta^2.
  double smoothness() const;
  bool is_conditional_expectation() const {
    return kind == LossKind::kHuberCe || kind == LossKind::kLogisticCe;
  }
  std::string name() const;
};

// l(eta; y). The Huber conditional-expectation value uses a 120-node
// Gauss-Legendre rule split at the kinks of H_L.
double LossValue(const LossModel& loss, double eta, double y);

// d l(eta; y) / d eta.
double LossDerivative(const LossModel& loss, double eta, double y);

}  // namespace propdp

#endif  // PROPDP_ERM_LOSS_MODEL_H_
