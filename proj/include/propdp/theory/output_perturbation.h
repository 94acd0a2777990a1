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

#ifndef PROPDP_THEORY_OUTPUT_PERTURBATION_H_
#define PROPDP_THEORY_OUTPUT_PERTURBATION_H_

#include "absl/status/statusor.h"
#include "propdp/theory/huber_system.h"
#include "propdp/theory/logistic_system.h"

namespace propdp {

// Predictions for beta_tilde + nu xi, where beta_tilde is the unperturbed
// minimizer described by `base` (solved with nu = 0): mse gains nu^2, bias is
// unchanged and xi_corr = nu.
absl::StatusOr<MetricMap> OutputPerturbationPredictions(
    const HuberSolution& base, double nu);
absl::StatusOr<MetricMap> OutputPerturbationPredictions(
    const LogisticSolution& base, double nu);

}  // namespace propdp

#endif  // PROPDP_THEORY_OUTPUT_PERTURBATION_H_
