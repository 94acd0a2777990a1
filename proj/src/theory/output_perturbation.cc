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

#include "propdp/theory/output_perturbation.h"

#include <cmath>
#include <utility>

namespace propdp {
namespace {

absl::StatusOr<MetricMap> Shift(MetricMap base_metrics, double base_nu,
                                double nu) {
  if (base_nu != 0.0) {
    return absl::InvalidArgumentError(
        "output perturbation needs the nu = 0 base solution.");
  }
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    return absl::InvalidArgumentError("nu should be nonnegative.");
  }
  MetricMap out;
  out["mse"] = base_metrics.at("mse") + nu * nu;
  out["bias"] = base_metrics.at("bias");
  out["xi_corr"] = nu;
  return out;
}

}  // namespace

absl::StatusOr<MetricMap> OutputPerturbationPredictions(
    const HuberSolution& base, double nu) {
  return Shift(HuberPredictions(base), base.problem.nu, nu);
}

absl::StatusOr<MetricMap> OutputPerturbationPredictions(
    const LogisticSolution& base, double nu) {
  const double kappa_sq = base.problem.kappa * base.problem.kappa;
  const double shrink = 1.0 - base.alpha_star;
  MetricMap m = {
      {"mse", shrink * shrink * kappa_sq + base.sigma_star * base.sigma_star},
      {"bias", base.alpha_star * kappa_sq},
  };
  return Shift(std::move(m), base.problem.nu, nu);
}

}  // namespace propdp
