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

#include "propdp/experiment/metrics.h"

#include "absl/strings/str_cat.h"
#include "propdp/losses/scalar_losses.h"

namespace propdp {

MetricMap EmpiricalMetrics(const MetricInputs& in, ModelKind model, double L) {
  const double d = static_cast<double>(in.beta_star.size());
  MetricMap out;
  out[kEstimationError] = (in.beta_hat - in.beta_star).squaredNorm() / d;
  out[kBias] = in.beta_hat.dot(in.beta_star) / d;
  if (in.xi.size() == in.beta_hat.size()) {
    const Eigen::VectorXd& ref =
        IsOutputPerturbation(model) ? in.beta_tilde : in.beta_star;
    out[kXiCorrelation] = (in.beta_hat - ref).dot(in.xi) / d;
  }
  const Eigen::VectorXd eta = in.X * in.beta_hat;
  const double n = static_cast<double>(eta.size());
  if (IsHuber(model)) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      const double r = Clip(in.y[i] - eta[i], L);
      total += r * r;
    }
    out[kTruncatedResidual] = total / n;
  } else {
    const Eigen::VectorXd truth = in.X * in.beta_star;
    double total = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      const double diff = LogisticRhoPrime(truth[i]) - LogisticRhoPrime(eta[i]);
      total += diff * diff;
    }
    out[kRhoDiff] = total / n;
  }
  return out;
}

std::string IterateMetric(const char* base, int t) {
  return absl::StrCat(base, "@", t);
}

}  // namespace propdp
