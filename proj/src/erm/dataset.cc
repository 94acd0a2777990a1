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

#include "propdp/erm/dataset.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"

namespace propdp {

absl::StatusOr<Dataset> Dataset::Create(Eigen::MatrixXd X, Eigen::VectorXd y,
                                        double feature_radius) {
  if (X.rows() < 1 || X.cols() < 1) {
    return absl::InvalidArgumentError("dataset needs n, d >= 1.");
  }
  if (y.size() != X.rows()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "y has %d entries but X has %d rows.", y.size(), X.rows()));
  }
  if (!X.allFinite() || !y.allFinite()) {
    return absl::InvalidArgumentError("dataset contains non-finite values.");
  }
  if (!(feature_radius > 0.0) || !std::isfinite(feature_radius)) {
    return absl::InvalidArgumentError("feature radius should be positive.");
  }
  const Eigen::VectorXd norms = X.rowwise().norm();
  Eigen::Index worst = 0;
  const double largest = norms.maxCoeff(&worst);
  if (largest > feature_radius + 1e-9) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "row %d has norm %.17g above the bound %.17g.", worst, largest,
        feature_radius));
  }
  Dataset data;
  data.X = std::move(X);
  data.y = std::move(y);
  data.feature_radius = feature_radius;
  return data;
}

}  // namespace propdp
