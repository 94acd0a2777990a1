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

#ifndef PROPDP_ERM_DATASET_H_
#define PROPDP_ERM_DATASET_H_

#include "Eigen/Dense"
#include "absl/status/statusor.h"

namespace propdp {

// Design matrix with one example per row, responses or labels, and the
// row-norm bound R used by the privacy analysis.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  double feature_radius = 1.0;

  int n() const { return static_cast<int>(X.rows()); }
  int d() const { return static_cast<int>(X.cols()); }

  // Validates shapes, finiteness and ||x_i|| <= R + 1e-9. Rows are never
  // projected.
  static absl::StatusOr<Dataset> Create(Eigen::MatrixXd X, Eigen::VectorXd y,
                                        double feature_radius);
};

}  // namespace propdp

#endif  // PROPDP_ERM_DATASET_H_
