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

#ifndef PROPDP_EXPERIMENT_DATA_GEN_H_
#define PROPDP_EXPERIMENT_DATA_GEN_H_

#include <cstdint>

#include "Eigen/Dense"
#include "propdp/experiment/config.h"
#include "propdp/theory/laws.h"

namespace propdp {

// n x d design with mean-zero entries of variance 1/d: +-1/sqrt(d),
// N(0, 1/d) or Uniform[-sqrt(3/d), sqrt(3/d)].
Eigen::MatrixXd GenDesign(int n, int d, DesignKind kind, uint64_t seed);

// Row-norm bound for a design: 1 for rademacher, sqrt(3) for
// bounded_uniform, the largest row norm of X for gaussian.
double DesignRadius(DesignKind kind, const Eigen::MatrixXd& X);

Eigen::VectorXd GenSignal(int d, const SignalLaw& law, uint64_t seed);

// y = X beta* + eps.
Eigen::VectorXd GenLinearLabels(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& beta_star,
                                const NoiseLaw& noise, uint64_t seed);

// y_i ~ Bernoulli(rho'(<x_i, beta*>)).
Eigen::VectorXd GenLogisticLabels(const Eigen::MatrixXd& X,
                                  const Eigen::VectorXd& beta_star,
                                  uint64_t seed);

}  // namespace propdp

#endif  // PROPDP_EXPERIMENT_DATA_GEN_H_
