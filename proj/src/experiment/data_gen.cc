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

#include "propdp/experiment/data_gen.h"

#include <cmath>

#include "propdp/common/counter_rng.h"
#include "propdp/losses/scalar_losses.h"

namespace propdp {

Eigen::MatrixXd GenDesign(int n, int d, DesignKind kind, uint64_t seed) {
  const CounterRng rng(seed, StreamTag::kDesign);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Eigen::MatrixXd X(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      const uint64_t k = static_cast<uint64_t>(i) * d + j;
      switch (kind) {
        case DesignKind::kRademacher:
          X(i, j) = (rng.Bits(k) >> 63) ? scale : -scale;
          break;
        case DesignKind::kGaussian:
          X(i, j) = scale * rng.Normal(k);
          break;
        case DesignKind::kBoundedUniform:
          X(i, j) = std::sqrt(3.0) * scale * (2.0 * rng.Uniform(k) - 1.0);
          break;
      }
    }
  }
  return X;
}

double DesignRadius(DesignKind kind, const Eigen::MatrixXd& X) {
  switch (kind) {
    case DesignKind::kRademacher:
      return 1.0;
    case DesignKind::kBoundedUniform:
      return std::sqrt(3.0);
    case DesignKind::kGaussian:
      return X.rows() == 0 ? 1.0 : X.rowwise().norm().maxCoeff();
  }
  return 1.0;
}

Eigen::VectorXd GenSignal(int d, const SignalLaw& law, uint64_t seed) {
  Eigen::VectorXd beta(d);
  for (int j = 0; j < d; ++j) beta[j] = law.Sample(seed, StreamTag::kSignal, j);
  return beta;
}

Eigen::VectorXd GenLinearLabels(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& beta_star,
                                const NoiseLaw& noise, uint64_t seed) {
  Eigen::VectorXd y = X * beta_star;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y[i] += noise.Sample(seed, StreamTag::kNoise, i);
  }
  return y;
}

Eigen::VectorXd GenLogisticLabels(const Eigen::MatrixXd& X,
                                  const Eigen::VectorXd& beta_star,
                                  uint64_t seed) {
  const CounterRng rng(seed, StreamTag::kLabels);
  const Eigen::VectorXd eta = X * beta_star;
  Eigen::VectorXd y(eta.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y[i] = rng.Uniform(i) < LogisticRhoPrime(eta[i]) ? 1.0 : 0.0;
  }
  return y;
}

}  // namespace propdp
