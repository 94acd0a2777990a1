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

#ifndef PROPDP_EXPERIMENT_CONFIG_H_
#define PROPDP_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "propdp/theory/laws.h"

namespace propdp {

enum class ModelKind {
  kHuberObjective,
  kHuberOutput,
  kLogisticObjective,
  kLogisticOutput,
  kHuberDpsgdCe,
  kLogisticDpsgdCe,
};

enum class DesignKind { kRademacher, kGaussian, kBoundedUniform };

absl::StatusOr<ModelKind> ParseModel(absl::string_view name);
std::string ModelName(ModelKind model);
absl::StatusOr<DesignKind> ParseDesign(absl::string_view name);
std::string DesignName(DesignKind design);

bool IsHuber(ModelKind model);
bool IsOutputPerturbation(ModelKind model);
bool IsNoisyGd(ModelKind model);

// Gaussian designs have unbounded rows, so their runs carry no privacy
// guarantee.
bool IsPrivateDesign(DesignKind design);

struct GridPoint {
  int n = 0;
  int d = 0;
  double nu = 0.0;
  // d / n of the integer sizes.
  double delta() const { return static_cast<double>(d) / n; }
};

struct ExperimentConfig {
  std::string name;
  ModelKind model = ModelKind::kHuberObjective;
  DesignKind design = DesignKind::kRademacher;

  // Either explicit (n, d) pairs or a sweep of n / (n + d) at fixed n * d.
  std::vector<std::pair<int, int>> sizes;
  int total = 1000;
  std::vector<double> ratios;
  std::vector<double> nus = {0.0};

  double kappa = 1.0;
  double sigma_eps = 0.2;
  // Optional law strings overriding N(0, kappa^2) and N(0, sigma_eps^2).
  std::string signal;
  std::string noise;

  double L = 10.0;
  double lambda = 1.0;

  // Noisy gradient descent. The step is step_size, or step_scale / (1 +
  // delta) when step_scale > 0.
  double step_size = 0.0;
  double step_scale = 0.0;
  int steps = 1;
  int64_t se_samples = 200000;

  int replicates = 1;
  uint64_t seed = 0;
};

// Checks the model, law and scale fields; the grid and replicates are not
// inspected.
absl::Status ValidateModelParameters(const ExperimentConfig& config);

// ValidateModelParameters plus the grid and replicate count.
absl::Status ValidateExperimentConfig(const ExperimentConfig& config);

// Grid points ordered by nu, then by size.
std::vector<GridPoint> ExpandGrid(const ExperimentConfig& config);

// (n, d) with n * d ~ total and n / (n + d) ~ ratio, each rounded and at
// least 2.
std::pair<int, int> SizesForRatio(int total, double ratio);

absl::StatusOr<SignalLaw> ConfigSignal(const ExperimentConfig& config);
absl::StatusOr<NoiseLaw> ConfigNoise(const ExperimentConfig& config);

double StepSizeFor(const ExperimentConfig& config, double delta);

}  // namespace propdp

#endif  // PROPDP_EXPERIMENT_CONFIG_H_
