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

#include "propdp/experiment/config.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace propdp {
namespace {

struct ModelEntry {
  ModelKind kind;
  const char* name;
};

constexpr ModelEntry kModels[] = {
    {ModelKind::kHuberObjective, "huber_objective"},
    {ModelKind::kHuberOutput, "huber_output"},
    {ModelKind::kLogisticObjective, "logistic_objective"},
    {ModelKind::kLogisticOutput, "logistic_output"},
    {ModelKind::kHuberDpsgdCe, "huber_dpsgd_ce"},
    {ModelKind::kLogisticDpsgdCe, "logistic_dpsgd_ce"},
};

struct DesignEntry {
  DesignKind kind;
  const char* name;
};

constexpr DesignEntry kDesigns[] = {
    {DesignKind::kRademacher, "rademacher"},
    {DesignKind::kGaussian, "gaussian"},
    {DesignKind::kBoundedUniform, "bounded_uniform"},
};

bool NonNegative(double v) { return std::isfinite(v) && v >= 0.0; }
bool Positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

absl::StatusOr<ModelKind> ParseModel(absl::string_view name) {
  for (const ModelEntry& e : kModels) {
    if (name == e.name) return e.kind;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown model: ", name));
}

std::string ModelName(ModelKind model) {
  for (const ModelEntry& e : kModels) {
    if (e.kind == model) return e.name;
  }
  return "";
}

absl::StatusOr<DesignKind> ParseDesign(absl::string_view name) {
  for (const DesignEntry& e : kDesigns) {
    if (name == e.name) return e.kind;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown design: ", name));
}

std::string DesignName(DesignKind design) {
  for (const DesignEntry& e : kDesigns) {
    if (e.kind == design) return e.name;
  }
  return "";
}

bool IsHuber(ModelKind model) {
  return model == ModelKind::kHuberObjective ||
         model == ModelKind::kHuberOutput || model == ModelKind::kHuberDpsgdCe;
}

bool IsOutputPerturbation(ModelKind model) {
  return model == ModelKind::kHuberOutput ||
         model == ModelKind::kLogisticOutput;
}

bool IsNoisyGd(ModelKind model) {
  return model == ModelKind::kHuberDpsgdCe ||
         model == ModelKind::kLogisticDpsgdCe;
}

bool IsPrivateDesign(DesignKind design) {
  return design != DesignKind::kGaussian;
}

absl::Status ValidateExperimentConfig(const ExperimentConfig& config) {
  if (absl::Status s = ValidateModelParameters(config); !s.ok()) return s;
  if (config.replicates < 1) {
    return absl::InvalidArgumentError("replicates should be at least 1.");
  }
  if (config.sizes.empty() && config.ratios.empty()) {
    return absl::InvalidArgumentError("the grid has no sizes or ratios.");
  }
  for (const auto& [n, d] : config.sizes) {
    if (n < 1 || d < 1) {
      return absl::InvalidArgumentError("grid sizes should be positive.");
    }
  }
  if (!config.ratios.empty() && config.total < 4) {
    return absl::InvalidArgumentError("total should be at least 4.");
  }
  for (double r : config.ratios) {
    if (!(r > 0.0 && r < 1.0)) {
      return absl::InvalidArgumentError("ratios should lie in (0, 1).");
    }
  }
  return absl::OkStatus();
}

absl::Status ValidateModelParameters(const ExperimentConfig& config) {
  if (config.nus.empty()) {
    return absl::InvalidArgumentError("nu list is empty.");
  }
  for (double nu : config.nus) {
    if (!NonNegative(nu)) {
      return absl::InvalidArgumentError("nu should be nonnegative.");
    }
  }
  if (!NonNegative(config.kappa) || !NonNegative(config.sigma_eps)) {
    return absl::InvalidArgumentError("kappa and sigma_eps should be >= 0.");
  }
  if (IsHuber(config.model) && !Positive(config.L)) {
    return absl::InvalidArgumentError("L should be positive.");
  }
  if (IsNoisyGd(config.model)) {
    if (config.steps < 0) {
      return absl::InvalidArgumentError("steps should be nonnegative.");
    }
    if (!Positive(config.step_size) && !Positive(config.step_scale)) {
      return absl::InvalidArgumentError(
          "noisy gradient descent needs step_size or step_scale.");
    }
    if (config.se_samples < 1) {
      return absl::InvalidArgumentError("se_samples should be positive.");
    }
  } else if (!Positive(config.lambda)) {
    return absl::InvalidArgumentError("lambda should be positive.");
  }
  if (absl::StatusOr<SignalLaw> s = ConfigSignal(config); !s.ok()) {
    return s.status();
  }
  if (absl::StatusOr<NoiseLaw> s = ConfigNoise(config); !s.ok()) {
    return s.status();
  }
  return absl::OkStatus();
}

std::pair<int, int> SizesForRatio(int total, double ratio) {
  const double n = std::sqrt(total * ratio / (1.0 - ratio));
  const double d = std::sqrt(total * (1.0 - ratio) / ratio);
  return {std::max(2, static_cast<int>(std::lround(n))),
          std::max(2, static_cast<int>(std::lround(d)))};
}

std::vector<GridPoint> ExpandGrid(const ExperimentConfig& config) {
  std::vector<std::pair<int, int>> sizes = config.sizes;
  for (double r : config.ratios) sizes.push_back(SizesForRatio(config.total, r));
  std::vector<GridPoint> grid;
  for (double nu : config.nus) {
    for (const auto& [n, d] : sizes) grid.push_back({n, d, nu});
  }
  return grid;
}

absl::StatusOr<SignalLaw> ConfigSignal(const ExperimentConfig& config) {
  if (!config.signal.empty()) return SignalLaw::Parse(config.signal);
  return SignalLaw::Gaussian(config.kappa);
}

absl::StatusOr<NoiseLaw> ConfigNoise(const ExperimentConfig& config) {
  if (!config.noise.empty()) return NoiseLaw::Parse(config.noise);
  return NoiseLaw::Gaussian(config.sigma_eps);
}

double StepSizeFor(const ExperimentConfig& config, double delta) {
  if (config.step_scale > 0.0) return config.step_scale / (1.0 + delta);
  return config.step_size;
}

}  // namespace propdp
