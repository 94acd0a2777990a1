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

#ifndef PROPDP_CLI_CONFIG_IO_H_
#define PROPDP_CLI_CONFIG_IO_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "propdp/experiment/config.h"

namespace propdp {

// Reads and parses a JSON file. Missing files are NotFound, malformed text
// is InvalidArgument.
absl::StatusOr<nlohmann::json> ReadJsonFile(const std::string& path);

absl::StatusOr<nlohmann::json> ParseJsonText(const std::string& text);

// Keys: name, model, design, sizes ([[n, d], ...]), total, ratios, nu
// (number or list), kappa, sigma_eps, signal, noise, L, lambda, step_size,
// step_scale, steps, se_samples, replicates, seed. Unknown keys are
// rejected. The result is not validated.
absl::StatusOr<ExperimentConfig> ExperimentConfigFromJson(
    const nlohmann::json& j);

// Every field, with nu written as a list.
nlohmann::json ExperimentConfigToJson(const ExperimentConfig& config);

// A document is either one experiment object or an object whose
// "experiments" member lists them. `patch` is merged into each experiment
// object before parsing.
absl::StatusOr<std::vector<ExperimentConfig>> ExperimentsFromDocument(
    const nlohmann::json& doc, const nlohmann::json& patch = nullptr);

}  // namespace propdp

#endif  // PROPDP_CLI_CONFIG_IO_H_
