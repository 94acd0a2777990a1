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

#ifndef PROPDP_CLI_COMMANDS_H_
#define PROPDP_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "propdp/experiment/config.h"
#include "propdp/privacy/privacy_accounting.h"

namespace propdp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

// 0 for OK; 2 for InvalidArgument, NotFound, OutOfRange and
// FailedPrecondition; 3 otherwise.
int ExitCodeFor(const absl::Status& status);

// Parses PROPDP_SEED when set.
absl::StatusOr<std::optional<uint64_t>> SeedFromEnvironment();

// One JSON object describing the solution and predictions at (delta, nu).
// Solver failures are reported in an "error" member.
nlohmann::json TheoryPoint(const ExperimentConfig& config, double delta,
                           double nu, uint64_t stream);

// Writes one JSON line per (nu, delta). Uses `deltas` when non-empty and
// the aspect ratios of the config grid otherwise.
absl::Status RunTheory(const ExperimentConfig& config,
                       const std::vector<double>& deltas, std::ostream& out);

// Streams the record CSV of every experiment under one header.
absl::Status RunSimulate(const std::vector<ExperimentConfig>& configs,
                         int jobs, std::ostream& out);

absl::StatusOr<Mechanism> ParseMechanism(const std::string& name);
std::string MechanismName(Mechanism mechanism);

absl::StatusOr<nlohmann::json> RunPrivacy(const MechanismSpec& spec);

}  // namespace propdp

#endif  // PROPDP_CLI_COMMANDS_H_
