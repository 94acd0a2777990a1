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

#ifndef PROPDP_CLI_MANIFEST_H_
#define PROPDP_CLI_MANIFEST_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace propdp {

std::string ToolVersion();

struct RunManifest {
  std::string tool_version;
  std::string command;
  // SHA-256 of the canonical JSON of the effective configuration.
  std::string config_hash;
  uint64_t master_seed = 0;
  // RFC 3339 UTC.
  std::string start_time;
  std::string end_time;
  std::vector<std::string> output_paths;
  // SHA-256 of each output file, parallel to output_paths.
  std::vector<std::string> output_digests;
  // False when any run used a design without a row-norm bound.
  bool private_design = true;
};

std::string UtcTimestamp();

nlohmann::json ManifestToJson(const RunManifest& manifest);

// Fills output_digests from the files on disk.
absl::Status DigestOutputs(RunManifest& manifest);

// Writes `text` to `path`, replacing any existing file.
absl::Status WriteTextFile(const std::string& path, const std::string& text);

absl::StatusOr<std::string> ReadTextFile(const std::string& path);

// Writes the manifest as pretty-printed JSON.
absl::Status WriteManifest(const RunManifest& manifest,
                           const std::string& path);

}  // namespace propdp

#endif  // PROPDP_CLI_MANIFEST_H_
