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

#include "propdp/cli/manifest.h"

#include <ctime>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "propdp/cli/canonical_json.h"

#ifndef PROPDP_VERSION
#define PROPDP_VERSION "0.0.0"
#endif

namespace propdp {

std::string ToolVersion() { return PROPDP_VERSION; }

std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json ManifestToJson(const RunManifest& m) {
  return nlohmann::json{
      {"tool_version", m.tool_version},
      {"command", m.command},
      {"config_hash", m.config_hash},
      {"master_seed", m.master_seed},
      {"start_time", m.start_time},
      {"end_time", m.end_time},
      {"output_paths", m.output_paths},
      {"output_digests", m.output_digests},
      {"private_design", m.private_design},
  };
}

absl::Status WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::InvalidArgumentError(absl::StrCat("cannot write ", path));
  out << text;
  out.close();
  if (!out) return absl::InternalError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status DigestOutputs(RunManifest& manifest) {
  manifest.output_digests.clear();
  for (const std::string& path : manifest.output_paths) {
    absl::StatusOr<std::string> text = ReadTextFile(path);
    if (!text.ok()) return text.status();
    manifest.output_digests.push_back(Sha256Hex(*text));
  }
  return absl::OkStatus();
}

absl::Status WriteManifest(const RunManifest& manifest,
                           const std::string& path) {
  return WriteTextFile(path, ManifestToJson(manifest).dump(2) + "\n");
}

}  // namespace propdp
