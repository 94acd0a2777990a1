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

#include "propdp/cli/config_io.h"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>
#include <utility>

#include "absl/strings/str_cat.h"

namespace propdp {
namespace {

using nlohmann::json;

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> kKeys = {
      "name",  "model",  "design",    "sizes",      "total",
      "ratios", "nu",    "kappa",     "sigma_eps",  "signal",
      "noise", "L",      "lambda",    "step_size",  "step_scale",
      "steps", "se_samples", "replicates", "seed"};
  return kKeys;
}

absl::Status TypeError(const std::string& key, const char* expected) {
  return absl::InvalidArgumentError(
      absl::StrCat("config field '", key, "' should be ", expected, "."));
}

absl::Status ReadNumber(const json& j, const std::string& key, double* out) {
  if (!j.contains(key)) return absl::OkStatus();
  if (!j[key].is_number()) return TypeError(key, "a number");
  *out = j[key].get<double>();
  return absl::OkStatus();
}

template <typename Int>
absl::Status ReadInteger(const json& j, const std::string& key, Int* out) {
  if (!j.contains(key)) return absl::OkStatus();
  if (!j[key].is_number_integer()) return TypeError(key, "an integer");
  if (std::is_unsigned_v<Int> && !j[key].is_number_unsigned()) {
    return TypeError(key, "a nonnegative integer");
  }
  *out = j[key].get<Int>();
  return absl::OkStatus();
}

absl::Status ReadString(const json& j, const std::string& key,
                        std::string* out) {
  if (!j.contains(key)) return absl::OkStatus();
  if (!j[key].is_string()) return TypeError(key, "a string");
  *out = j[key].get<std::string>();
  return absl::OkStatus();
}

absl::Status ReadNumberList(const json& j, const std::string& key,
                            std::vector<double>* out) {
  if (!j.contains(key)) return absl::OkStatus();
  const json& v = j[key];
  if (v.is_number()) {
    *out = {v.get<double>()};
    return absl::OkStatus();
  }
  if (!v.is_array()) return TypeError(key, "a number or a list of numbers");
  out->clear();
  for (const json& e : v) {
    if (!e.is_number()) return TypeError(key, "a list of numbers");
    out->push_back(e.get<double>());
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<json> ParseJsonText(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError("config is not valid JSON.");
  }
  return j;
}

absl::StatusOr<json> ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<json> j = ParseJsonText(buffer.str());
  if (!j.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", j.status().message()));
  }
  return j;
}

absl::StatusOr<ExperimentConfig> ExperimentConfigFromJson(const json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("experiment config should be an object.");
  }
  for (const auto& [key, value] : j.items()) {
    if (!KnownKeys().count(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown config field '", key, "'."));
    }
  }
  ExperimentConfig c;
  std::string model = ModelName(c.model);
  std::string design = DesignName(c.design);
  absl::Status s;
  for (absl::Status step : {
           ReadString(j, "name", &c.name),
           ReadString(j, "model", &model),
           ReadString(j, "design", &design),
           ReadInteger(j, "total", &c.total),
           ReadNumberList(j, "ratios", &c.ratios),
           ReadNumberList(j, "nu", &c.nus),
           ReadNumber(j, "kappa", &c.kappa),
           ReadNumber(j, "sigma_eps", &c.sigma_eps),
           ReadString(j, "signal", &c.signal),
           ReadString(j, "noise", &c.noise),
           ReadNumber(j, "L", &c.L),
           ReadNumber(j, "lambda", &c.lambda),
           ReadNumber(j, "step_size", &c.step_size),
           ReadNumber(j, "step_scale", &c.step_scale),
           ReadInteger(j, "steps", &c.steps),
           ReadInteger(j, "se_samples", &c.se_samples),
           ReadInteger(j, "replicates", &c.replicates),
           ReadInteger(j, "seed", &c.seed),
       }) {
    if (!step.ok()) return step;
  }
  if (j.contains("sizes")) {
    const json& sizes = j["sizes"];
    if (!sizes.is_array()) return TypeError("sizes", "a list of [n, d] pairs");
    for (const json& pair : sizes) {
      if (!pair.is_array() || pair.size() != 2 ||
          !pair[0].is_number_integer() || !pair[1].is_number_integer()) {
        return TypeError("sizes", "a list of [n, d] integer pairs");
      }
      c.sizes.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
  }
  absl::StatusOr<ModelKind> m = ParseModel(model);
  if (!m.ok()) return m.status();
  c.model = *m;
  absl::StatusOr<DesignKind> d = ParseDesign(design);
  if (!d.ok()) return d.status();
  c.design = *d;
  return c;
}

json ExperimentConfigToJson(const ExperimentConfig& c) {
  json sizes = json::array();
  for (const auto& [n, d] : c.sizes) sizes.push_back({n, d});
  return json{
      {"name", c.name},
      {"model", ModelName(c.model)},
      {"design", DesignName(c.design)},
      {"sizes", sizes},
      {"total", c.total},
      {"ratios", c.ratios},
      {"nu", c.nus},
      {"kappa", c.kappa},
      {"sigma_eps", c.sigma_eps},
      {"signal", c.signal},
      {"noise", c.noise},
      {"L", c.L},
      {"lambda", c.lambda},
      {"step_size", c.step_size},
      {"step_scale", c.step_scale},
      {"steps", c.steps},
      {"se_samples", c.se_samples},
      {"replicates", c.replicates},
      {"seed", c.seed},
  };
}

absl::StatusOr<std::vector<ExperimentConfig>> ExperimentsFromDocument(
    const json& doc, const json& patch) {
  std::vector<json> items;
  if (doc.is_object() && doc.contains("experiments")) {
    if (!doc["experiments"].is_array()) {
      return TypeError("experiments", "a list");
    }
    for (const json& e : doc["experiments"]) items.push_back(e);
  } else if (doc.is_object() && doc.contains("figure")) {
    return absl::InvalidArgumentError("this figure has no experiments.");
  } else {
    items.push_back(doc);
  }
  std::vector<ExperimentConfig> out;
  for (json& item : items) {
    if (patch.is_object()) item.merge_patch(patch);
    absl::StatusOr<ExperimentConfig> c = ExperimentConfigFromJson(item);
    if (!c.ok()) return c.status();
    out.push_back(*std::move(c));
  }
  return out;
}

}  // namespace propdp
