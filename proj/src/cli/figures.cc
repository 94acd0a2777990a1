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

#include "propdp/cli/figures.h"

#include <cmath>
#include <filesystem>
#include <utility>

#include "absl/strings/str_cat.h"
#include "glog/logging.h"
#include "propdp/cli/builtin_configs.h"
#include "propdp/cli/canonical_json.h"
#include "propdp/cli/config_io.h"
#include "propdp/cli/csv_writer.h"
#include "propdp/common/number_format.h"
#include "propdp/common/parallel.h"
#include "propdp/experiment/harness.h"
#include "propdp/privacy/privacy_accounting.h"

namespace propdp {
namespace {

using nlohmann::json;

struct CurveTask {
  ExperimentConfig config;
  double nu = 0.0;
  std::string curve;
  double ratio = 0.0;
};

ModelKind OutputCounterpart(ModelKind model) {
  return IsHuber(model) ? ModelKind::kHuberOutput : ModelKind::kLogisticOutput;
}

ModelKind ObjectiveCounterpart(ModelKind model) {
  return IsHuber(model) ? ModelKind::kHuberObjective
                        : ModelKind::kLogisticObjective;
}

absl::StatusOr<GlmSensitivity> SensitivityFor(const ExperimentConfig& c) {
  double radius = 1.0;
  switch (c.design) {
    case DesignKind::kRademacher:
      radius = 1.0;
      break;
    case DesignKind::kBoundedUniform:
      radius = std::sqrt(3.0);
      break;
    case DesignKind::kGaussian:
      return absl::InvalidArgumentError(
          "privacy-matched curves need a design with bounded rows.");
  }
  return IsHuber(c.model) ? GlmSensitivity::Huber(c.L, radius)
                          : GlmSensitivity::Logistic(radius);
}

absl::Status AddComparisonTasks(const json& entry,
                                const std::vector<double>& ratios,
                                std::vector<CurveTask>& tasks) {
  if (!entry.is_object() || !entry.contains("experiment") ||
      !entry.contains("rho") || !entry["rho"].is_array()) {
    return absl::InvalidArgumentError(
        "each comparison needs an experiment and a rho list.");
  }
  absl::StatusOr<ExperimentConfig> base =
      ExperimentConfigFromJson(entry["experiment"]);
  if (!base.ok()) return base.status();
  if (IsNoisyGd(base->model)) {
    return absl::InvalidArgumentError(
        "comparisons take objective or output perturbation models.");
  }
  if (absl::Status s = ValidateModelParameters(*base); !s.ok()) return s;
  absl::StatusOr<GlmSensitivity> glm = SensitivityFor(*base);
  if (!glm.ok()) return glm.status();
  const double lambda = base->lambda;

  for (const json& r : entry["rho"]) {
    if (!r.is_number()) return absl::InvalidArgumentError("rho should be numeric.");
    const double rho = r.get<double>();
    absl::StatusOr<double> nu_objective = NuForZcdp(
        [&](double nu) { return ObjectivePerturbationZcdp(*glm, lambda, nu); },
        rho);
    if (!nu_objective.ok()) return nu_objective.status();
    absl::StatusOr<double> nu_output = NuForZcdp(
        [&](double nu) { return OutputPerturbationZcdp(*glm, lambda, nu); },
        rho);
    if (!nu_output.ok()) return nu_output.status();
    const std::string label = absl::StrCat("rho=", FormatDouble(rho));
    for (const auto& [model, nu] :
         {std::pair{ObjectiveCounterpart(base->model), *nu_objective},
          std::pair{OutputCounterpart(base->model), *nu_output}}) {
      ExperimentConfig c = *base;
      c.model = model;
      for (double p : ratios) tasks.push_back({c, nu, label, p});
    }
  }
  return absl::OkStatus();
}

}  // namespace

std::vector<std::string> FigureNames() {
  std::vector<std::string> names;
  for (const BuiltinConfig& c : BuiltinConfigs()) names.push_back(c.name);
  return names;
}

absl::StatusOr<json> BuiltinFigure(const std::string& name) {
  for (const BuiltinConfig& c : BuiltinConfigs()) {
    if (c.name == name) return ParseJsonText(c.json);
  }
  return absl::NotFoundError(absl::StrCat("unknown figure: ", name));
}

absl::StatusOr<std::vector<double>> CurveRatios(const json& doc) {
  if (!doc.contains("curve") || !doc["curve"].is_object()) {
    return absl::InvalidArgumentError("figure has no curve grid.");
  }
  const json& c = doc["curve"];
  if (!c.value("ratio_start", json()).is_number() ||
      !c.value("ratio_stop", json()).is_number() ||
      !c.value("points", json()).is_number_integer()) {
    return absl::InvalidArgumentError(
        "curve needs ratio_start, ratio_stop and points.");
  }
  const double start = c["ratio_start"].get<double>();
  const double stop = c["ratio_stop"].get<double>();
  const int points = c["points"].get<int>();
  if (!(0.0 < start && start < stop && stop < 1.0) || points < 2) {
    return absl::InvalidArgumentError(
        "curve needs 0 < ratio_start < ratio_stop < 1 and points >= 2.");
  }
  std::vector<double> ratios;
  for (int k = 0; k < points; ++k) {
    ratios.push_back(start + (stop - start) * k / (points - 1));
  }
  return ratios;
}

absl::StatusOr<double> NuForZcdp(
    const std::function<absl::StatusOr<double>(double)>& zcdp, double rho) {
  if (!std::isfinite(rho) || !(rho > 0.0)) {
    return absl::InvalidArgumentError("rho should be positive.");
  }
  double lo = std::log(1e-8), hi = std::log(1e8);
  absl::StatusOr<double> at_lo = zcdp(std::exp(lo));
  absl::StatusOr<double> at_hi = zcdp(std::exp(hi));
  if (!at_lo.ok()) return at_lo.status();
  if (!at_hi.ok()) return at_hi.status();
  if (!(*at_lo > rho && *at_hi < rho)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "rho=", FormatDouble(rho), " is not attainable for any nu; the "
        "bound ranges over (", FormatDouble(*at_hi), ", ",
        FormatDouble(*at_lo), ")."));
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    absl::StatusOr<double> v = zcdp(std::exp(mid));
    if (!v.ok()) return v.status();
    (*v > rho ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

absl::StatusOr<std::vector<CurveRow>> FigureTheoryCurves(
    const json& doc, const std::vector<ExperimentConfig>& experiments,
    int jobs) {
  absl::StatusOr<std::vector<double>> ratios = CurveRatios(doc);
  if (!ratios.ok()) return ratios.status();
  std::vector<CurveTask> tasks;
  for (const ExperimentConfig& c : experiments) {
    if (absl::Status s = ValidateModelParameters(c); !s.ok()) return s;
    for (double nu : c.nus) {
      for (double p : *ratios) tasks.push_back({c, nu, "", p});
    }
  }
  if (doc.contains("comparisons")) {
    if (!doc["comparisons"].is_array()) {
      return absl::InvalidArgumentError("comparisons should be a list.");
    }
    for (const json& entry : doc["comparisons"]) {
      if (absl::Status s = AddComparisonTasks(entry, *ratios, tasks); !s.ok()) {
        return s;
      }
    }
  }

  std::vector<std::vector<CurveRow>> per_task(tasks.size());
  ParallelFor(static_cast<int>(tasks.size()), jobs, [&](int i) {
    const CurveTask& t = tasks[i];
    const double delta = (1.0 - t.ratio) / t.ratio;
    const GridTheory theory =
        ComputeTheory(t.config, delta, t.nu, static_cast<uint64_t>(i));
    if (!theory.error.empty()) {
      LOG(WARNING) << ModelName(t.config.model) << " theory unavailable at delta="
                   << delta << " nu=" << t.nu << ": " << theory.error;
      return;
    }
    for (const auto& [metric, value] : theory.predictions) {
      CurveRow row;
      row.model = ModelName(t.config.model);
      row.curve = t.curve;
      row.ratio = t.ratio;
      row.delta = delta;
      row.lambda = t.config.lambda;
      row.nu = t.nu;
      row.metric = metric;
      row.theory = value;
      auto it = theory.stderrs.find(metric);
      row.theory_stderr = it == theory.stderrs.end() ? 0.0 : it->second;
      per_task[i].push_back(std::move(row));
    }
  });
  std::vector<CurveRow> rows;
  for (std::vector<CurveRow>& v : per_task) {
    for (CurveRow& r : v) rows.push_back(std::move(r));
  }
  return rows;
}

std::string CurveCsvHeader() {
  return "model,curve,ratio,delta,lambda,nu,metric,theory,theory_stderr\n";
}

std::string CurveCsvRows(const std::vector<CurveRow>& rows) {
  std::string out;
  for (const CurveRow& r : rows) {
    out += CsvLine({r.model, r.curve, FormatDouble(r.ratio),
                    FormatDouble(r.delta), FormatDouble(r.lambda),
                    FormatDouble(r.nu), r.metric, FormatDouble(r.theory),
                    FormatDouble(r.theory_stderr)});
  }
  return out;
}

absl::StatusOr<RunManifest> RunFigure(const std::string& name,
                                      const std::string& outdir,
                                      const FigureOptions& options) {
  RunManifest manifest;
  manifest.tool_version = ToolVersion();
  manifest.command = absl::StrCat("figure ", name);
  manifest.start_time = UtcTimestamp();

  absl::StatusOr<json> doc = BuiltinFigure(name);
  if (!doc.ok()) return doc.status();
  json patch = json::object();
  if (options.seed) patch["seed"] = *options.seed;
  if (options.replicates) patch["replicates"] = *options.replicates;

  std::vector<ExperimentConfig> experiments;
  if (doc->contains("experiments")) {
    absl::StatusOr<std::vector<ExperimentConfig>> parsed =
        ExperimentsFromDocument(*doc, patch);
    if (!parsed.ok()) return parsed.status();
    experiments = *std::move(parsed);
  }
  json effective = *doc;
  if (!experiments.empty()) {
    effective["experiments"] = json::array();
    for (const ExperimentConfig& c : experiments) {
      if (absl::Status s = ValidateExperimentConfig(c); !s.ok()) return s;
      effective["experiments"].push_back(ExperimentConfigToJson(c));
      manifest.private_design =
          manifest.private_design && IsPrivateDesign(c.design);
    }
    manifest.master_seed = experiments.front().seed;
  }
  manifest.config_hash = Sha256Hex(CanonicalJson(effective));

  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot create ", outdir, ": ", ec.message()));
  }
  const std::filesystem::path dir(outdir);

  absl::StatusOr<std::vector<CurveRow>> curves =
      FigureTheoryCurves(*doc, experiments, options.jobs);
  if (!curves.ok()) return curves.status();
  const std::string theory_path = (dir / (name + "_theory.csv")).string();
  if (absl::Status s =
          WriteTextFile(theory_path, CurveCsvHeader() + CurveCsvRows(*curves));
      !s.ok()) {
    return s;
  }
  manifest.output_paths.push_back(theory_path);

  if (!options.theory_only && !experiments.empty()) {
    std::string csv = SummaryCsvHeader();
    for (const ExperimentConfig& c : experiments) {
      absl::StatusOr<std::vector<MetricRecord>> records =
          RunExperimentCollect(c, options.jobs);
      if (!records.ok()) return records.status();
      csv += SummaryCsvRows(c, Summarize(*records));
    }
    const std::string sim_path = (dir / (name + "_simulation.csv")).string();
    if (absl::Status s = WriteTextFile(sim_path, csv); !s.ok()) return s;
    manifest.output_paths.push_back(sim_path);
  }

  if (absl::Status s = DigestOutputs(manifest); !s.ok()) return s;
  manifest.end_time = UtcTimestamp();
  if (absl::Status s = WriteManifest(
          manifest, (dir / (name + "_manifest.json")).string());
      !s.ok()) {
    return s;
  }
  return manifest;
}

}  // namespace propdp
