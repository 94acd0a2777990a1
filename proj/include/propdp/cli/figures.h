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

#ifndef PROPDP_CLI_FIGURES_H_
#define PROPDP_CLI_FIGURES_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "propdp/cli/manifest.h"
#include "propdp/experiment/config.h"

namespace propdp {

std::vector<std::string> FigureNames();

// The embedded configuration document of a figure; NotFound for unknown
// names.
absl::StatusOr<nlohmann::json> BuiltinFigure(const std::string& name);

struct CurveRow {
  std::string model;
  // Free-form label; "rho=<value>" for privacy-matched comparisons.
  std::string curve;
  double ratio = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double nu = 0.0;
  std::string metric;
  double theory = 0.0;
  double theory_stderr = 0.0;
};

// Aspect ratios (1 - p) / p over the document's "curve" grid of
// p = n / (n + d).
absl::StatusOr<std::vector<double>> CurveRatios(const nlohmann::json& doc);

// Theory curves for every experiment and nu of a figure document, plus the
// privacy-matched comparisons listed under "comparisons".
absl::StatusOr<std::vector<CurveRow>> FigureTheoryCurves(
    const nlohmann::json& doc, const std::vector<ExperimentConfig>& experiments,
    int jobs);

// The nu at which `zcdp(nu)` equals rho, for a zCDP bound decreasing in nu.
absl::StatusOr<double> NuForZcdp(
    const std::function<absl::StatusOr<double>(double)>& zcdp, double rho);

std::string CurveCsvHeader();
std::string CurveCsvRows(const std::vector<CurveRow>& rows);

struct FigureOptions {
  int jobs = 1;
  std::optional<uint64_t> seed;
  std::optional<int> replicates;
  bool theory_only = false;
};

// Writes <outdir>/<name>_theory.csv, <outdir>/<name>_simulation.csv (when
// the figure has experiments) and <outdir>/<name>_manifest.json.
absl::StatusOr<RunManifest> RunFigure(const std::string& name,
                                      const std::string& outdir,
                                      const FigureOptions& options);

}  // namespace propdp

#endif  // PROPDP_CLI_FIGURES_H_
