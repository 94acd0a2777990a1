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

#include "propdp/cli/commands.h"

#include <cmath>
#include <cstdlib>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "propdp/cli/csv_writer.h"
#include "propdp/experiment/harness.h"
#include "propdp/theory/huber_system.h"
#include "propdp/theory/logistic_system.h"
#include "propdp/theory/output_perturbation.h"

namespace propdp {
namespace {

using nlohmann::json;

json SolverJson(const HuberSolution& s) {
  return {{"solution", {{"sigma_star", s.sigma_star}, {"tau_star", s.tau_star}}},
          {"residual", s.residual_norm},
          {"jacobian_condition", s.jacobian_condition},
          {"iterations", s.iterations}};
}

json SolverJson(const LogisticSolution& s) {
  return {{"solution",
           {{"alpha_star", s.alpha_star},
            {"sigma_star", s.sigma_star},
            {"gamma_star", s.gamma_star}}},
          {"residual", s.residual_norm},
          {"jacobian_condition", s.jacobian_condition},
          {"iterations", s.iterations}};
}

absl::StatusOr<json> HuberPoint(const ExperimentConfig& config, double delta,
                                double nu) {
  absl::StatusOr<SignalLaw> signal = ConfigSignal(config);
  if (!signal.ok()) return signal.status();
  absl::StatusOr<NoiseLaw> noise = ConfigNoise(config);
  if (!noise.ok()) return noise.status();
  const bool output = IsOutputPerturbation(config.model);
  HuberProblem problem{delta, config.lambda, output ? 0.0 : nu, config.L,
                       *signal, *noise};
  absl::StatusOr<HuberSolution> sol = SolveHuberSystem(problem);
  if (!sol.ok()) return sol.status();
  json out = SolverJson(*sol);
  MetricMap predictions;
  if (output) {
    absl::StatusOr<MetricMap> p = OutputPerturbationPredictions(*sol, nu);
    if (!p.ok()) return p.status();
    predictions = *std::move(p);
  } else {
    predictions = HuberPredictions(*sol);
  }
  out["predictions"] = TheoryMetricNames(predictions);
  return out;
}

absl::StatusOr<json> LogisticPoint(const ExperimentConfig& config,
                                   double delta, double nu) {
  absl::StatusOr<SignalLaw> signal = ConfigSignal(config);
  if (!signal.ok()) return signal.status();
  const double kappa = signal->CenteredScale();
  if (!std::isfinite(kappa)) {
    return absl::InvalidArgumentError(
        "logistic predictions need a centered Gaussian signal.");
  }
  const bool output = IsOutputPerturbation(config.model);
  LogisticProblem problem{delta, config.lambda, output ? 0.0 : nu, kappa};
  absl::StatusOr<LogisticSolution> sol = SolveLogisticSystem(problem);
  if (!sol.ok()) return sol.status();
  json out = SolverJson(*sol);
  MetricMap predictions;
  if (output) {
    absl::StatusOr<MetricMap> p = OutputPerturbationPredictions(*sol, nu);
    if (!p.ok()) return p.status();
    predictions = *std::move(p);
  } else {
    predictions = LogisticPredictions(*sol);
  }
  out["predictions"] = TheoryMetricNames(predictions);
  return out;
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kFailedPrecondition:
      return kExitUsage;
    default:
      return kExitInternal;
  }
}

absl::StatusOr<std::optional<uint64_t>> SeedFromEnvironment() {
  const char* text = std::getenv("PROPDP_SEED");
  if (text == nullptr || *text == '\0') return std::optional<uint64_t>();
  uint64_t seed = 0;
  if (!absl::SimpleAtoi(text, &seed)) {
    return absl::InvalidArgumentError(
        absl::StrCat("PROPDP_SEED is not an unsigned integer: ", text));
  }
  return std::optional<uint64_t>(seed);
}

json TheoryPoint(const ExperimentConfig& config, double delta, double nu,
                 uint64_t stream) {
  json inputs = {{"model", ModelName(config.model)},
                 {"delta", delta},
                 {"nu", nu},
                 {"kappa", config.kappa}};
  absl::StatusOr<SignalLaw> signal = ConfigSignal(config);
  absl::StatusOr<NoiseLaw> noise = ConfigNoise(config);
  if (signal.ok()) inputs["signal"] = signal->ToString();
  if (IsHuber(config.model)) {
    inputs["L"] = config.L;
    if (noise.ok()) inputs["noise"] = noise->ToString();
  }
  if (IsNoisyGd(config.model)) {
    inputs["steps"] = config.steps;
    inputs["step_size"] = StepSizeFor(config, delta);
    inputs["se_samples"] = config.se_samples;
    inputs["seed"] = config.seed;
  } else {
    inputs["lambda"] = config.lambda;
  }

  json out = {{"inputs", inputs}};
  if (IsNoisyGd(config.model)) {
    GridTheory t = ComputeTheory(config, delta, nu, stream);
    if (!t.error.empty()) {
      out["error"] = t.error;
    } else {
      out["predictions"] = t.predictions;
      out["prediction_stderr"] = t.stderrs;
    }
    return out;
  }
  absl::StatusOr<json> solved = IsHuber(config.model)
                                    ? HuberPoint(config, delta, nu)
                                    : LogisticPoint(config, delta, nu);
  if (!solved.ok()) {
    out["error"] = std::string(solved.status().message());
    return out;
  }
  out.update(*solved);
  return out;
}

absl::Status RunTheory(const ExperimentConfig& config,
                       const std::vector<double>& deltas, std::ostream& out) {
  if (absl::Status s = ValidateModelParameters(config); !s.ok()) return s;
  for (double delta : deltas) {
    if (!std::isfinite(delta) || !(delta > 0.0)) {
      return absl::InvalidArgumentError("delta should be positive.");
    }
  }
  std::vector<std::pair<double, double>> points;
  if (!deltas.empty()) {
    for (double nu : config.nus) {
      for (double delta : deltas) points.emplace_back(delta, nu);
    }
  } else {
    if (absl::Status s = ValidateExperimentConfig(config); !s.ok()) return s;
    for (const GridPoint& p : ExpandGrid(config)) {
      points.emplace_back(p.delta(), p.nu);
    }
  }
  for (size_t i = 0; i < points.size(); ++i) {
    out << TheoryPoint(config, points[i].first, points[i].second, i).dump()
        << "\n";
  }
  out.flush();
  if (!out) return absl::InternalError("failed writing theory output.");
  return absl::OkStatus();
}

absl::Status RunSimulate(const std::vector<ExperimentConfig>& configs,
                         int jobs, std::ostream& out) {
  for (const ExperimentConfig& c : configs) {
    if (absl::Status s = ValidateExperimentConfig(c); !s.ok()) return s;
  }
  out << RecordCsvHeader();
  for (const ExperimentConfig& c : configs) {
    absl::Status s = RunExperiment(
        c,
        [&](const MetricRecord& r) {
          out << RecordCsvRows(c, r);
          if (!out) return absl::InternalError("failed writing CSV output.");
          return absl::OkStatus();
        },
        jobs);
    if (!s.ok()) return s;
  }
  out.flush();
  return absl::OkStatus();
}

absl::StatusOr<Mechanism> ParseMechanism(const std::string& name) {
  if (name == "objective") return Mechanism::kObjective;
  if (name == "output") return Mechanism::kOutput;
  if (name == "dpsgd") return Mechanism::kNoisyGradientDescent;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown mechanism: ", name,
                   " (expected objective, output or dpsgd)"));
}

std::string MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kObjective:
      return "objective";
    case Mechanism::kOutput:
      return "output";
    case Mechanism::kNoisyGradientDescent:
      return "dpsgd";
  }
  return "";
}

absl::StatusOr<json> RunPrivacy(const MechanismSpec& spec) {
  absl::StatusOr<PrivacyReport> report = ComputePrivacyReport(spec);
  if (!report.ok()) return report.status();
  json curve = json::array();
  for (const auto& [alpha, eps] : report->rdp_curve) {
    curve.push_back({alpha, eps});
  }
  json inputs = {{"mechanism", MechanismName(spec.mechanism)},
                 {"L", spec.glm.lipschitz},
                 {"s", spec.glm.smoothness},
                 {"R", spec.glm.feature_radius},
                 {"nu", spec.nu},
                 {"epsilon", spec.epsilon}};
  if (spec.mechanism == Mechanism::kNoisyGradientDescent) {
    inputs["T"] = spec.steps;
  } else {
    inputs["lambda"] = spec.lambda;
  }
  return json{{"inputs", inputs},
              {"mechanism", MechanismName(report->mechanism)},
              {"epsilon", report->epsilon},
              {"delta", report->delta},
              {"delta_clamped", report->delta_clamped},
              {"zcdp_rho", report->zcdp_rho},
              {"rdp_curve", curve}};
}

}  // namespace propdp
