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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "glog/logging.h"
#include "json.hpp"
#include "propdp/cli/canonical_json.h"
#include "propdp/cli/commands.h"
#include "propdp/cli/config_io.h"
#include "propdp/cli/figures.h"
#include "propdp/cli/manifest.h"
#include "propdp/common/parallel.h"

namespace {

using nlohmann::json;
using propdp::ExperimentConfig;

struct ModelFlags {
  std::string config_path;
  std::string model;
  std::string design;
  std::vector<double> nus;
  double lambda = 0.0;
  double L = 0.0;
  double kappa = 0.0;
  double sigma_eps = 0.0;
  std::string noise;
  std::string signal;
  int steps = 0;
  double step_size = 0.0;
  double step_scale = 0.0;
  int64_t se_samples = 0;
  int replicates = 0;
  uint64_t seed = 0;
};

void AddModelFlags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--model", f.model, "Model name, e.g. huber_objective");
  cmd->add_option("--design", f.design,
                  "rademacher, gaussian or bounded_uniform");
  cmd->add_option("--nu", f.nus, "Perturbation scale(s)");
  cmd->add_option("--lambda", f.lambda, "Ridge penalty");
  cmd->add_option("--L", f.L, "Huber threshold");
  cmd->add_option("--kappa", f.kappa, "Signal scale");
  cmd->add_option("--sigma-eps", f.sigma_eps, "Noise scale");
  cmd->add_option("--noise", f.noise, "Noise law, e.g. gaussian:0.2");
  cmd->add_option("--signal", f.signal, "Signal law, e.g. gaussian:1");
  cmd->add_option("--steps", f.steps, "Noisy gradient descent steps");
  cmd->add_option("--step-size", f.step_size, "Constant step size");
  cmd->add_option("--step-scale", f.step_scale,
                  "Step size c / (1 + delta) with this c");
  cmd->add_option("--se-samples", f.se_samples,
                  "Monte Carlo samples for the noisy gradient descent recursion");
  cmd->add_option("--seed", f.seed, "Master seed (overrides PROPDP_SEED)");
}

// Fields given on the command line, as a JSON patch over the config file.
absl::StatusOr<json> ModelPatch(const CLI::App* cmd, const ModelFlags& f) {
  json patch = json::object();
  auto given = [cmd](const char* flag) {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--model")) patch["model"] = f.model;
  if (given("--design")) patch["design"] = f.design;
  if (given("--nu")) patch["nu"] = f.nus;
  if (given("--lambda")) patch["lambda"] = f.lambda;
  if (given("--L")) patch["L"] = f.L;
  if (given("--kappa")) patch["kappa"] = f.kappa;
  if (given("--sigma-eps")) patch["sigma_eps"] = f.sigma_eps;
  if (given("--noise")) patch["noise"] = f.noise;
  if (given("--signal")) patch["signal"] = f.signal;
  if (given("--steps")) patch["steps"] = f.steps;
  if (given("--step-size")) patch["step_size"] = f.step_size;
  if (given("--step-scale")) patch["step_scale"] = f.step_scale;
  if (given("--se-samples")) patch["se_samples"] = f.se_samples;
  if (given("--replicates")) patch["replicates"] = f.replicates;
  if (given("--seed")) {
    patch["seed"] = f.seed;
  } else {
    absl::StatusOr<std::optional<uint64_t>> env = propdp::SeedFromEnvironment();
    if (!env.ok()) return env.status();
    if (*env) patch["seed"] = **env;
  }
  return patch;
}

absl::StatusOr<std::vector<ExperimentConfig>> LoadConfigs(
    const CLI::App* cmd, const ModelFlags& f) {
  json doc = json::object();
  if (!f.config_path.empty()) {
    absl::StatusOr<json> file = propdp::ReadJsonFile(f.config_path);
    if (!file.ok()) return file.status();
    doc = *std::move(file);
  }
  absl::StatusOr<json> patch = ModelPatch(cmd, f);
  if (!patch.ok()) return patch.status();
  return propdp::ExperimentsFromDocument(doc, *patch);
}

json EffectiveConfig(const std::vector<ExperimentConfig>& configs) {
  json list = json::array();
  for (const ExperimentConfig& c : configs) {
    list.push_back(propdp::ExperimentConfigToJson(c));
  }
  return json{{"experiments", list}};
}

// Runs `produce` against stdout, or against `out_path` followed by a
// manifest at `<out_path>.manifest.json`.
absl::Status Emit(const std::string& out_path, const std::string& command,
                  const json& effective_config, uint64_t seed,
                  bool private_design,
                  const std::function<absl::Status(std::ostream&)>& produce) {
  if (out_path.empty()) return produce(std::cout);
  propdp::RunManifest manifest;
  manifest.tool_version = propdp::ToolVersion();
  manifest.command = command;
  manifest.config_hash =
      propdp::Sha256Hex(propdp::CanonicalJson(effective_config));
  manifest.master_seed = seed;
  manifest.private_design = private_design;
  manifest.start_time = propdp::UtcTimestamp();
  {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::InvalidArgumentError(absl::StrCat("cannot write ", out_path));
    }
    if (absl::Status s = produce(out); !s.ok()) return s;
  }
  manifest.output_paths.push_back(out_path);
  if (absl::Status s = propdp::DigestOutputs(manifest); !s.ok()) return s;
  manifest.end_time = propdp::UtcTimestamp();
  return propdp::WriteManifest(manifest, out_path + ".manifest.json");
}

bool AllPrivate(const std::vector<ExperimentConfig>& configs) {
  for (const ExperimentConfig& c : configs) {
    if (!propdp::IsPrivateDesign(c.design)) return false;
  }
  return true;
}

int Finish(const absl::Status& status) {
  if (!status.ok()) std::cerr << "error: " << status.message() << "\n";
  return propdp::ExitCodeFor(status);
}

int Run(int argc, char** argv) {
  CLI::App app{"Utility predictions and simulations for private regression."};
  app.set_version_flag("--version", propdp::ToolVersion());
  app.require_subcommand(1);

  ModelFlags theory_flags;
  std::vector<double> deltas;
  std::string theory_out;
  CLI::App* theory = app.add_subcommand(
      "theory", "Solve the fixed-point systems and print predictions as JSON lines.");
  theory->add_option("--config", theory_flags.config_path, "Experiment config");
  theory->add_option("--delta", deltas, "Aspect ratio(s) d/n");
  theory->add_option("--out", theory_out, "Output file (default stdout)");
  AddModelFlags(theory, theory_flags);

  ModelFlags sim_flags;
  int sim_jobs = propdp::DefaultJobs();
  std::string sim_out;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Run replicated experiments and print CSV.");
  simulate->add_option("--config", sim_flags.config_path, "Experiment config")
      ->required();
  simulate->add_option("--replicates", sim_flags.replicates, "Replicates");
  simulate->add_option("--jobs", sim_jobs, "Worker threads");
  simulate->add_option("--out", sim_out, "Output file (default stdout)");
  AddModelFlags(simulate, sim_flags);

  std::string mechanism;
  propdp::MechanismSpec spec;
  std::string privacy_out;
  CLI::App* privacy =
      app.add_subcommand("privacy", "Report privacy parameters as JSON.");
  privacy->add_option("--mechanism", mechanism, "objective, output or dpsgd")
      ->required();
  privacy->add_option("--L", spec.glm.lipschitz, "Lipschitz constant");
  privacy->add_option("--s", spec.glm.smoothness, "Smoothness constant");
  privacy->add_option("--R", spec.glm.feature_radius, "Feature radius");
  privacy->add_option("--lambda", spec.lambda, "Ridge penalty");
  privacy->add_option("--nu", spec.nu, "Perturbation scale");
  privacy->add_option("--T", spec.steps, "Noisy gradient descent steps");
  privacy->add_option("--epsilon", spec.epsilon, "Target epsilon");
  privacy->add_option("--alpha", spec.alphas, "Renyi orders");
  privacy->add_option("--out", privacy_out, "Output file (default stdout)");

  std::string figure_name, outdir;
  propdp::FigureOptions fig_options;
  fig_options.jobs = propdp::DefaultJobs();
  uint64_t fig_seed = 0;
  int fig_replicates = 0;
  CLI::App* figure = app.add_subcommand(
      "figure", "Write theory curves and simulation summaries for a figure.");
  figure->add_option("name", figure_name, "fig1, fig2, fig4, fig5 or fig6")
      ->required();
  figure->add_option("--outdir", outdir, "Output directory")->required();
  figure->add_option("--jobs", fig_options.jobs, "Worker threads");
  figure->add_option("--seed", fig_seed, "Master seed (overrides PROPDP_SEED)");
  figure->add_option("--replicates", fig_replicates, "Replicates override");
  figure->add_flag("--theory-only", fig_options.theory_only,
                   "Skip the simulations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? propdp::kExitOk : propdp::kExitUsage;
  }

  if (theory->parsed()) {
    absl::StatusOr<std::vector<ExperimentConfig>> configs =
        LoadConfigs(theory, theory_flags);
    if (!configs.ok()) return Finish(configs.status());
    return Finish(Emit(theory_out, "theory", EffectiveConfig(*configs),
                       configs->front().seed, AllPrivate(*configs),
                       [&](std::ostream& out) {
                         for (const ExperimentConfig& c : *configs) {
                           absl::Status s = propdp::RunTheory(c, deltas, out);
                           if (!s.ok()) return s;
                         }
                         return absl::OkStatus();
                       }));
  }
  if (simulate->parsed()) {
    absl::StatusOr<std::vector<ExperimentConfig>> configs =
        LoadConfigs(simulate, sim_flags);
    if (!configs.ok()) return Finish(configs.status());
    for (const ExperimentConfig& c : *configs) {
      if (absl::Status s = propdp::ValidateExperimentConfig(c); !s.ok()) {
        return Finish(s);
      }
      if (!propdp::IsPrivateDesign(c.design)) {
        LOG(WARNING) << "design " << propdp::DesignName(c.design)
                     << " has unbounded rows; results carry no privacy "
                        "guarantee.";
      }
    }
    return Finish(Emit(sim_out, "simulate", EffectiveConfig(*configs),
                       configs->front().seed, AllPrivate(*configs),
                       [&](std::ostream& out) {
                         return propdp::RunSimulate(*configs, sim_jobs, out);
                       }));
  }
  if (privacy->parsed()) {
    absl::StatusOr<propdp::Mechanism> m = propdp::ParseMechanism(mechanism);
    if (!m.ok()) return Finish(m.status());
    spec.mechanism = *m;
    absl::StatusOr<json> report = propdp::RunPrivacy(spec);
    if (!report.ok()) return Finish(report.status());
    return Finish(Emit(privacy_out, "privacy", (*report)["inputs"], 0, true,
                       [&](std::ostream& out) {
                         out << report->dump(2) << "\n";
                         return absl::OkStatus();
                       }));
  }
  if (figure->parsed()) {
    if (figure->count("--seed")) {
      fig_options.seed = fig_seed;
    } else {
      absl::StatusOr<std::optional<uint64_t>> env =
          propdp::SeedFromEnvironment();
      if (!env.ok()) return Finish(env.status());
      fig_options.seed = *env;
    }
    if (figure->count("--replicates")) fig_options.replicates = fig_replicates;
    absl::StatusOr<propdp::RunManifest> manifest =
        propdp::RunFigure(figure_name, outdir, fig_options);
    if (!manifest.ok()) return Finish(manifest.status());
    for (const std::string& path : manifest->output_paths) {
      std::cout << path << "\n";
    }
    return propdp::kExitOk;
  }
  return propdp::kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  google::InitGoogleLogging(argv[0]);
  FLAGS_logtostderr = true;
  try {
    return Run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return propdp::kExitInternal;
  }
}
