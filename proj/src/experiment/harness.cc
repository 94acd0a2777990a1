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

#include "propdp/experiment/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <thread>
#include <utility>

#include "glog/logging.h"
#include "propdp/common/counter_rng.h"
#include "propdp/common/parallel.h"
#include "propdp/erm/dataset.h"
#include "propdp/erm/loss_model.h"
#include "propdp/erm/mechanisms.h"
#include "propdp/experiment/data_gen.h"
#include "propdp/experiment/metrics.h"
#include "propdp/theory/logistic_system.h"
#include "propdp/theory/output_perturbation.h"
#include "propdp/theory/state_evolution.h"

namespace propdp {

MetricMap TheoryMetricNames(const MetricMap& raw) {
  static const std::map<std::string, std::string> kNames = {
      {"mse", kEstimationError},
      {"bias", kBias},
      {"xi_corr", kXiCorrelation},
      {"residual_trunc", kTruncatedResidual},
      {"rho_diff", kRhoDiff},
  };
  MetricMap out;
  for (const auto& [key, value] : raw) {
    auto it = kNames.find(key);
    out[it == kNames.end() ? key : it->second] = value;
  }
  return out;
}

namespace {

absl::StatusOr<MetricMap> HuberTheory(const ExperimentConfig& config,
                                      double delta, double nu) {
  absl::StatusOr<SignalLaw> signal = ConfigSignal(config);
  if (!signal.ok()) return signal.status();
  absl::StatusOr<NoiseLaw> noise = ConfigNoise(config);
  if (!noise.ok()) return noise.status();
  HuberProblem problem{delta, config.lambda, nu, config.L, *signal, *noise};
  if (IsOutputPerturbation(config.model)) {
    problem.nu = 0.0;
    absl::StatusOr<HuberSolution> base = SolveHuberSystem(problem);
    if (!base.ok()) return base.status();
    return OutputPerturbationPredictions(*base, nu);
  }
  absl::StatusOr<HuberSolution> sol = SolveHuberSystem(problem);
  if (!sol.ok()) return sol.status();
  return HuberPredictions(*sol);
}

absl::StatusOr<MetricMap> LogisticTheory(const ExperimentConfig& config,
                                         double delta, double nu) {
  absl::StatusOr<SignalLaw> signal = ConfigSignal(config);
  if (!signal.ok()) return signal.status();
  const double kappa = signal->CenteredScale();
  if (!std::isfinite(kappa)) {
    return absl::UnimplementedError(
        "logistic predictions need a centered Gaussian signal.");
  }
  LogisticProblem problem{delta, config.lambda, nu, kappa};
  if (IsOutputPerturbation(config.model)) {
    problem.nu = 0.0;
    absl::StatusOr<LogisticSolution> base = SolveLogisticSystem(problem);
    if (!base.ok()) return base.status();
    return OutputPerturbationPredictions(*base, nu);
  }
  absl::StatusOr<LogisticSolution> sol = SolveLogisticSystem(problem);
  if (!sol.ok()) return sol.status();
  return LogisticPredictions(*sol);
}

GridTheory NoisyGdTheory(const ExperimentConfig& config, double delta,
                         double nu, uint64_t stream) {
  GridTheory out;
  absl::StatusOr<SignalLaw> signal = ConfigSignal(config);
  absl::StatusOr<NoiseLaw> noise = ConfigNoise(config);
  if (!signal.ok() || !noise.ok()) {
    out.error = std::string(
        (!signal.ok() ? signal.status() : noise.status()).message());
    return out;
  }
  StateEvolutionConfig se;
  se.steps = config.steps;
  se.step_size = StepSizeFor(config, delta);
  se.nu = nu;
  se.delta = delta;
  se.signal = *signal;
  se.noise = *noise;
  se.L = config.L;
  se.mc_samples = config.se_samples;
  se.seed = HashWords({config.seed, stream});
  absl::StatusOr<StateEvolutionTrace> trace =
      config.model == ModelKind::kHuberDpsgdCe ? StateEvolutionHuber(se)
                                               : StateEvolutionLogistic(se);
  if (!trace.ok()) {
    out.error = std::string(trace.status().message());
    return out;
  }
  for (int t = 0; t <= trace->steps; ++t) {
    out.predictions[IterateMetric(kEstimationError, t)] = trace->mse[t];
    out.stderrs[IterateMetric(kEstimationError, t)] = trace->mse_stderr[t];
    out.predictions[IterateMetric(kBias, t)] = trace->bias[t];
    out.stderrs[IterateMetric(kBias, t)] = trace->bias_stderr[t];
  }
  return out;
}

absl::StatusOr<MetricMap> NoisyGdReplicate(const ExperimentConfig& config,
                                           const GridPoint& point,
                                           uint64_t seed) {
  absl::StatusOr<SignalLaw> signal = ConfigSignal(config);
  if (!signal.ok()) return signal.status();
  absl::StatusOr<NoiseLaw> noise = ConfigNoise(config);
  if (!noise.ok()) return noise.status();
  Eigen::MatrixXd X = GenDesign(point.n, point.d, config.design, seed);
  const double radius = DesignRadius(config.design, X);
  const Eigen::VectorXd beta_star = GenSignal(point.d, *signal, seed);
  Eigen::VectorXd y = X * beta_star;
  absl::StatusOr<Dataset> data =
      Dataset::Create(std::move(X), std::move(y), radius);
  if (!data.ok()) return data.status();
  const LossModel loss = config.model == ModelKind::kHuberDpsgdCe
                             ? LossModel::HuberCe(config.L, *noise)
                             : LossModel::LogisticCe();
  absl::StatusOr<NoisyGdTrajectory> traj =
      RunNoisyGd(*data, loss, StepSizeFor(config, point.delta()), point.nu,
                 config.steps, seed);
  if (!traj.ok()) return traj.status();
  const double d = point.d;
  MetricMap out;
  for (size_t t = 0; t < traj->iterates.size(); ++t) {
    const Eigen::VectorXd& beta = traj->iterates[t];
    out[IterateMetric(kEstimationError, t)] =
        (beta - beta_star).squaredNorm() / d;
    out[IterateMetric(kBias, t)] = beta.dot(beta_star) / d;
  }
  return out;
}

}  // namespace

uint64_t ChildSeed(uint64_t master, int grid_index, int replicate) {
  return HashWords({master, static_cast<uint64_t>(grid_index),
                    static_cast<uint64_t>(replicate)});
}

GridTheory ComputeTheory(const ExperimentConfig& config, double delta,
                         double nu, uint64_t stream) {
  if (IsNoisyGd(config.model)) {
    return NoisyGdTheory(config, delta, nu, stream);
  }
  absl::StatusOr<MetricMap> raw = IsHuber(config.model)
                                      ? HuberTheory(config, delta, nu)
                                      : LogisticTheory(config, delta, nu);
  GridTheory out;
  if (!raw.ok()) {
    out.error = std::string(raw.status().message());
    return out;
  }
  out.predictions = TheoryMetricNames(*raw);
  // Output perturbation has no prediction for the residual-type metrics.
  if (IsOutputPerturbation(config.model)) {
    out.predictions.erase(kTruncatedResidual);
    out.predictions.erase(kRhoDiff);
  }
  return out;
}

GridTheory ComputeGridTheory(const ExperimentConfig& config,
                             const GridPoint& point, int grid_index) {
  return ComputeTheory(config, point.delta(), point.nu,
                       static_cast<uint64_t>(grid_index));
}

absl::StatusOr<MetricMap> RunReplicate(const ExperimentConfig& config,
                                       const GridPoint& point, uint64_t seed) {
  if (IsNoisyGd(config.model)) return NoisyGdReplicate(config, point, seed);
  absl::StatusOr<SignalLaw> signal = ConfigSignal(config);
  if (!signal.ok()) return signal.status();

  MetricInputs in;
  in.X = GenDesign(point.n, point.d, config.design, seed);
  in.beta_star = GenSignal(point.d, *signal, seed);
  if (IsHuber(config.model)) {
    absl::StatusOr<NoiseLaw> noise = ConfigNoise(config);
    if (!noise.ok()) return noise.status();
    in.y = GenLinearLabels(in.X, in.beta_star, *noise, seed);
  } else {
    in.y = GenLogisticLabels(in.X, in.beta_star, seed);
  }
  absl::StatusOr<Dataset> data =
      Dataset::Create(in.X, in.y, DesignRadius(config.design, in.X));
  if (!data.ok()) return data.status();

  const LossModel loss = IsHuber(config.model) ? LossModel::Huber(config.L)
                                               : LossModel::Logistic();
  absl::StatusOr<FitResult> fit =
      IsOutputPerturbation(config.model)
          ? FitOutputPerturbation(*data, loss, config.lambda, point.nu, seed)
          : FitObjectivePerturbation(*data, loss, config.lambda, point.nu,
                                     seed);
  if (!fit.ok()) return fit.status();
  in.beta_hat = std::move(fit->beta_hat);
  in.beta_tilde = std::move(fit->beta_tilde);
  in.xi = std::move(fit->xi);
  return EmpiricalMetrics(in, config.model, config.L);
}

absl::Status RunExperiment(const ExperimentConfig& config,
                           const RecordSink& sink, int jobs) {
  if (absl::Status s = ValidateExperimentConfig(config); !s.ok()) return s;
  const std::vector<GridPoint> grid = ExpandGrid(config);
  const int num_grid = static_cast<int>(grid.size());

  std::vector<GridTheory> theory(num_grid);
  ParallelFor(num_grid, jobs, [&](int g) {
    theory[g] = ComputeGridTheory(config, grid[g], g);
    if (!theory[g].error.empty()) {
      LOG(WARNING) << "theory unavailable at grid point " << g << ": "
                   << theory[g].error;
    }
  });

  const int reps = config.replicates;
  const int cells = num_grid * reps;
  std::vector<std::optional<MetricRecord>> slots(cells);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<bool> stop{false};

  auto run_cell = [&](int cell) {
    if (stop.load()) return;
    MetricRecord rec;
    rec.grid_index = cell / reps;
    rec.replicate = cell % reps;
    rec.point = grid[rec.grid_index];
    rec.seed = ChildSeed(config.seed, rec.grid_index, rec.replicate);
    const auto start = std::chrono::steady_clock::now();
    absl::StatusOr<MetricMap> empirical =
        RunReplicate(config, rec.point, rec.seed);
    rec.wall_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    if (empirical.ok()) {
      rec.empirical = *std::move(empirical);
    } else {
      rec.error = std::string(empirical.status().message());
      LOG(WARNING) << "grid point " << rec.grid_index << " replicate "
                   << rec.replicate << " failed: " << rec.error;
    }
    rec.theory = theory[rec.grid_index].predictions;
    rec.theory_stderr = theory[rec.grid_index].stderrs;
    {
      std::lock_guard<std::mutex> lock(mu);
      slots[cell] = std::move(rec);
    }
    ready.notify_all();
  };

  const int workers = std::max(1, std::min(jobs, cells));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  if (workers > 1) {
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < cells; i = next++) run_cell(i);
      });
    }
  }

  absl::Status status = absl::OkStatus();
  for (int cell = 0; cell < cells && status.ok(); ++cell) {
    if (workers == 1) run_cell(cell);
    MetricRecord rec;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return slots[cell].has_value(); });
      rec = std::move(*slots[cell]);
      slots[cell].reset();
    }
    status = sink(rec);
  }
  if (!status.ok()) stop.store(true);
  for (std::thread& t : pool) t.join();
  return status;
}

absl::StatusOr<std::vector<MetricRecord>> RunExperimentCollect(
    const ExperimentConfig& config, int jobs) {
  std::vector<MetricRecord> out;
  absl::Status s = RunExperiment(
      config,
      [&out](const MetricRecord& r) {
        out.push_back(r);
        return absl::OkStatus();
      },
      jobs);
  if (!s.ok()) return s;
  return out;
}

std::vector<SummaryRow> Summarize(const std::vector<MetricRecord>& records) {
  struct Acc {
    GridPoint point;
    std::vector<double> values;
    std::optional<double> theory;
    double theory_stderr = 0.0;
  };
  std::map<std::pair<int, std::string>, Acc> acc;
  for (const MetricRecord& r : records) {
    for (const auto& [metric, value] : r.empirical) {
      Acc& a = acc[{r.grid_index, metric}];
      a.point = r.point;
      a.values.push_back(value);
      if (auto it = r.theory.find(metric); it != r.theory.end()) {
        a.theory = it->second;
      }
      if (auto it = r.theory_stderr.find(metric);
          it != r.theory_stderr.end()) {
        a.theory_stderr = it->second;
      }
    }
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, a] : acc) {
    SummaryRow row;
    row.grid_index = key.first;
    row.metric = key.second;
    row.point = a.point;
    row.count = static_cast<int>(a.values.size());
    double sum = 0.0;
    for (double v : a.values) sum += v;
    row.mean = sum / row.count;
    if (row.count > 1) {
      double ss = 0.0;
      for (double v : a.values) ss += (v - row.mean) * (v - row.mean);
      row.stderr_mean = std::sqrt(ss / (row.count - 1) / row.count);
    }
    row.theory = a.theory;
    row.theory_stderr = a.theory_stderr;
    if (row.theory) {
      const double se = std::hypot(row.stderr_mean, row.theory_stderr);
      if (se > 0.0) row.z = (row.mean - *row.theory) / se;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace propdp
