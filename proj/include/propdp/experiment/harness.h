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

#ifndef PROPDP_EXPERIMENT_HARNESS_H_
#define PROPDP_EXPERIMENT_HARNESS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "propdp/experiment/config.h"
#include "propdp/theory/huber_system.h"

namespace propdp {

struct MetricRecord {
  int grid_index = 0;
  GridPoint point;
  int replicate = 0;
  uint64_t seed = 0;
  MetricMap empirical;
  // Keyed like `empirical`; a metric without a prediction is absent.
  MetricMap theory;
  // Monte Carlo standard error of a theory value, when it has one.
  MetricMap theory_stderr;
  // Non-empty when the fit failed; `empirical` is then empty.
  std::string error;
  double wall_seconds = 0.0;
};

struct GridTheory {
  MetricMap predictions;
  MetricMap stderrs;
  // Non-empty when the theory solve failed.
  std::string error;
};

// Maps solver prediction keys (mse, bias, xi_corr, residual_trunc,
// rho_diff) to empirical metric names.
MetricMap TheoryMetricNames(const MetricMap& raw);

uint64_t ChildSeed(uint64_t master, int grid_index, int replicate);

// Predictions at aspect ratio delta = d / n, keyed by empirical metric
// names. `stream` keys the Monte Carlo draws of the noisy gradient descent
// recursion.
GridTheory ComputeTheory(const ExperimentConfig& config, double delta,
                         double nu, uint64_t stream);

// ComputeTheory at the integer aspect ratio of one grid point.
GridTheory ComputeGridTheory(const ExperimentConfig& config,
                             const GridPoint& point, int grid_index);

// Generates data for one cell, fits the configured mechanism and returns
// the empirical metrics.
absl::StatusOr<MetricMap> RunReplicate(const ExperimentConfig& config,
                                       const GridPoint& point, uint64_t seed);

using RecordSink = std::function<absl::Status(const MetricRecord&)>;

// Runs every (grid point, replicate) cell on `jobs` workers and hands the
// records to `sink` in (grid index, replicate) order. A sink error stops
// the run and is returned.
absl::Status RunExperiment(const ExperimentConfig& config,
                           const RecordSink& sink, int jobs = 1);

absl::StatusOr<std::vector<MetricRecord>> RunExperimentCollect(
    const ExperimentConfig& config, int jobs = 1);

struct SummaryRow {
  int grid_index = 0;
  GridPoint point;
  std::string metric;
  int count = 0;
  double mean = 0.0;
  // Sample standard deviation over sqrt(count).
  double stderr_mean = 0.0;
  std::optional<double> theory;
  double theory_stderr = 0.0;
  // (mean - theory) / sqrt(stderr^2 + theory_stderr^2), when defined.
  std::optional<double> z;
};

// One row per (grid point, metric), ordered by grid index then metric.
std::vector<SummaryRow> Summarize(const std::vector<MetricRecord>& records);

}  // namespace propdp

#endif  // PROPDP_EXPERIMENT_HARNESS_H_
