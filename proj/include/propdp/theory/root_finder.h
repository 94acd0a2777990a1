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

#ifndef PROPDP_THEORY_ROOT_FINDER_H_
#define PROPDP_THEORY_ROOT_FINDER_H_

#include <functional>
#include <vector>

#include "Eigen/Dense"

namespace propdp {

using ResidualMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct NewtonOptions {
  // A root is accepted when the max-norm residual is at most this.
  double tolerance = 1e-8;
  // Iteration stops early once the residual falls below this.
  double target = 1e-14;
  int max_iterations = 100;
  // Central-difference step, relative to each coordinate.
  double fd_step = 1e-6;
  // Largest change of any log-coordinate in one step.
  double max_log_step = 4.0;
};

struct NewtonResult {
  Eigen::VectorXd x;
  Eigen::VectorXd residual;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  // 2-norm condition number of the log-coordinate Jacobian at the last
  // iterate.
  double jacobian_condition = 0.0;
};

// Damped Newton for F(x) = 0 over the positive orthant. Iterates in
// u = log(x) with a central-difference Jacobian and a halving line search
// on the max-norm residual.
NewtonResult SolvePositive(const ResidualMap& residual, Eigen::VectorXd x0,
                           const NewtonOptions& options = {});

// Eight starting points with every coordinate set to 10^(-2 + 4k/7).
std::vector<Eigen::VectorXd> LogSpacedSeeds(int dimension);

// Solves from `x0`; on failure retries from LogSpacedSeeds. Returns the
// first converged result, or the best failed one.
NewtonResult SolveWithRestarts(const ResidualMap& residual,
                               const Eigen::VectorXd& x0,
                               const NewtonOptions& options = {});

// Runs every start (x0 and all seeds) and returns the distinct converged
// roots, ordered by discovery.
std::vector<NewtonResult> FindAllRoots(const ResidualMap& residual,
                                       const Eigen::VectorXd& x0,
                                       const NewtonOptions& options = {});

}  // namespace propdp

#endif  // PROPDP_THEORY_ROOT_FINDER_H_
