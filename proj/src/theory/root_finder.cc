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

#include "propdp/theory/root_finder.h"

#include <cmath>
#include <limits>
#include <utility>

namespace propdp {
namespace {

double MaxNorm(const Eigen::VectorXd& v) {
  if (!v.allFinite()) return std::numeric_limits<double>::infinity();
  return v.lpNorm<Eigen::Infinity>();
}

}  // namespace

NewtonResult SolvePositive(const ResidualMap& residual, Eigen::VectorXd x0,
                           const NewtonOptions& options) {
  const int n = static_cast<int>(x0.size());
  auto in_log = [&](const Eigen::VectorXd& u) {
    return residual(u.array().exp().matrix());
  };

  NewtonResult result;
  Eigen::VectorXd u = x0.array().log().matrix();
  Eigen::VectorXd g = in_log(u);
  double norm = MaxNorm(g);
  Eigen::MatrixXd jac(n, n);
  int it = 0;
  for (; it < options.max_iterations && norm > options.target; ++it) {
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd up = u;
      Eigen::VectorXd um = u;
      up[j] += options.fd_step;
      um[j] -= options.fd_step;
      jac.col(j) = (in_log(up) - in_log(um)) / (2.0 * options.fd_step);
    }
    if (!jac.allFinite()) break;
    Eigen::VectorXd step = jac.fullPivLu().solve(-g);
    if (!step.allFinite()) break;
    const double biggest = step.lpNorm<Eigen::Infinity>();
    if (biggest > options.max_log_step) step *= options.max_log_step / biggest;

    double t = 1.0;
    bool accepted = false;
    Eigen::VectorXd trial_u, trial_g;
    double trial_norm = 0.0;
    for (int half = 0; half < 40; ++half, t *= 0.5) {
      trial_u = u + t * step;
      trial_g = in_log(trial_u);
      trial_norm = MaxNorm(trial_g);
      if (trial_norm < norm) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const bool stalled = (trial_u - u).lpNorm<Eigen::Infinity>() < 1e-15;
    u = std::move(trial_u);
    g = std::move(trial_g);
    norm = trial_norm;
    if (stalled) break;
  }

  if (n > 0 && jac.allFinite() && it > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const Eigen::VectorXd sv = svd.singularValues();
    result.jacobian_condition = sv[n - 1] > 0.0
                                    ? sv[0] / sv[n - 1]
                                    : std::numeric_limits<double>::infinity();
  }
  result.x = u.array().exp().matrix();
  result.residual = g;
  result.residual_norm = norm;
  result.iterations = it;
  result.converged = norm <= options.tolerance;
  return result;
}

std::vector<Eigen::VectorXd> LogSpacedSeeds(int dimension) {
  std::vector<Eigen::VectorXd> seeds;
  for (int k = 0; k < 8; ++k) {
    seeds.push_back(
        Eigen::VectorXd::Constant(dimension, std::pow(10.0, -2.0 + 4.0 * k / 7.0)));
  }
  return seeds;
}

NewtonResult SolveWithRestarts(const ResidualMap& residual,
                               const Eigen::VectorXd& x0,
                               const NewtonOptions& options) {
  NewtonResult best = SolvePositive(residual, x0, options);
  if (best.converged) return best;
  for (const Eigen::VectorXd& seed : LogSpacedSeeds(static_cast<int>(x0.size()))) {
    NewtonResult r = SolvePositive(residual, seed, options);
    if (r.converged) return r;
    if (r.residual_norm < best.residual_norm) best = std::move(r);
  }
  return best;
}

std::vector<NewtonResult> FindAllRoots(const ResidualMap& residual,
                                       const Eigen::VectorXd& x0,
                                       const NewtonOptions& options) {
  std::vector<Eigen::VectorXd> starts = {x0};
  for (Eigen::VectorXd& s : LogSpacedSeeds(static_cast<int>(x0.size()))) {
    starts.push_back(std::move(s));
  }
  std::vector<NewtonResult> roots;
  for (const Eigen::VectorXd& start : starts) {
    NewtonResult r = SolvePositive(residual, start, options);
    if (!r.converged) continue;
    bool seen = false;
    for (const NewtonResult& prev : roots) {
      const double gap = ((prev.x - r.x).array().abs() /
                          prev.x.array().abs().max(1e-12))
                             .maxCoeff();
      if (gap < 1e-6) {
        seen = true;
        break;
      }
    }
    if (!seen) roots.push_back(std::move(r));
  }
  return roots;
}

}  // namespace propdp
