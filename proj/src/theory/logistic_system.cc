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

#include "propdp/theory/logistic_system.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_format.h"
#include "propdp/losses/scalar_losses.h"
#include "propdp/theory/quadrature.h"
#include "propdp/theory/root_finder.h"

namespace propdp {
namespace {

bool FinitePositive(double v) { return std::isfinite(v) && v > 0.0; }

LogisticSolution MakeSolution(const LogisticProblem& problem,
                              const NewtonResult& r, int nodes) {
  LogisticSolution sol;
  sol.nodes = nodes;
  sol.problem = problem;
  sol.alpha_star = r.x[0];
  sol.sigma_star = r.x[1];
  sol.gamma_star = r.x[2];
  sol.residual_norm = r.residual_norm;
  sol.jacobian_condition = r.jacobian_condition;
  sol.iterations = r.iterations;
  return sol;
}

ResidualMap MakeResidualMap(const LogisticProblem& problem, int nodes,
                            bool include_nu) {
  return [problem, nodes, include_nu](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return LogisticResidual(problem, x[0], x[1], x[2], nodes, include_nu);
  };
}

Eigen::VectorXd InitialPoint(const LogisticProblem& problem) {
  Eigen::VectorXd x0(3);
  x0 << 1.0, problem.kappa, 1.0 / (2.0 * problem.lambda + 1.0);
  return x0;
}

// Re-solves a converged root on doubled rules until the doubled rule agrees.
// `nodes` is updated to the rule the returned root satisfies.
NewtonResult Refine(const LogisticProblem& problem, NewtonResult r,
                    bool include_nu, int& nodes) {
  while (r.converged && nodes * 2 <= kLogisticMaxQuadratureNodes) {
    const Eigen::Vector3d check =
        LogisticResidual(problem, r.x[0], r.x[1], r.x[2], 2 * nodes, include_nu);
    if (check.lpNorm<Eigen::Infinity>() <= kLogisticRefineTolerance) break;
    NewtonResult finer =
        SolvePositive(MakeResidualMap(problem, 2 * nodes, include_nu), r.x);
    if (!finer.converged) break;
    nodes *= 2;
    r = std::move(finer);
  }
  return r;
}

}  // namespace

absl::Status ValidateLogisticProblem(const LogisticProblem& problem) {
  if (!FinitePositive(problem.delta)) {
    return absl::InvalidArgumentError("delta should be positive.");
  }
  if (!FinitePositive(problem.lambda)) {
    return absl::InvalidArgumentError("lambda should be positive.");
  }
  if (problem.lambda < 1e-8) {
    return absl::InvalidArgumentError("lambda below 1e-8 is not supported.");
  }
  if (!(problem.nu >= 0.0) || !std::isfinite(problem.nu)) {
    return absl::InvalidArgumentError("nu should be nonnegative.");
  }
  if (!FinitePositive(problem.kappa)) {
    return absl::InvalidArgumentError("kappa should be positive.");
  }
  return absl::OkStatus();
}

LogisticExpectations ComputeLogisticExpectations(
    const LogisticProblem& problem, double alpha, double sigma, double gamma,
    int nodes) {
  const QuadratureRule& rule = GaussHermiteRule(nodes);
  const double kappa = problem.kappa;
  LogisticExpectations e;
  for (int i = 0; i < nodes; ++i) {
    const double z1 = rule.nodes[i];
    const double w1 = rule.weights[i];
    const double first = 2.0 * LogisticRhoPrime(-kappa * z1);
    const double second = 2.0 * LogisticRhoSecond(-kappa * z1);
    double var = 0.0, align = 0.0, curv = 0.0;
    for (int j = 0; j < nodes; ++j) {
      const double p =
          ProxLogistic(kappa * alpha * z1 + sigma * rule.nodes[j], gamma);
      const double slope = LogisticRhoPrime(p);
      const double w2 = rule.weights[j];
      var += w2 * slope * slope;
      align += w2 * p;
      curv += w2 / (1.0 + gamma * LogisticRhoSecond(p));
    }
    e.variance_term += w1 * first * var;
    e.alignment_term += w1 * second * align;
    e.curvature_term += w1 * first * curv;
  }
  return e;
}

Eigen::Vector3d LogisticResidualFrom(const LogisticProblem& problem,
                                     double alpha, double sigma, double gamma,
                                     const LogisticExpectations& e,
                                     bool include_privacy_term) {
  const double delta = problem.delta;
  const double nu_sq = include_privacy_term ? problem.nu * problem.nu : 0.0;
  Eigen::Vector3d r;
  r[0] = sigma * sigma - gamma * gamma * (e.variance_term / delta + nu_sq);
  r[1] = alpha + e.alignment_term / delta;
  r[2] = gamma -
         (delta - 1.0 + e.curvature_term) / (problem.lambda * delta);
  return r;
}

Eigen::Vector3d LogisticResidual(const LogisticProblem& problem, double alpha,
                                 double sigma, double gamma, int nodes,
                                 bool include_privacy_term) {
  return LogisticResidualFrom(
      problem, alpha, sigma, gamma,
      ComputeLogisticExpectations(problem, alpha, sigma, gamma, nodes),
      include_privacy_term);
}

absl::StatusOr<LogisticSolution> SolveLogisticSystem(
    const LogisticProblem& problem, const LogisticSolveOptions& options) {
  if (absl::Status s = ValidateLogisticProblem(problem); !s.ok()) return s;
  int nodes = options.nodes;
  const NewtonResult r = Refine(
      problem,
      SolveWithRestarts(
          MakeResidualMap(problem, nodes, options.include_privacy_term),
          InitialPoint(problem)),
      options.include_privacy_term, nodes);
  if (!r.converged) {
    return absl::InternalError(absl::StrFormat(
        "logistic system did not converge: last iterate alpha=%.17g "
        "sigma=%.17g gamma=%.17g, residual=%.3g, condition=%.3g",
        r.x[0], r.x[1], r.x[2], r.residual_norm, r.jacobian_condition));
  }
  return MakeSolution(problem, r, nodes);
}

absl::StatusOr<std::vector<LogisticSolution>> FindLogisticRoots(
    const LogisticProblem& problem) {
  if (absl::Status s = ValidateLogisticProblem(problem); !s.ok()) return s;
  std::vector<LogisticSolution> out;
  for (const NewtonResult& r :
       FindAllRoots(MakeResidualMap(problem, kLogisticQuadratureNodes, true),
                    InitialPoint(problem))) {
    int nodes = kLogisticQuadratureNodes;
    const NewtonResult refined = Refine(problem, r, true, nodes);
    out.push_back(MakeSolution(problem, refined, nodes));
  }
  return out;
}

double LogisticRhoDiff(const LogisticSolution& solution, int nodes) {
  if (nodes == 0) nodes = solution.nodes;
  const QuadratureRule& rule = GaussHermiteRule(nodes);
  const double kappa = solution.problem.kappa;
  const double alpha = solution.alpha_star;
  const double sigma = solution.sigma_star;
  const double gamma = solution.gamma_star;
  double total = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double z1 = rule.nodes[i];
    const double truth = LogisticRhoPrime(kappa * z1);
    double inner = 0.0;
    for (int j = 0; j < nodes; ++j) {
      const double eta = alpha * kappa * z1 + sigma * rule.nodes[j];
      const double d1 = truth - LogisticRhoPrime(ProxLogistic(eta + gamma, gamma));
      const double d0 = truth - LogisticRhoPrime(ProxLogistic(eta, gamma));
      inner += rule.weights[j] * (truth * d1 * d1 + (1.0 - truth) * d0 * d0);
    }
    total += rule.weights[i] * inner;
  }
  return total;
}

MetricMap LogisticPredictions(const LogisticSolution& solution, int nodes) {
  if (nodes == 0) nodes = solution.nodes;
  const double kappa_sq = solution.problem.kappa * solution.problem.kappa;
  const double shrink = 1.0 - solution.alpha_star;
  return {
      {"mse", shrink * shrink * kappa_sq +
                  solution.sigma_star * solution.sigma_star},
      {"bias", solution.alpha_star * kappa_sq},
      {"xi_corr", -solution.gamma_star * solution.problem.nu},
      {"rho_diff", LogisticRhoDiff(solution, nodes)},
  };
}

double ExpectLogisticCoefficientLaw(
    const LogisticSolution& solution,
    const std::function<double(double, double, double)>& f, int nodes) {
  const QuadratureRule& rule = GaussHermiteRule(nodes);
  const double kappa = solution.problem.kappa;
  const double gn = solution.gamma_star * solution.problem.nu;
  const double spread = std::sqrt(
      std::max(0.0, solution.sigma_star * solution.sigma_star - gn * gn));
  double total = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double beta0 = kappa * rule.nodes[i];
    for (int j = 0; j < nodes; ++j) {
      const double xi0 = rule.nodes[j];
      for (int k = 0; k < nodes; ++k) {
        const double b0 =
            solution.alpha_star * beta0 + spread * rule.nodes[k] - gn * xi0;
        total += rule.weights[i] * rule.weights[j] * rule.weights[k] *
                 f(beta0, xi0, b0);
      }
    }
  }
  return total;
}

}  // namespace propdp
