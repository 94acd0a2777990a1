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

#include "propdp/theory/huber_system.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"
#include "propdp/losses/gaussian.h"
#include "propdp/losses/scalar_losses.h"
#include "propdp/theory/quadrature.h"
#include "propdp/theory/root_finder.h"

namespace propdp {
namespace {

constexpr double kMinLambda = 1e-8;

bool FinitePositive(double v) { return std::isfinite(v) && v > 0.0; }

HuberSolution MakeSolution(const HuberProblem& problem, const NewtonResult& r) {
  HuberSolution sol;
  sol.problem = problem;
  sol.sigma_star = r.x[0];
  sol.tau_star = r.x[1];
  sol.residual_norm = r.residual_norm;
  sol.jacobian_condition = r.jacobian_condition;
  sol.iterations = r.iterations;
  return sol;
}

ResidualMap MakeResidualMap(const HuberProblem& problem, bool include_nu) {
  return [problem, include_nu](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return HuberResidual(problem, x[0], x[1], include_nu);
  };
}

Eigen::VectorXd InitialPoint(const HuberProblem& problem) {
  Eigen::VectorXd x0(2);
  x0 << std::sqrt(problem.signal.second_moment()),
      1.0 / (2.0 * problem.lambda + 1.0);
  if (!(x0[0] > 0.0)) x0[0] = 1.0;
  return x0;
}

}  // namespace

absl::Status ValidateHuberProblem(const HuberProblem& problem) {
  if (!FinitePositive(problem.delta)) {
    return absl::InvalidArgumentError("delta should be positive.");
  }
  if (!FinitePositive(problem.lambda)) {
    return absl::InvalidArgumentError("lambda should be positive.");
  }
  if (problem.lambda < kMinLambda) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "lambda = %g is below %g; the system is too ill-conditioned.",
        problem.lambda, kMinLambda));
  }
  if (!(problem.nu >= 0.0) || !std::isfinite(problem.nu)) {
    return absl::InvalidArgumentError("nu should be nonnegative.");
  }
  if (!FinitePositive(problem.L)) {
    return absl::InvalidArgumentError("L should be positive.");
  }
  if (!std::isfinite(problem.signal.second_moment())) {
    return absl::InvalidArgumentError("signal law needs a finite second moment.");
  }
  return absl::OkStatus();
}

HuberExpectations ComputeHuberExpectations(const HuberProblem& problem,
                                           double sigma, double tau) {
  HuberExpectations e;
  const double inv = 1.0 / (1.0 + tau);
  for (const LawComponent& c : problem.noise.components()) {
    const double mu = c.mean * inv;
    const double s = std::sqrt(sigma * sigma + c.stddev * c.stddev) * inv;
    e.clipped_second_moment += c.weight * ClippedSecondMoment(mu, s, problem.L);
    e.interval_probability += c.weight * IntervalProbability(mu, s, problem.L);
  }
  return e;
}

Eigen::Vector2d HuberResidualFrom(const HuberProblem& problem, double sigma,
                                  double tau, const HuberExpectations& e,
                                  bool include_privacy_term) {
  const double kappa_sq = problem.signal.second_moment();
  const double lam = problem.lambda;
  const double nu_sq = include_privacy_term ? problem.nu * problem.nu : 0.0;
  Eigen::Vector2d r;
  r[0] = sigma * sigma -
         tau * tau * (e.clipped_second_moment / problem.delta +
                      lam * lam * kappa_sq + nu_sq);
  r[1] = tau - (problem.delta - tau / (1.0 + tau) * e.interval_probability) /
                   (lam * problem.delta);
  return r;
}

Eigen::Vector2d HuberResidual(const HuberProblem& problem, double sigma,
                              double tau, bool include_privacy_term) {
  return HuberResidualFrom(problem, sigma, tau,
                           ComputeHuberExpectations(problem, sigma, tau),
                           include_privacy_term);
}

absl::StatusOr<HuberSolution> SolveHuberSystem(
    const HuberProblem& problem, const HuberSolveOptions& options) {
  if (absl::Status s = ValidateHuberProblem(problem); !s.ok()) return s;
  const NewtonResult r =
      SolveWithRestarts(MakeResidualMap(problem, options.include_privacy_term),
                        InitialPoint(problem));
  if (!r.converged) {
    return absl::InternalError(absl::StrFormat(
        "Huber system did not converge: last iterate sigma=%.17g tau=%.17g, "
        "residual=%.3g, condition=%.3g",
        r.x[0], r.x[1], r.residual_norm, r.jacobian_condition));
  }
  return MakeSolution(problem, r);
}

absl::StatusOr<std::vector<HuberSolution>> FindHuberRoots(
    const HuberProblem& problem) {
  if (absl::Status s = ValidateHuberProblem(problem); !s.ok()) return s;
  std::vector<HuberSolution> out;
  for (const NewtonResult& r :
       FindAllRoots(MakeResidualMap(problem, true), InitialPoint(problem))) {
    out.push_back(MakeSolution(problem, r));
  }
  return out;
}

MetricMap HuberPredictions(const HuberSolution& solution) {
  const HuberProblem& p = solution.problem;
  const double kappa_sq = p.signal.second_moment();
  const HuberExpectations e =
      ComputeHuberExpectations(p, solution.sigma_star, solution.tau_star);
  return {
      {"mse", solution.sigma_star * solution.sigma_star},
      {"bias", (1.0 - solution.tau_star * p.lambda) * kappa_sq},
      {"xi_corr", -solution.tau_star * p.nu},
      {"residual_trunc", e.clipped_second_moment},
  };
}

double ExpectHuberCoefficientLaw(
    const HuberSolution& solution,
    const std::function<double(double, double, double)>& f, int nodes) {
  const HuberProblem& p = solution.problem;
  const double tau = solution.tau_star;
  const double spread =
      std::sqrt(ComputeHuberExpectations(p, solution.sigma_star, tau)
                    .clipped_second_moment /
                p.delta);
  const QuadratureRule& rule = GaussHermiteRule(nodes);
  double total = 0.0;
  for (const LawComponent& c : p.signal.components()) {
    const int beta_nodes = c.stddev == 0.0 ? 1 : nodes;
    for (int i = 0; i < beta_nodes; ++i) {
      const double beta0 =
          c.stddev == 0.0 ? c.mean : c.mean + c.stddev * rule.nodes[i];
      const double wb = c.stddev == 0.0 ? 1.0 : rule.weights[i];
      for (int j = 0; j < nodes; ++j) {
        const double xi0 = rule.nodes[j];
        for (int k = 0; k < nodes; ++k) {
          const double u0 =
              tau * (spread * rule.nodes[k] - p.lambda * beta0 - p.nu * xi0);
          total += c.weight * wb * rule.weights[j] * rule.weights[k] *
                   f(beta0, xi0, u0);
        }
      }
    }
  }
  return total;
}

double ExpectHuberResidualLaw(
    const HuberSolution& solution,
    const std::function<double(double, double)>& f, int nodes) {
  const HuberProblem& p = solution.problem;
  const double inv = 1.0 / (1.0 + solution.tau_star);
  const double sigma = solution.sigma_star;
  const QuadratureRule& rule = GaussHermiteRule(nodes);
  double total = 0.0;
  for (const LawComponent& c : p.noise.components()) {
    const int eps_nodes = c.stddev == 0.0 ? 1 : nodes;
    for (int i = 0; i < eps_nodes; ++i) {
      const double eps0 =
          c.stddev == 0.0 ? c.mean : c.mean + c.stddev * rule.nodes[i];
      const double we = c.stddev == 0.0 ? 1.0 : rule.weights[i];
      for (int k = 0; k < nodes; ++k) {
        const double w = (sigma * rule.nodes[k] + eps0) * inv;
        total += c.weight * we * rule.weights[k] * f(eps0, Clip(w, p.L));
      }
    }
  }
  return total;
}

}  // namespace propdp
