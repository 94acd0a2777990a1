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

#include "propdp/privacy/privacy_accounting.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absl/strings/str_format.h"
#include "glog/logging.h"
#include "propdp/losses/gaussian.h"

namespace propdp {
namespace {

absl::Status CheckPositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s should be positive and finite, got %g.", name,
                        value));
  }
  return absl::OkStatus();
}

absl::Status CheckLambdaNu(const GlmSensitivity& glm, double lambda,
                           double nu) {
  if (absl::Status s = ValidateSensitivity(glm); !s.ok()) return s;
  if (absl::Status s = CheckPositive(lambda, "lambda"); !s.ok()) return s;
  return CheckPositive(nu, "nu");
}

double ClampProbability(double value, bool* clamped) {
  const double out = std::clamp(value, 0.0, 1.0);
  if (out != value) {
    VLOG(1) << "delta " << value << " clamped to " << out;
    if (clamped != nullptr) *clamped = true;
  }
  return out;
}

}  // namespace

absl::Status ValidateSensitivity(const GlmSensitivity& glm) {
  if (absl::Status s = CheckPositive(glm.lipschitz, "lipschitz"); !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckPositive(glm.smoothness, "smoothness"); !s.ok()) {
    return s;
  }
  return CheckPositive(glm.feature_radius, "feature_radius");
}

double HockeyStick(double epsilon, double ratio) {
  const double shift = epsilon / ratio;
  const double upper = GaussianCdf(0.5 * ratio - shift);
  const double lower = std::exp(epsilon + LogGaussianCdf(-0.5 * ratio - shift));
  return std::clamp(upper - lower, 0.0, 1.0);
}

double GaussianMechanismZcdp(double sensitivity, double nu) {
  return sensitivity * sensitivity / (2.0 * nu * nu);
}

absl::StatusOr<double> ObjectivePerturbationDeltaRaw(double epsilon,
                                                     const GlmSensitivity& glm,
                                                     double lambda, double nu) {
  if (absl::Status s = CheckLambdaNu(glm, lambda, nu); !s.ok()) return s;
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon should be nonnegative.");
  }
  const double lr = glm.lipschitz * glm.feature_radius;
  const double sr2 = glm.smoothness * glm.feature_radius * glm.feature_radius;
  const double ratio = lr / nu;
  const double half_ratio_sq = 0.5 * ratio * ratio;
  const double eps_tilde = epsilon - std::log1p(sr2 / lambda);
  const double eps_hat = eps_tilde - half_ratio_sq;
  if (eps_hat >= 0.0) return 2.0 * HockeyStick(eps_tilde, ratio);
  const double w = std::exp(eps_hat);
  return -std::expm1(eps_hat) + 2.0 * w * HockeyStick(half_ratio_sq, ratio);
}

absl::StatusOr<double> ObjectivePerturbationDelta(double epsilon,
                                                  const GlmSensitivity& glm,
                                                  double lambda, double nu) {
  absl::StatusOr<double> raw =
      ObjectivePerturbationDeltaRaw(epsilon, glm, lambda, nu);
  if (!raw.ok()) return raw.status();
  return ClampProbability(*raw, nullptr);
}

absl::StatusOr<double> ObjectivePerturbationRdp(double alpha,
                                                const GlmSensitivity& glm,
                                                double lambda, double nu) {
  if (absl::Status s = CheckLambdaNu(glm, lambda, nu); !s.ok()) return s;
  if (!(alpha > 1.0)) {
    return absl::InvalidArgumentError("alpha should exceed 1.");
  }
  const double ratio = glm.lipschitz * glm.feature_radius / nu;
  const double sr2 = glm.smoothness * glm.feature_radius * glm.feature_radius;
  const double am1 = alpha - 1.0;
  return std::log1p(sr2 / lambda) + 0.5 * ratio * ratio +
         0.5 * ratio * ratio * am1 +
         std::log(2.0 * GaussianCdf(ratio * am1)) / am1;
}

absl::StatusOr<double> ObjectivePerturbationZcdp(const GlmSensitivity& glm,
                                                 double lambda, double nu) {
  if (absl::Status s = CheckLambdaNu(glm, lambda, nu); !s.ok()) return s;
  const double ratio = glm.lipschitz * glm.feature_radius / nu;
  const double sr2 = glm.smoothness * glm.feature_radius * glm.feature_radius;
  return std::log1p(sr2 / lambda) + 0.5 * ratio * ratio +
         std::sqrt(2.0 / std::numbers::pi) * ratio;
}

absl::StatusOr<double> OutputPerturbationDelta(double epsilon,
                                               const GlmSensitivity& glm,
                                               double lambda, double nu) {
  if (absl::Status s = CheckLambdaNu(glm, lambda, nu); !s.ok()) return s;
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon should be nonnegative.");
  }
  return HockeyStick(epsilon,
                     glm.lipschitz * glm.feature_radius / (lambda * nu));
}

absl::StatusOr<double> OutputPerturbationZcdp(const GlmSensitivity& glm,
                                              double lambda, double nu) {
  if (absl::Status s = CheckLambdaNu(glm, lambda, nu); !s.ok()) return s;
  return GaussianMechanismZcdp(glm.lipschitz * glm.feature_radius / lambda,
                               nu);
}

absl::StatusOr<double> DpsgdZcdp(int T, const GlmSensitivity& glm, double nu) {
  if (absl::Status s = ValidateSensitivity(glm); !s.ok()) return s;
  if (absl::Status s = CheckPositive(nu, "nu"); !s.ok()) return s;
  if (T < 1) return absl::InvalidArgumentError("T should be at least 1.");
  return T * GaussianMechanismZcdp(glm.lipschitz * glm.feature_radius, nu);
}

absl::StatusOr<double> RdpToDp(double alpha, double epsilon_rdp,
                               double delta) {
  if (!(alpha > 1.0)) {
    return absl::InvalidArgumentError("alpha should exceed 1.");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta should lie in (0, 1).");
  }
  return epsilon_rdp + std::log(1.0 / delta) / (alpha - 1.0);
}

std::vector<double> DefaultAlphaGrid() {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) {
    grid.push_back(1.0 + std::ldexp(1.0, k) / 100.0);
  }
  return grid;
}

absl::StatusOr<PrivacyReport> ComputePrivacyReport(const MechanismSpec& spec) {
  if (absl::Status s = CheckLambdaNu(spec.glm, spec.lambda, spec.nu); !s.ok()) {
    return s;
  }
  if (!(spec.epsilon >= 0.0)) {
    return absl::InvalidArgumentError("epsilon should be nonnegative.");
  }
  const std::vector<double> alphas =
      spec.alphas.empty() ? DefaultAlphaGrid() : spec.alphas;
  PrivacyReport report;
  report.mechanism = spec.mechanism;
  report.epsilon = spec.epsilon;
  const double lr = spec.glm.lipschitz * spec.glm.feature_radius;
  double raw_delta = 0.0;
  switch (spec.mechanism) {
    case Mechanism::kObjective: {
      absl::StatusOr<double> d = ObjectivePerturbationDeltaRaw(
          spec.epsilon, spec.glm, spec.lambda, spec.nu);
      if (!d.ok()) return d.status();
      raw_delta = *d;
      absl::StatusOr<double> rho =
          ObjectivePerturbationZcdp(spec.glm, spec.lambda, spec.nu);
      if (!rho.ok()) return rho.status();
      report.zcdp_rho = *rho;
      for (double alpha : alphas) {
        absl::StatusOr<double> e =
            ObjectivePerturbationRdp(alpha, spec.glm, spec.lambda, spec.nu);
        if (!e.ok()) return e.status();
        report.rdp_curve.emplace_back(alpha, *e);
      }
      break;
    }
    case Mechanism::kOutput: {
      raw_delta = HockeyStick(spec.epsilon, lr / (spec.lambda * spec.nu));
      report.zcdp_rho = GaussianMechanismZcdp(lr / spec.lambda, spec.nu);
      break;
    }
    case Mechanism::kNoisyGradientDescent: {
      absl::StatusOr<double> rho = DpsgdZcdp(spec.steps, spec.glm, spec.nu);
      if (!rho.ok()) return rho.status();
      report.zcdp_rho = *rho;
      // T-fold composition of identical Gaussian mechanisms is itself a
      // Gaussian mechanism with sensitivity sqrt(T) L R.
      raw_delta = HockeyStick(spec.epsilon, std::sqrt(spec.steps) * lr / spec.nu);
      break;
    }
  }
  if (spec.mechanism != Mechanism::kObjective) {
    for (double alpha : alphas) {
      if (!(alpha > 1.0)) {
        return absl::InvalidArgumentError("alpha should exceed 1.");
      }
      report.rdp_curve.emplace_back(alpha, alpha * report.zcdp_rho);
    }
  }
  report.delta = ClampProbability(raw_delta, &report.delta_clamped);
  return report;
}

}  // namespace propdp
