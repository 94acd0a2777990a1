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

#include "propdp/theory/state_evolution.h"

#include <cmath>

#include "absl/strings/str_format.h"
#include "propdp/common/counter_rng.h"
#include "propdp/losses/gaussian.h"
#include "propdp/losses/scalar_losses.h"

namespace propdp {
namespace {

constexpr double kEigenFloor = -1e-8;

using Table = std::vector<std::vector<Eigen::Matrix2d>>;

Table ZeroTable(int rows) {
  return Table(rows, std::vector<Eigen::Matrix2d>(rows, Eigen::Matrix2d::Zero()));
}

// First row of the gradient nonlinearity and its Jacobian at eta.
struct RowEval {
  double f = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

struct HuberNonlinearity {
  const NoiseLaw* noise;
  double L;
  RowEval operator()(double e1, double e2) const {
    RowEval out;
    const double r = e1 - e2;
    double p = 0.0;
    for (const LawComponent& c : noise->components()) {
      out.f += c.weight * ClippedMean(r - c.mean, c.stddev, L);
      p += c.weight * IntervalProbability(r - c.mean, c.stddev, L);
    }
    out.d1 = p;
    out.d2 = -p;
    return out;
  }
};

struct LogisticNonlinearity {
  RowEval operator()(double e1, double e2) const {
    return {LogisticRhoPrime(e1) - LogisticRhoPrime(e2), LogisticRhoSecond(e1),
            -LogisticRhoSecond(e2)};
  }
};

absl::Status Validate(const StateEvolutionConfig& c) {
  if (c.steps < 1 || c.steps > kMaxStateEvolutionSteps) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "steps should be in [1, %d], got %d.", kMaxStateEvolutionSteps, c.steps));
  }
  if (c.mc_samples < kMinStateEvolutionSamples) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "mc_samples should be at least %d.", kMinStateEvolutionSamples));
  }
  if (!(c.step_size > 0.0) || !std::isfinite(c.step_size)) {
    return absl::InvalidArgumentError("step_size should be positive.");
  }
  if (!(c.delta > 0.0) || !std::isfinite(c.delta)) {
    return absl::InvalidArgumentError("delta should be positive.");
  }
  if (!(c.nu >= 0.0) || !std::isfinite(c.nu)) {
    return absl::InvalidArgumentError("nu should be nonnegative.");
  }
  if (!(c.L > 0.0)) {
    return absl::InvalidArgumentError("L should be positive.");
  }
  return absl::OkStatus();
}

// M x dim matrix of standard normals from one stream.
Eigen::MatrixXd NormalMatrix(uint64_t seed, uint64_t stream, int64_t rows,
                             int cols) {
  const CounterRng rng(seed, StreamTag::kStateEvolution, stream);
  Eigen::MatrixXd z(rows, cols);
  for (int64_t m = 0; m < rows; ++m) {
    for (int j = 0; j < cols; ++j) {
      z(m, j) = rng.Normal(static_cast<uint64_t>(m) * cols + j);
    }
  }
  return z;
}

// Signal draws rescaled so their mean square equals the law's second moment.
Eigen::VectorXd SignalSample(const SignalLaw& law, uint64_t seed,
                             uint64_t stream, int64_t m) {
  Eigen::VectorXd beta(m);
  const uint64_t key = HashWords({seed, stream});
  for (int64_t i = 0; i < m; ++i) {
    beta[i] = law.Sample(key, StreamTag::kStateEvolution, i);
  }
  const double target = law.second_moment();
  const double have = beta.squaredNorm() / m;
  if (target > 0.0 && have > 0.0) beta *= std::sqrt(target / have);
  return beta;
}

template <typename Nonlinearity>
absl::StatusOr<StateEvolutionTrace> Run(const StateEvolutionConfig& cfg,
                                        const Nonlinearity& nonlinearity) {
  if (absl::Status s = Validate(cfg); !s.ok()) return s;
  const int T = cfg.steps;
  const int64_t M = cfg.mc_samples;
  const double g = cfg.step_size;
  const double delta = cfg.delta;
  const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();

  StateEvolutionTrace trace;
  trace.steps = T;
  trace.mc_samples = M;
  trace.r_theta = ZeroTable(T + 1);
  trace.c_theta = ZeroTable(T + 1);
  trace.r_g = ZeroTable(T);
  trace.c_g = ZeroTable(T);
  trace.gamma.assign(T, Eigen::Matrix2d::Zero());
  for (int t = 0; t < T; ++t) trace.r_theta[t + 1][t] = I;
  trace.c_theta[0][0] << 0.0, 0.0, 0.0, cfg.signal.second_moment();

  // theta paths from the latest regeneration: theta1[a](m), beta(m).
  std::vector<Eigen::VectorXd> theta1;
  Eigen::VectorXd beta;

  for (int t = 0; t < T; ++t) {
    // Row side: omega paths for times 0..t.
    const int dim = 2 * (t + 1);
    Eigen::MatrixXd sigma(dim, dim);
    for (int a = 0; a <= t; ++a) {
      for (int b = 0; b <= t; ++b) {
        sigma.block<2, 2>(2 * a, 2 * b) = trace.c_theta[a][b];
      }
    }
    absl::StatusOr<Eigen::MatrixXd> omega_factor = CovarianceFactor(sigma);
    if (!omega_factor.ok()) return omega_factor.status();
    const Eigen::MatrixXd omega =
        NormalMatrix(cfg.seed, 16 * t + 1, M, dim) * omega_factor->transpose();

    Eigen::Matrix2d sum_d = Eigen::Matrix2d::Zero();
    std::vector<Eigen::Matrix2d> sum_dj(t, Eigen::Matrix2d::Zero());
    Eigen::MatrixXd sum_ff = Eigen::MatrixXd::Zero(t + 1, t + 1);

    std::vector<double> f(t + 1);
    std::vector<Eigen::Matrix2d> d(t + 1);
    // jac[a][s] = d eta^a / d omega^s.
    std::vector<std::vector<Eigen::Matrix2d>> jac(
        t + 1, std::vector<Eigen::Matrix2d>(t + 1));
    for (int64_t m = 0; m < M; ++m) {
      for (int a = 0; a <= t; ++a) {
        Eigen::Vector2d e(omega(m, 2 * a), omega(m, 2 * a + 1));
        for (int k = 0; k < a; ++k) {
          e -= g * f[k] * trace.r_theta[a][k].col(0);
        }
        const RowEval r = nonlinearity(e[0], e[1]);
        f[a] = r.f;
        d[a] << r.d1, r.d2, 0.0, 0.0;
        jac[a][a] = I;
        for (int s = 0; s < a; ++s) {
          Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
          for (int k = s; k < a; ++k) {
            acc += trace.r_theta[a][k] * d[k] * jac[k][s];
          }
          jac[a][s] = -g * acc;
        }
      }
      sum_d += d[t];
      for (int s = 0; s < t; ++s) sum_dj[s] += d[t] * jac[t][s];
      for (int a = 0; a <= t; ++a) {
        for (int b = 0; b <= a; ++b) sum_ff(a, b) += f[a] * f[b];
      }
    }
    const double inv_m = 1.0 / static_cast<double>(M);
    trace.gamma[t] = -(g / delta) * inv_m * sum_d;
    for (int s = 0; s < t; ++s) {
      trace.r_g[t][s] = -(g / delta) * inv_m * sum_dj[s];
    }
    Eigen::MatrixXd u_cov(t + 1, t + 1);
    for (int a = 0; a <= t; ++a) {
      for (int b = 0; b <= a; ++b) {
        const double v = (g * g / delta) * inv_m * sum_ff(a, b);
        u_cov(a, b) = v;
        u_cov(b, a) = v;
        trace.c_g[a][b] << v, 0.0, 0.0, 0.0;
        trace.c_g[b][a] = trace.c_g[a][b];
      }
    }

    // Response of theta^{t+1} to a field injected at step s.
    for (int s = 0; s < t; ++s) {
      Eigen::Matrix2d acc = (I + trace.gamma[t]) * trace.r_theta[t][s];
      for (int k = s + 1; k < t; ++k) {
        acc += trace.r_g[t][k] * trace.r_theta[k][s];
      }
      trace.r_theta[t + 1][s] = acc;
    }

    // Column side: regenerate theta paths 0..t+1.
    absl::StatusOr<Eigen::MatrixXd> u_factor = CovarianceFactor(u_cov);
    if (!u_factor.ok()) return u_factor.status();
    const Eigen::MatrixXd u =
        NormalMatrix(cfg.seed, 16 * t + 2, M, t + 1) * u_factor->transpose();
    const Eigen::MatrixXd xi = NormalMatrix(cfg.seed, 16 * t + 3, M, t + 1);
    beta = SignalSample(cfg.signal, cfg.seed, 16 * t + 4, M);
    theta1.assign(t + 2, Eigen::VectorXd::Zero(M));
    for (int a = 0; a <= t; ++a) {
      const Eigen::Matrix2d step = I + trace.gamma[a];
      for (int64_t m = 0; m < M; ++m) {
        double next = step(0, 0) * theta1[a][m] + step(0, 1) * beta[m];
        for (int k = 0; k < a; ++k) {
          next += trace.r_g[a][k](0, 0) * theta1[k][m] +
                  trace.r_g[a][k](0, 1) * beta[m];
        }
        next += u(m, a) - g * cfg.nu * xi(m, a);
        theta1[a + 1][m] = next;
      }
    }
    const double beta_sq = beta.squaredNorm() * inv_m;
    for (int a = 0; a <= t + 1; ++a) {
      for (int b = 0; b <= a; ++b) {
        Eigen::Matrix2d c;
        c << theta1[a].dot(theta1[b]) * inv_m, theta1[a].dot(beta) * inv_m,
            beta.dot(theta1[b]) * inv_m, beta_sq;
        trace.c_theta[a][b] = c;
        trace.c_theta[b][a] = c.transpose();
      }
    }
  }

  trace.mse.resize(T + 1);
  trace.mse_stderr.resize(T + 1);
  trace.bias.resize(T + 1);
  trace.bias_stderr.resize(T + 1);
  const double m_d = static_cast<double>(M);
  for (int t = 0; t <= T; ++t) {
    const Eigen::ArrayXd err = (theta1[t] - beta).array().square();
    const Eigen::ArrayXd cross = (theta1[t].array() * beta.array());
    const double mse = err.mean();
    const double bias = cross.mean();
    trace.mse[t] = mse;
    trace.bias[t] = bias;
    trace.mse_stderr[t] =
        std::sqrt(((err - mse).square().sum() / (m_d - 1.0)) / m_d);
    trace.bias_stderr[t] =
        std::sqrt(((cross - bias).square().sum() / (m_d - 1.0)) / m_d);
  }
  return trace;
}

}  // namespace

absl::StatusOr<Eigen::MatrixXd> CovarianceFactor(const Eigen::MatrixXd& cov) {
  const Eigen::MatrixXd sym = 0.5 * (cov + cov.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    return absl::InternalError("eigendecomposition of covariance failed.");
  }
  Eigen::VectorXd values = solver.eigenvalues();
  for (int i = 0; i < values.size(); ++i) {
    if (values[i] < kEigenFloor) {
      return absl::InternalError(absl::StrFormat(
          "covariance block has eigenvalue %.3g below %.0e.", values[i],
          kEigenFloor));
    }
    if (values[i] < 0.0) values[i] = 0.0;
  }
  return solver.eigenvectors() * values.cwiseSqrt().asDiagonal();
}

absl::StatusOr<StateEvolutionTrace> StateEvolutionHuber(
    const StateEvolutionConfig& config) {
  return Run(config, HuberNonlinearity{&config.noise, config.L});
}

absl::StatusOr<StateEvolutionTrace> StateEvolutionLogistic(
    const StateEvolutionConfig& config) {
  return Run(config, LogisticNonlinearity{});
}

}  // namespace propdp
