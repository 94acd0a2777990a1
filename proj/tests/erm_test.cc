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

#include <algorithm>
#include <cmath>
#include <string>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "gtest/gtest.h"
#include "oracles.h"
#include "propdp/common/counter_rng.h"
#include "propdp/erm/dataset.h"
#include "propdp/erm/loss_model.h"
#include "propdp/erm/mechanisms.h"
#include "propdp/erm/optimizer.h"

namespace propdp {
namespace {

using ::propdp::testing::NormalDensity;
using ::propdp::testing::Sigmoid;
using ::propdp::testing::Simpson;

// Rows with entries +-1/sqrt(d) and responses X beta* + 0.3 z.
Dataset LinearData(int n, int d, uint64_t seed) {
  const CounterRng rng(seed, StreamTag::kTest);
  Eigen::MatrixXd X(n, d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) {
      X(i, j) = (rng.Uniform(i * d + j) < 0.5 ? -1.0 : 1.0) / std::sqrt(d);
    }
  }
  Eigen::VectorXd beta(d);
  for (int j = 0; j < d; ++j) beta[j] = rng.Normal(1000000 + j);
  Eigen::VectorXd y = X * beta;
  for (int i = 0; i < n; ++i) y[i] += 0.3 * rng.Normal(2000000 + i);
  return *Dataset::Create(std::move(X), std::move(y), 1.0);
}

Dataset LogisticData(int n, int d, uint64_t seed) {
  Dataset data = LinearData(n, d, seed);
  const CounterRng rng(seed, StreamTag::kLabels);
  for (int i = 0; i < n; ++i) {
    data.y[i] = rng.Uniform(i) < Sigmoid(data.y[i]) ? 1.0 : 0.0;
  }
  return data;
}

// Objective gradient written directly from the loss definitions.
Eigen::VectorXd ReferenceGradient(const Dataset& data, const LossModel& loss,
                                  double lambda, double nu,
                                  const Eigen::VectorXd& xi,
                                  const Eigen::VectorXd& beta) {
  Eigen::VectorXd g = lambda * beta + nu * xi;
  for (int i = 0; i < data.n(); ++i) {
    double eta = 0.0;
    for (int j = 0; j < data.d(); ++j) eta += data.X(i, j) * beta[j];
    double slope;
    if (loss.kind == LossKind::kHuber) {
      slope = -std::min(loss.L, std::max(-loss.L, data.y[i] - eta));
    } else {
      slope = Sigmoid(eta) - data.y[i];
    }
    for (int j = 0; j < data.d(); ++j) g[j] += slope * data.X(i, j);
  }
  return g;
}

TEST(DatasetTest, ValidatesInputs) {
  Eigen::MatrixXd X(2, 2);
  X << 0.6, 0.8, 1.0, 0.0;
  EXPECT_TRUE(Dataset::Create(X, Eigen::VectorXd::Zero(2), 1.0).ok());
  EXPECT_FALSE(Dataset::Create(X, Eigen::VectorXd::Zero(3), 1.0).ok());
  EXPECT_FALSE(Dataset::Create(X, Eigen::VectorXd::Zero(2), 0.99).ok());
  Eigen::MatrixXd bad = X;
  bad(0, 0) = std::nan("");
  EXPECT_EQ(Dataset::Create(bad, Eigen::VectorXd::Zero(2), 5.0).status().code(),
            absl::StatusCode::kInvalidArgument);
  Eigen::VectorXd y(2);
  y << 1.0, INFINITY;
  EXPECT_FALSE(Dataset::Create(X, y, 1.0).ok());
  EXPECT_FALSE(Dataset::Create(Eigen::MatrixXd(0, 2), Eigen::VectorXd(0), 1.0).ok());
}

TEST(ObjectivePerturbationFitTest, OneDimensionalHuberClosedForm) {
  Eigen::MatrixXd X(1, 1);
  X << 1.0;
  Eigen::VectorXd y(1);
  y << 1.0;
  const Dataset data = *Dataset::Create(X, y, 1.0);
  const FitResult fit =
      *FitObjectivePerturbation(data, LossModel::Huber(2.0), 1.0, 0.0, 7);
  EXPECT_NEAR(fit.beta_hat[0], 0.5, 1e-9);

  Eigen::VectorXd xi(1);
  xi << 1.0;
  const PerturbedObjective objective(data, LossModel::Huber(2.0), 1.0, 1.0, xi);
  const GdResult gd = *MinimizeGd(objective, Eigen::VectorXd::Zero(1));
  EXPECT_NEAR(gd.beta[0], 0.0, 1e-9);
}

TEST(ObjectivePerturbationFitTest, LogisticSymmetricPair) {
  Eigen::MatrixXd X(2, 1);
  X << 1.0, 1.0;
  Eigen::VectorXd y(2);
  y << 0.0, 1.0;
  const Dataset data = *Dataset::Create(X, y, 1.0);
  const FitResult fit =
      *FitObjectivePerturbation(data, LossModel::Logistic(), 1.0, 0.0, 3);
  EXPECT_NEAR(fit.beta_hat[0], 0.0, 1e-12);
}

TEST(ObjectivePerturbationFitTest, IndependentOptimalityCertificate) {
  for (int n : {10, 60, 400}) {
    const Dataset lin = LinearData(n, 20, 100 + n);
    const Dataset logi = LogisticData(n, 20, 200 + n);
    for (double nu : {0.0, 0.7}) {
      const FitResult h =
          *FitObjectivePerturbation(lin, LossModel::Huber(0.5), 0.8, nu, 5);
      EXPECT_LE(ReferenceGradient(lin, LossModel::Huber(0.5), 0.8, nu, h.xi,
                                  h.beta_hat)
                    .norm(),
                1e-8 * std::max(1, n));
      EXPECT_LE(h.grad_norm, 1e-9 * std::max(1, n));
      const FitResult l =
          *FitObjectivePerturbation(logi, LossModel::Logistic(), 0.8, nu, 5);
      EXPECT_LE(ReferenceGradient(logi, LossModel::Logistic(), 0.8, nu, l.xi,
                                  l.beta_hat)
                    .norm(),
                1e-8 * std::max(1, n));
    }
  }
}

TEST(ObjectivePerturbationFitTest, StrongConvexityGap) {
  const Dataset data = LinearData(80, 15, 9);
  const double lambda = 0.6, nu = 0.4;
  const FitResult fit =
      *FitObjectivePerturbation(data, LossModel::Huber(0.7), lambda, nu, 21);
  const PerturbedObjective objective(data, LossModel::Huber(0.7), lambda, nu,
                                     fit.xi);
  const double best = objective.Value(fit.beta_hat);
  EXPECT_DOUBLE_EQ(best, fit.objective_value);
  const CounterRng rng(10, StreamTag::kTest);
  for (int probe = 0; probe < 100; ++probe) {
    Eigen::VectorXd beta(15);
    for (int j = 0; j < 15; ++j) {
      beta[j] = fit.beta_hat[j] + (probe % 5 + 1) * 0.3 * rng.Normal(probe * 15 + j);
    }
    EXPECT_GE(objective.Value(beta),
              best + 0.5 * lambda * (beta - fit.beta_hat).squaredNorm() - 1e-8);
  }
}

TEST(ObjectivePerturbationFitTest, XiDependsOnlyOnSeed) {
  const Dataset a = LinearData(30, 8, 1);
  const Dataset b = LogisticData(50, 8, 2);
  const FitResult fa = *FitObjectivePerturbation(a, LossModel::Huber(1.0), 1.0, 0.5, 99);
  const FitResult fb = *FitObjectivePerturbation(b, LossModel::Logistic(), 2.0, 0.1, 99);
  EXPECT_EQ(fa.xi, fb.xi);
  EXPECT_EQ(fa.xi, PerturbationVector(99, 8));
  EXPECT_NE(PerturbationVector(98, 8), PerturbationVector(99, 8));
}

TEST(ObjectivePerturbationFitTest, ZeroNuIgnoresXi) {
  const Dataset data = LinearData(40, 10, 4);
  const FitResult a = *FitObjectivePerturbation(data, LossModel::Huber(1.0), 1.0, 0.0, 1);
  const FitResult b = *FitObjectivePerturbation(data, LossModel::Huber(1.0), 1.0, 0.0, 2);
  EXPECT_NE(a.xi, b.xi);
  EXPECT_EQ(a.beta_hat, b.beta_hat);
}

TEST(ObjectivePerturbationFitTest, RejectsBadParameters) {
  const Dataset data = LinearData(10, 3, 4);
  EXPECT_EQ(FitObjectivePerturbation(data, LossModel::Huber(1.0), 0.0, 0.0, 1)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(FitObjectivePerturbation(data, LossModel::Huber(1.0), 1.0, -1.0, 1).ok());
  EXPECT_FALSE(FitObjectivePerturbation(data, LossModel::Huber(0.0), 1.0, 0.0, 1).ok());
  EXPECT_FALSE(FitObjectivePerturbation(data, LossModel::LogisticCe(), 1.0, 0.0, 1).ok());
  EXPECT_FALSE(FitOutputPerturbation(data, LossModel::Huber(1.0), -2.0, 0.0, 1).ok());
}

TEST(OptimizerTest, StallReportsGradientNorm) {
  const Dataset data = LinearData(50, 10, 5);
  const PerturbedObjective objective(data, LossModel::Huber(1.0), 1.0, 0.0,
                                     Eigen::VectorXd::Zero(10));
  GdOptions options;
  options.max_iterations = 1;
  const absl::StatusOr<GdResult> r =
      MinimizeGd(objective, Eigen::VectorXd::Zero(10), options);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kInternal);
  EXPECT_NE(std::string(r.status().message()).find("grad"), std::string::npos);
}

TEST(OptimizerTest, GradientMatchesReference) {
  const Dataset data = LogisticData(25, 6, 6);
  const Eigen::VectorXd xi = PerturbationVector(3, 6);
  const PerturbedObjective objective(data, LossModel::Logistic(), 0.3, 0.9, xi);
  const CounterRng rng(11, StreamTag::kTest);
  for (int k = 0; k < 10; ++k) {
    Eigen::VectorXd beta(6);
    for (int j = 0; j < 6; ++j) beta[j] = 2.0 * rng.Normal(6 * k + j);
    EXPECT_LE((objective.Gradient(beta) -
               ReferenceGradient(data, LossModel::Logistic(), 0.3, 0.9, xi, beta))
                  .norm(),
              1e-12);
  }
}

TEST(OutputPerturbationFitTest, ZeroNuMatchesObjectiveFit) {
  const Dataset data = LogisticData(60, 12, 7);
  const FitResult out = *FitOutputPerturbation(data, LossModel::Logistic(), 1.0, 0.0, 13);
  const FitResult obj = *FitObjectivePerturbation(data, LossModel::Logistic(), 1.0, 0.0, 13);
  EXPECT_EQ(out.beta_hat, obj.beta_hat);
  EXPECT_EQ(out.beta_tilde, out.beta_hat);
}

TEST(OutputPerturbationFitTest, NoiseHasZeroMeanAndVarianceNuSquared) {
  const Dataset data = LinearData(20, 3, 8);
  const double nu = 0.5;
  const int seeds = 10000;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd sum_sq = Eigen::VectorXd::Zero(3);
  for (int s = 0; s < seeds; ++s) {
    const FitResult fit = *FitOutputPerturbation(data, LossModel::Huber(1.0), 1.0, nu, s);
    const Eigen::VectorXd diff = fit.beta_hat - fit.beta_tilde;
    sum += diff;
    sum_sq += diff.cwiseProduct(diff);
  }
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(sum[j] / seeds, 0.0, 4.0 * nu / std::sqrt(seeds));
    EXPECT_NEAR(sum_sq[j] / seeds, nu * nu,
                4.0 * nu * nu * std::sqrt(2.0 / seeds));
  }
}

// E[H_L(m + e)] for e ~ N(0, s^2) by Simpson, an oracle for the
// conditional-expectation loss value.
double ExpectedHuberOracle(double m, double s, double L) {
  return Simpson(
      [&](double z) {
        const double r = m + s * z;
        const double a = std::abs(r);
        return (a <= L ? 0.5 * r * r : L * a - 0.5 * L * L) * NormalDensity(z);
      },
      -12.0, 12.0, 20000);
}

TEST(LossModelTest, HuberCeValueMatchesOracle) {
  const LossModel loss = LossModel::HuberCe(0.8, NoiseLaw::Gaussian(0.3));
  for (double m : {-3.0, -0.5, 0.0, 0.2, 0.79, 2.5}) {
    EXPECT_NEAR(LossValue(loss, 0.0, m), ExpectedHuberOracle(m, 0.3, 0.8), 1e-10);
  }
}

TEST(LossModelTest, DerivativesMatchFiniteDifferences) {
  const CounterRng rng(12, StreamTag::kTest);
  const LossModel losses[] = {
      LossModel::Huber(0.7), LossModel::Logistic(),
      LossModel::HuberCe(0.7, NoiseLaw::Gaussian(0.2)),
      LossModel::HuberCe(1.0, *NoiseLaw::Parse("mixture:0.5:-0.3:0.1;0.5:0.3:0")),
      LossModel::LogisticCe()};
  for (const LossModel& loss : losses) {
    for (int k = 0; k < 50; ++k) {
      const double eta = 2.0 * rng.Normal(2 * k);
      const double y = loss.kind == LossKind::kLogistic
                           ? (k % 2)
                           : 2.0 * rng.Normal(2 * k + 1);
      const double h = 1e-5;
      const double fd =
          (LossValue(loss, eta + h, y) - LossValue(loss, eta - h, y)) / (2 * h);
      if (loss.kind == LossKind::kHuber &&
          std::abs(std::abs(y - eta) - loss.L) < 1e-3) {
        continue;
      }
      EXPECT_NEAR(LossDerivative(loss, eta, y), fd, 1e-6) << loss.name();
    }
  }
}

TEST(LossModelTest, HuberCeObjectiveGradientMatchesFiniteDifferences) {
  const Dataset data = LinearData(15, 5, 14);
  const LossModel loss = LossModel::HuberCe(0.6, NoiseLaw::Gaussian(0.2));
  const PerturbedObjective objective(data, loss, 0.0, 0.0,
                                     Eigen::VectorXd::Zero(5));
  const CounterRng rng(13, StreamTag::kTest);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    Eigen::VectorXd beta(5);
    for (int j = 0; j < 5; ++j) beta[j] = 1.5 * rng.Normal(5 * k + j);
    const Eigen::VectorXd g = objective.Gradient(beta);
    for (int j = 0; j < 5; ++j) {
      const double h = 1e-5;
      Eigen::VectorXd up = beta, down = beta;
      up[j] += h;
      down[j] -= h;
      const double fd = (objective.Value(up) - objective.Value(down)) / (2 * h);
      worst = std::max(worst, std::abs(fd - g[j]));
    }
  }
  EXPECT_LE(worst, 1e-5);
}

TEST(LossModelTest, LogisticCeGradientAtZero) {
  const Dataset data = LinearData(12, 4, 15);
  Eigen::VectorXd expected = Eigen::VectorXd::Zero(4);
  for (int i = 0; i < data.n(); ++i) {
    expected += (0.5 - Sigmoid(data.y[i])) * data.X.row(i).transpose();
    EXPECT_NEAR(LossDerivative(LossModel::LogisticCe(), 0.0, data.y[i]),
                0.5 - Sigmoid(data.y[i]), 1e-15);
  }
  const PerturbedObjective objective(data, LossModel::LogisticCe(), 0.0, 0.0,
                                     Eigen::VectorXd::Zero(4));
  EXPECT_LE((objective.Gradient(Eigen::VectorXd::Zero(4)) - expected).norm(), 1e-14);
}

TEST(NoisyGdTest, OneStepLeastSquaresOracle) {
  Dataset data = LinearData(30, 10, 16);
  const CounterRng rng(17, StreamTag::kTest);
  Eigen::VectorXd beta_star(10);
  for (int j = 0; j < 10; ++j) beta_star[j] = rng.Normal(j);
  data.y = data.X * beta_star;
  const double step = 0.05;
  const NoisyGdTrajectory traj = *RunNoisyGd(
      data, LossModel::HuberCe(1e6, NoiseLaw::PointMass(0.0)), step, 0.0, 1, 4);
  ASSERT_EQ(traj.iterates.size(), 2u);
  EXPECT_EQ(traj.iterates[0], Eigen::VectorXd::Zero(10));
  const Eigen::VectorXd expected =
      step * data.X.transpose() * (data.X * beta_star);
  EXPECT_LE((traj.iterates[1] - expected).norm(), 1e-12);
}

TEST(NoisyGdTest, NoiseEntersEachStep) {
  const Dataset data = LinearData(30, 6, 18);
  const LossModel loss = LossModel::HuberCe(0.5, NoiseLaw::Gaussian(0.2));
  const NoisyGdTrajectory quiet = *RunNoisyGd(data, loss, 0.1, 0.0, 2, 8);
  const NoisyGdTrajectory noisy = *RunNoisyGd(data, loss, 0.1, 0.3, 2, 8);
  ASSERT_EQ(noisy.xis.size(), 2u);
  EXPECT_LE((noisy.iterates[1] - (quiet.iterates[1] - 0.1 * 0.3 * noisy.xis[0])).norm(),
            1e-14);
  EXPECT_NE(noisy.xis[0], noisy.xis[1]);
}

TEST(NoisyGdTest, BitwiseReproducible) {
  const Dataset data = LogisticData(40, 9, 19);
  Dataset ce = data;
  ce.y = data.X * Eigen::VectorXd::Ones(9);
  const NoisyGdTrajectory a = *RunNoisyGd(ce, LossModel::LogisticCe(), 0.2, 0.5, 5, 77);
  const NoisyGdTrajectory b = *RunNoisyGd(ce, LossModel::LogisticCe(), 0.2, 0.5, 5, 77);
  for (int t = 0; t <= 5; ++t) EXPECT_EQ(a.iterates[t], b.iterates[t]);
  const NoisyGdTrajectory c = *RunNoisyGd(ce, LossModel::LogisticCe(), 0.2, 0.5, 5, 78);
  EXPECT_NE(a.iterates[5], c.iterates[5]);
}

TEST(NoisyGdTest, RequiresConditionalExpectationLoss) {
  const Dataset data = LinearData(10, 3, 20);
  EXPECT_EQ(RunNoisyGd(data, LossModel::Huber(1.0), 0.1, 0.0, 1, 1).status().code(),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace propdp
