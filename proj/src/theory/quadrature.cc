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

#include "propdp/theory/quadrature.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "Eigen/Dense"

namespace propdp {
namespace {

constexpr int kMaxNewtonSteps = 100;

// Physicists' Gauss-Hermite rule (weight e^{-x^2}), rescaled to the
// standard normal. Eigenvalues of the Jacobi matrix seed a Newton polish on
// the orthonormal Hermite recurrence, which also yields the weights.
QuadratureRule ComputeHermite(int n) {
  const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  // Eigenvalues ascend; x[i] holds the i-th largest root.
  const Eigen::VectorXd& roots = eig.eigenvalues();
  for (int i = 0; i < m; ++i) {
    double z = roots[n - 1 - i];
    double pp = 0.0;
    for (int it = 0; it < kMaxNewtonSteps; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 -
             std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      // The recurrence overflows far in the tail, where the weight is below
      // the smallest double anyway.
      if (!std::isfinite(pp) || !std::isfinite(p1)) {
        z = roots[n - 1 - i];
        pp = std::numeric_limits<double>::infinity();
        break;
      }
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Ascending node order.
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = -std::numbers::sqrt2 * x[i];
    rule.weights[i] = w[i] / std::sqrt(std::numbers::pi);
  }
  return rule;
}

QuadratureRule ComputeLegendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < kMaxNewtonSteps; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

template <typename Compute>
const QuadratureRule& Cached(std::map<int, std::unique_ptr<QuadratureRule>>& cache,
                             std::mutex& mu, int n, Compute compute) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<QuadratureRule>(compute(n))).first;
  }
  return *it->second;
}

}  // namespace

const QuadratureRule& GaussHermiteRule(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  return Cached(cache, mu, n, ComputeHermite);
}

const QuadratureRule& GaussLegendreRule(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  return Cached(cache, mu, n, ComputeLegendre);
}

}  // namespace propdp
