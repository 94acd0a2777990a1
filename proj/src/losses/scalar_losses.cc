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

#include "propdp/losses/scalar_losses.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace propdp {
namespace {

constexpr int kProxMaxIterations = 200;
constexpr double kProxTolerance = 1e-12;

}  // namespace

double Huber(double r, double L) {
  const double a = std::abs(r);
  if (a <= L) return 0.5 * r * r;
  return L * a - 0.5 * L * L;
}

double Clip(double r, double L) { return std::clamp(r, -L, L); }

double ProxHuber(double s, double tau, double L) {
  return s - tau * Clip(s / (1.0 + tau), L);
}

double LogisticRho(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double LogisticRhoPrime(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double LogisticRhoSecond(double t) {
  const double e = std::exp(-std::abs(t));
  const double d = 1.0 + e;
  return e / (d * d);
}

double ProxLogistic(double x, double gamma) {
  if (gamma == 0.0) return x;
  const double tol = std::max(
      kProxTolerance, 8.0 * std::numeric_limits<double>::epsilon() * std::abs(x));
  double lo = x - gamma;
  double hi = x;
  double p = x - gamma * LogisticRhoPrime(x);
  double step = hi - lo;
  double prev_step = step;
  for (int it = 0; it < kProxMaxIterations; ++it) {
    const double g = p + gamma * LogisticRhoPrime(p) - x;
    if (std::abs(g) <= tol) return p;
    if (g > 0.0) {
      hi = p;
    } else {
      lo = p;
    }
    const double slope = 1.0 + gamma * LogisticRhoSecond(p);
    double next = p - g / slope;
    // Bisect when Newton leaves the bracket or fails to halve the step
    // taken two iterations ago.
    if (!(next > lo && next < hi) ||
        std::abs(2.0 * g) > std::abs(prev_step * slope)) {
      next = 0.5 * (lo + hi);
    }
    prev_step = step;
    step = next - p;
    if (next == p) return p;
    p = next;
  }
  return p;
}

double ProxLogisticDerivative(double x, double gamma) {
  if (gamma == 0.0) return 1.0;
  return 1.0 / (1.0 + gamma * LogisticRhoSecond(ProxLogistic(x, gamma)));
}

}  // namespace propdp
