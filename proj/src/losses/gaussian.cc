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

#include "propdp/losses/gaussian.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace propdp {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

// z * phi(z), zero at infinity.
double ZPdf(double z) {
  if (!std::isfinite(z)) return 0.0;
  return z * GaussianPdf(z);
}

// Phi(b) - Phi(a) for a <= b, evaluated in the tail where it is accurate.
double Mass(double a, double b) {
  if (a >= 0.0) return GaussianSf(a) - GaussianSf(b);
  if (b <= 0.0) return GaussianCdf(b) - GaussianCdf(a);
  return 1.0 - GaussianCdf(a) - GaussianSf(b);
}

}  // namespace

double GaussianPdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double GaussianCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double GaussianSf(double x) {
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double LogGaussianCdf(double x) {
  if (x > 0.0) return std::log1p(-GaussianSf(x));
  if (x > -37.0) return std::log(GaussianCdf(x));
  // Mills-ratio series: Phi(x) ~ phi(x) / |x| (1 - 1/x^2 + 3/x^4 - ...).
  const double inv = 1.0 / (x * x);
  double term = 1.0, series = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -(2.0 * k - 1.0) * inv;
    series += term;
  }
  return -0.5 * x * x - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) +
         std::log(series);
}

double TruncatedSecondMoment(double s, double L) {
  if (s == 0.0) return 0.0;
  const double t = L / s;
  const double tail = GaussianSf(t);
  return s * s * (1.0 - 2.0 * tail) - 2.0 * s * L * GaussianPdf(t) +
         2.0 * L * L * tail;
}

double ClippedSecondMoment(double mu, double s, double L) {
  if (s == 0.0) {
    const double c = std::clamp(mu, -L, L);
    return c * c;
  }
  const double a = (-L - mu) / s;
  const double b = (L - mu) / s;
  const double inside = Mass(a, b);
  const double outside = GaussianCdf(a) + GaussianSf(b);
  return L * L * outside + mu * mu * inside +
         2.0 * mu * s * (GaussianPdf(a) - GaussianPdf(b)) +
         s * s * (inside + ZPdf(a) - ZPdf(b));
}

double ClippedMean(double mu, double s, double L) {
  if (s == 0.0) return std::clamp(mu, -L, L);
  const double a = (-L - mu) / s;
  const double b = (L - mu) / s;
  return mu * Mass(a, b) - s * (GaussianPdf(b) - GaussianPdf(a)) -
         L * GaussianCdf(a) + L * GaussianSf(b);
}

double IntervalProbability(double mu, double s, double L) {
  if (s == 0.0) return std::abs(mu) < L ? 1.0 : 0.0;
  return Mass((-L - mu) / s, (L - mu) / s);
}

}  // namespace propdp
