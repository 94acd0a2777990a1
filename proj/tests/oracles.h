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

// Reference implementations used as test oracles. None of these share code
// with the library under test.

#ifndef PROPDP_TESTS_ORACLES_H_
#define PROPDP_TESTS_ORACLES_H_

#include <cmath>
#include <functional>

namespace propdp::testing {

inline double Sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

inline double NormalCdfErf(double x) {
  return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0)));
}

inline double NormalDensity(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

// Minimizer of a unimodal f on [a, b].
inline double GoldenSection(const std::function<double(double)>& f, double a,
                            double b, double tol = 1e-13) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Root of an increasing f on [a, b] with f(a) <= 0 <= f(b).
inline double Bisect(const std::function<double(double)>& f, double a,
                     double b) {
  for (int i = 0; i < 200 && b - a > 0.0; ++i) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (f(m) < 0.0) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Composite Simpson rule with `intervals` (even) panels.
inline double Simpson(const std::function<double(double)>& f, double a,
                      double b, int intervals) {
  const double h = (b - a) / intervals;
  double total = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    total += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  }
  return total * h / 3.0;
}

// E[f(Z)] for Z ~ N(0, 1) by Simpson on [-12, 12].
inline double NormalExpectation(const std::function<double(double)>& f,
                                int intervals = 200000) {
  return Simpson([&](double z) { return f(z) * NormalDensity(z); }, -12.0,
                 12.0, intervals);
}

}  // namespace propdp::testing

#endif  // PROPDP_TESTS_ORACLES_H_
