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

#ifndef PROPDP_THEORY_QUADRATURE_H_
#define PROPDP_THEORY_QUADRATURE_H_

#include <vector>

namespace propdp {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Hermite rule for E[f(Z)], Z ~ N(0,1): weights sum to one.
// Rules are computed once per n and cached; the returned reference stays
// valid for the life of the process.
const QuadratureRule& GaussHermiteRule(int n);

// n-point Gauss-Legendre rule on [-1, 1].
const QuadratureRule& GaussLegendreRule(int n);

// Integral of f over [a, b] with the n-point Gauss-Legendre rule.
template <typename F>
double IntegrateLegendre(F&& f, double a, double b, int n) {
  const QuadratureRule& rule = GaussLegendreRule(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double total = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    total += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * total;
}

// E[f(Z)] with the n-point Gauss-Hermite rule.
template <typename F>
double ExpectNormal(F&& f, int n) {
  const QuadratureRule& rule = GaussHermiteRule(n);
  double total = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    total += rule.weights[i] * f(rule.nodes[i]);
  }
  return total;
}

}  // namespace propdp

#endif  // PROPDP_THEORY_QUADRATURE_H_
