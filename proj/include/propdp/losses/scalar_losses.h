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

// Scalar calculus for the Huber and logistic losses. All functions are pure.
// Non-finite inputs propagate as NaN rather than raising; callers validate
// data at the Dataset and config boundaries.

#ifndef PROPDP_LOSSES_SCALAR_LOSSES_H_
#define PROPDP_LOSSES_SCALAR_LOSSES_H_

#include "propdp/losses/gaussian.h"

namespace propdp {

// Huber loss H_L(r): r^2/2 on [-L, L], L|r| - L^2/2 outside.
double Huber(double r, double L);

// Truncation [r]_L = min(L, max(-L, r)), the derivative of H_L.
double Clip(double r, double L);

// argmin_y 1/2 (y - s)^2 + tau H_L(y).
double ProxHuber(double s, double tau, double L);

// rho(t) = log(1 + e^t) and its first two derivatives.
double LogisticRho(double t);
double LogisticRhoPrime(double t);
double LogisticRhoSecond(double t);

// Unique p with p + gamma rho'(p) = x. Identity when gamma = 0.
double ProxLogistic(double x, double gamma);

// d/dx ProxLogistic(x, gamma) = 1 / (1 + gamma rho''(prox)).
double ProxLogisticDerivative(double x, double gamma);

}  // namespace propdp

#endif  // PROPDP_LOSSES_SCALAR_LOSSES_H_
