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

#ifndef PROPDP_LOSSES_GAUSSIAN_H_
#define PROPDP_LOSSES_GAUSSIAN_H_

namespace propdp {

// Standard normal density.
double GaussianPdf(double x);

// Standard normal CDF, computed from erfc so that both tails keep full
// relative precision.
double GaussianCdf(double x);

// Upper tail 1 - Phi(x).
double GaussianSf(double x);

// log Phi(x), finite for every finite x.
double LogGaussianCdf(double x);

// E[[sZ]_L^2] for Z ~ N(0,1). Zero when s = 0.
double TruncatedSecondMoment(double s, double L);

// E[[mu + sZ]_L^2]. Reduces to TruncatedSecondMoment when mu = 0.
double ClippedSecondMoment(double mu, double s, double L);

// E[[mu + sZ]_L]. Equals Clip(mu, L) when s = 0.
double ClippedMean(double mu, double s, double L);

// P(|mu + sZ| < L). Indicator of |mu| < L when s = 0.
double IntervalProbability(double mu, double s, double L);

}  // namespace propdp

#endif  // PROPDP_LOSSES_GAUSSIAN_H_
