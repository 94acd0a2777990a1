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

#include "propdp/erm/loss_model.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "propdp/losses/scalar_losses.h"
#include "propdp/theory/quadrature.h"

namespace propdp {
namespace {

constexpr int kNodesPerPiece = 40;
constexpr double kTailCut = 12.0;

// E[H_L(m + s Z)] by Gauss-Legendre on [-12, 12] split where m + s z = +-L.
double ExpectedHuber(double m, double s, double L) {
  if (s == 0.0) return Huber(m, L);
  std::vector<double> cuts = {-kTailCut};
  for (double kink : {(-L - m) / s, (L - m) / s}) {
    if (kink > -kTailCut && kink < kTailCut) cuts.push_back(kink);
  }
  cuts.push_back(kTailCut);
  std::sort(cuts.begin(), cuts.end());
  // Three pieces of 40 nodes regardless of how many kinks fall inside.
  while (cuts.size() < 4) {
    size_t widest = 0;
    for (size_t i = 1; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] - cuts[i] > cuts[widest + 1] - cuts[widest]) widest = i;
    }
    cuts.insert(cuts.begin() + widest + 1,
                0.5 * (cuts[widest] + cuts[widest + 1]));
  }
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += IntegrateLegendre(
        [&](double z) { return Huber(m + s * z, L) * GaussianPdf(z); },
        cuts[i], cuts[i + 1], kNodesPerPiece);
  }
  return total;
}

}  // namespace

double LossModel::smoothness() const {
  switch (kind) {
    case LossKind::kHuber:
    case LossKind::kHuberCe:
      return 1.0;
    case LossKind::kLogistic:
    case LossKind::kLogisticCe:
      return 0.25;
  }
  return 1.0;
}

std::string LossModel::name() const {
  switch (kind) {
    case LossKind::kHuber:
      return "huber";
    case LossKind::kLogistic:
      return "logistic";
    case LossKind::kHuberCe:
      return "huber_ce";
    case LossKind::kLogisticCe:
      return "logistic_ce";
  }
  return "";
}

double LossValue(const LossModel& loss, double eta, double y) {
  switch (loss.kind) {
    case LossKind::kHuber:
      return Huber(y - eta, loss.L);
    case LossKind::kLogistic:
      return LogisticRho(eta) - y * eta;
    case LossKind::kHuberCe: {
      double total = 0.0;
      for (const LawComponent& c : loss.noise.components()) {
        total += c.weight * ExpectedHuber(y + c.mean - eta, c.stddev, loss.L);
      }
      return total;
    }
    case LossKind::kLogisticCe:
      return LogisticRho(eta) - LogisticRhoPrime(y) * eta;
  }
  return 0.0;
}

double LossDerivative(const LossModel& loss, double eta, double y) {
  switch (loss.kind) {
    case LossKind::kHuber:
      return -Clip(y - eta, loss.L);
    case LossKind::kLogistic:
      return LogisticRhoPrime(eta) - y;
    case LossKind::kHuberCe: {
      double total = 0.0;
      for (const LawComponent& c : loss.noise.components()) {
        total += c.weight * ClippedMean(y + c.mean - eta, c.stddev, loss.L);
      }
      return -total;
    }
    case LossKind::kLogisticCe:
      return LogisticRhoPrime(eta) - LogisticRhoPrime(y);
  }
  return 0.0;
}

}  // namespace propdp
