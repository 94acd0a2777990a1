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

#ifndef PROPDP_THEORY_LAWS_H_
#define PROPDP_THEORY_LAWS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "propdp/common/counter_rng.h"

namespace propdp {

// One Gaussian component N(mean, stddev^2); stddev = 0 is a point mass.
struct LawComponent {
  double weight = 1.0;
  double mean = 0.0;
  double stddev = 0.0;
};

enum class LawKind { kGaussian, kPointMass, kMixture };

// Scalar law given as a finite mixture of Gaussians and point masses. Used
// for both the limiting noise law and the limiting signal law.
class ScalarLaw {
 public:
  static ScalarLaw Gaussian(double stddev, double mean = 0.0);
  static ScalarLaw PointMass(double value);
  static absl::StatusOr<ScalarLaw> Mixture(std::vector<LawComponent> parts);

  // Parses "gaussian:STD", "gaussian:MEAN:STD", "point_mass:VALUE" or
  // "mixture:W:MEAN:STD;W:MEAN:STD;...".
  static absl::StatusOr<ScalarLaw> Parse(absl::string_view text);

  LawKind kind() const { return kind_; }
  const std::vector<LawComponent>& components() const { return components_; }

  // E[X^k] for k = 0..4.
  double Moment(int k) const;
  double second_moment() const { return second_moment_; }

  // Draw i of the stream keyed by (seed, tag).
  double Sample(uint64_t seed, StreamTag tag, uint64_t index) const;

  // Canonical text form accepted by Parse.
  std::string ToString() const;

  // Standard deviation of a single zero-mean Gaussian or point mass at zero;
  // NaN for other laws.
  double CenteredScale() const;

 private:
  ScalarLaw(LawKind kind, std::vector<LawComponent> parts);

  LawKind kind_;
  std::vector<LawComponent> components_;
  double second_moment_ = 0.0;
};

using NoiseLaw = ScalarLaw;
using SignalLaw = ScalarLaw;

}  // namespace propdp

#endif  // PROPDP_THEORY_LAWS_H_
