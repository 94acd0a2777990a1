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

#include "propdp/theory/laws.h"

#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "propdp/common/number_format.h"

namespace propdp {
namespace {

double ComponentMoment(const LawComponent& c, int k) {
  const double m = c.mean;
  const double v = c.stddev * c.stddev;
  switch (k) {
    case 0:
      return 1.0;
    case 1:
      return m;
    case 2:
      return m * m + v;
    case 3:
      return m * m * m + 3.0 * m * v;
    case 4:
      return m * m * m * m + 6.0 * m * m * v + 3.0 * v * v;
    default:
      return std::numeric_limits<double>::quiet_NaN();
  }
}

absl::StatusOr<double> ParseNumber(absl::string_view text) {
  double value = 0.0;
  if (!absl::SimpleAtod(text, &value) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid number in law: '", text, "'"));
  }
  return value;
}

}  // namespace

ScalarLaw::ScalarLaw(LawKind kind, std::vector<LawComponent> parts)
    : kind_(kind), components_(std::move(parts)) {
  second_moment_ = Moment(2);
}

ScalarLaw ScalarLaw::Gaussian(double stddev, double mean) {
  return ScalarLaw(LawKind::kGaussian, {{1.0, mean, std::abs(stddev)}});
}

ScalarLaw ScalarLaw::PointMass(double value) {
  return ScalarLaw(LawKind::kPointMass, {{1.0, value, 0.0}});
}

absl::StatusOr<ScalarLaw> ScalarLaw::Mixture(std::vector<LawComponent> parts) {
  if (parts.empty()) {
    return absl::InvalidArgumentError("mixture needs at least one component.");
  }
  double total = 0.0;
  for (const LawComponent& c : parts) {
    if (!(c.weight >= 0.0) || !(c.stddev >= 0.0) || !std::isfinite(c.mean) ||
        !std::isfinite(c.stddev)) {
      return absl::InvalidArgumentError(
          "mixture weights and standard deviations should be nonnegative.");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    return absl::InvalidArgumentError(
        absl::StrFormat("mixture weights sum to %.17g, not 1.", total));
  }
  return ScalarLaw(LawKind::kMixture, std::move(parts));
}

absl::StatusOr<ScalarLaw> ScalarLaw::Parse(absl::string_view text) {
  std::vector<absl::string_view> head = absl::StrSplit(text, absl::MaxSplits(':', 1));
  if (head.size() != 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("law should look like 'kind:params', got '", text, "'"));
  }
  const absl::string_view kind = head[0];
  if (kind == "gaussian") {
    std::vector<absl::string_view> args = absl::StrSplit(head[1], ':');
    if (args.size() == 1) {
      absl::StatusOr<double> sd = ParseNumber(args[0]);
      if (!sd.ok()) return sd.status();
      if (*sd < 0.0) return absl::InvalidArgumentError("stddev should be >= 0.");
      return Gaussian(*sd);
    }
    if (args.size() == 2) {
      absl::StatusOr<double> mean = ParseNumber(args[0]);
      absl::StatusOr<double> sd = ParseNumber(args[1]);
      if (!mean.ok()) return mean.status();
      if (!sd.ok()) return sd.status();
      if (*sd < 0.0) return absl::InvalidArgumentError("stddev should be >= 0.");
      return Gaussian(*sd, *mean);
    }
    return absl::InvalidArgumentError("gaussian takes STD or MEAN:STD.");
  }
  if (kind == "point_mass") {
    absl::StatusOr<double> value = ParseNumber(head[1]);
    if (!value.ok()) return value.status();
    return PointMass(*value);
  }
  if (kind == "mixture") {
    std::vector<LawComponent> parts;
    for (absl::string_view piece : absl::StrSplit(head[1], ';')) {
      std::vector<absl::string_view> f = absl::StrSplit(piece, ':');
      if (f.size() != 3) {
        return absl::InvalidArgumentError(
            "mixture components should look like 'W:MEAN:STD'.");
      }
      LawComponent c;
      absl::StatusOr<double> w = ParseNumber(f[0]);
      absl::StatusOr<double> m = ParseNumber(f[1]);
      absl::StatusOr<double> s = ParseNumber(f[2]);
      if (!w.ok()) return w.status();
      if (!m.ok()) return m.status();
      if (!s.ok()) return s.status();
      c.weight = *w;
      c.mean = *m;
      c.stddev = *s;
      parts.push_back(c);
    }
    return Mixture(std::move(parts));
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown law kind '", kind, "'"));
}

double ScalarLaw::Moment(int k) const {
  double total = 0.0;
  for (const LawComponent& c : components_) {
    total += c.weight * ComponentMoment(c, k);
  }
  return total;
}

double ScalarLaw::Sample(uint64_t seed, StreamTag tag, uint64_t index) const {
  const LawComponent* chosen = &components_.back();
  if (components_.size() > 1) {
    const double u = CounterRng(seed, tag, 1).Uniform(index);
    double acc = 0.0;
    for (const LawComponent& c : components_) {
      acc += c.weight;
      if (u < acc) {
        chosen = &c;
        break;
      }
    }
  }
  if (chosen->stddev == 0.0) return chosen->mean;
  return chosen->mean +
         chosen->stddev * CounterRng(seed, tag, 0).Normal(index);
}

std::string ScalarLaw::ToString() const {
  switch (kind_) {
    case LawKind::kGaussian: {
      const LawComponent& c = components_.front();
      if (c.mean == 0.0) return absl::StrCat("gaussian:", FormatDouble(c.stddev));
      return absl::StrCat("gaussian:", FormatDouble(c.mean), ":",
                          FormatDouble(c.stddev));
    }
    case LawKind::kPointMass:
      return absl::StrCat("point_mass:", FormatDouble(components_.front().mean));
    case LawKind::kMixture: {
      std::string out = "mixture:";
      for (size_t i = 0; i < components_.size(); ++i) {
        const LawComponent& c = components_[i];
        absl::StrAppend(&out, i == 0 ? "" : ";", FormatDouble(c.weight), ":",
                        FormatDouble(c.mean), ":", FormatDouble(c.stddev));
      }
      return out;
    }
  }
  return "";
}

double ScalarLaw::CenteredScale() const {
  if (components_.size() == 1 && components_.front().mean == 0.0) {
    return components_.front().stddev;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace propdp
