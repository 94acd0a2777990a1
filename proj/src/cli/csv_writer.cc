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

#include "propdp/cli/csv_writer.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "propdp/common/number_format.h"

namespace propdp {

std::string CsvLine(const std::vector<std::string>& fields) {
  return absl::StrCat(absl::StrJoin(fields, ","), "\n");
}

std::string RecordCsvHeader() {
  return "model,design,n,d,delta,lambda,nu,L,kappa,sigma_eps,replicate,seed,"
         "metric,empirical,theory\n";
}

std::string RecordCsvRows(const ExperimentConfig& config,
                          const MetricRecord& record) {
  std::string out;
  for (const auto& [metric, value] : record.empirical) {
    auto it = record.theory.find(metric);
    out += CsvLine({
        ModelName(config.model),
        DesignName(config.design),
        absl::StrCat(record.point.n),
        absl::StrCat(record.point.d),
        FormatDouble(record.point.delta()),
        FormatDouble(config.lambda),
        FormatDouble(record.point.nu),
        FormatDouble(config.L),
        FormatDouble(config.kappa),
        FormatDouble(config.sigma_eps),
        absl::StrCat(record.replicate),
        absl::StrCat(record.seed),
        metric,
        FormatDouble(value),
        it == record.theory.end() ? "" : FormatDouble(it->second),
    });
  }
  return out;
}

std::string SummaryCsvHeader() {
  return "model,design,n,d,delta,nu,metric,count,mean,stderr,theory,"
         "theory_stderr,z\n";
}

std::string SummaryCsvRows(const ExperimentConfig& config,
                           const std::vector<SummaryRow>& rows) {
  std::string out;
  for (const SummaryRow& r : rows) {
    out += CsvLine({
        ModelName(config.model),
        DesignName(config.design),
        absl::StrCat(r.point.n),
        absl::StrCat(r.point.d),
        FormatDouble(r.point.delta()),
        FormatDouble(r.point.nu),
        r.metric,
        absl::StrCat(r.count),
        FormatDouble(r.mean),
        FormatDouble(r.stderr_mean),
        r.theory ? FormatDouble(*r.theory) : "",
        FormatDouble(r.theory_stderr),
        r.z ? FormatDouble(*r.z) : "",
    });
  }
  return out;
}

}  // namespace propdp
