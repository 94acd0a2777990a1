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

#ifndef PROPDP_CLI_CSV_WRITER_H_
#define PROPDP_CLI_CSV_WRITER_H_

#include <string>
#include <vector>

#include "propdp/experiment/config.h"
#include "propdp/experiment/harness.h"

namespace propdp {

// model,design,n,d,delta,lambda,nu,L,kappa,sigma_eps,replicate,seed,metric,
// empirical,theory
std::string RecordCsvHeader();

// One line per empirical metric in key order; theory is empty when absent.
// Failed records produce no lines.
std::string RecordCsvRows(const ExperimentConfig& config,
                          const MetricRecord& record);

// model,design,n,d,delta,nu,metric,count,mean,stderr,theory,theory_stderr,z
std::string SummaryCsvHeader();
std::string SummaryCsvRows(const ExperimentConfig& config,
                           const std::vector<SummaryRow>& rows);

// Joins already formatted fields with commas and a trailing LF.
std::string CsvLine(const std::vector<std::string>& fields);

}  // namespace propdp

#endif  // PROPDP_CLI_CSV_WRITER_H_
