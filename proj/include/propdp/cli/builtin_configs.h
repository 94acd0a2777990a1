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

#ifndef PROPDP_CLI_BUILTIN_CONFIGS_H_
#define PROPDP_CLI_BUILTIN_CONFIGS_H_

#include <string>
#include <vector>

namespace propdp {

// A figure configuration embedded at build time from configs/<name>.json.
struct BuiltinConfig {
  std::string name;
  std::string json;
};

const std::vector<BuiltinConfig>& BuiltinConfigs();

}  // namespace propdp

#endif  // PROPDP_CLI_BUILTIN_CONFIGS_H_
