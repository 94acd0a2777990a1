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

#ifndef PROPDP_COMMON_PARALLEL_H_
#define PROPDP_COMMON_PARALLEL_H_

#include <functional>

namespace propdp {

// Calls fn(i) for every i in [0, count) on up to `jobs` threads. Runs inline
// when one worker suffices.
void ParallelFor(int count, int jobs, const std::function<void(int)>& fn);

// std::thread::hardware_concurrency(), at least 1.
int DefaultJobs();

}  // namespace propdp

#endif  // PROPDP_COMMON_PARALLEL_H_
