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

#include "propdp/common/counter_rng.h"

#include <cmath>
#include <numbers>

namespace propdp {

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t HashWords(std::initializer_list<uint64_t> words) {
  uint64_t h = 0x243f6a8885a308d3ULL;
  for (uint64_t w : words) {
    h = Mix64(h ^ Mix64(w));
  }
  return h;
}

CounterRng::CounterRng(uint64_t seed, StreamTag tag, uint64_t stream)
    : key_(HashWords({seed, static_cast<uint64_t>(tag), stream})) {}

uint64_t CounterRng::Bits(uint64_t index) const {
  return Mix64(key_ ^ Mix64(index));
}

double CounterRng::Uniform(uint64_t index) const {
  // 53 random bits, shifted by half an ulp so 0 and 1 are never returned.
  return (static_cast<double>(Bits(index) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::Normal(uint64_t index) const {
  const double u1 = Uniform(2 * index);
  const double u2 = Uniform(2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace propdp
