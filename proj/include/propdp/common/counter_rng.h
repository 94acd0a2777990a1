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

#ifndef PROPDP_COMMON_COUNTER_RNG_H_
#define PROPDP_COMMON_COUNTER_RNG_H_

#include <cstdint>
#include <initializer_list>

namespace propdp {

// Purpose tags separating the random streams drawn from one seed.
enum class StreamTag : uint64_t {
  kDesign = 1,
  kSignal = 2,
  kNoise = 3,
  kLabels = 4,
  kPerturbation = 5,
  kGradientNoise = 6,
  kStateEvolution = 7,
  kTest = 99,
};

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

// Order-sensitive hash of a list of words.
uint64_t HashWords(std::initializer_list<uint64_t> words);

// Counter-based generator: the value at position `i` of the stream keyed by
// (seed, tag, stream) is a pure function of those four numbers.
class CounterRng {
 public:
  CounterRng(uint64_t seed, StreamTag tag, uint64_t stream = 0);

  // Raw 64-bit word at counter position `index`.
  uint64_t Bits(uint64_t index) const;

  // Uniform double in the open interval (0, 1).
  double Uniform(uint64_t index) const;

  // Standard normal draw via Box-Muller on the uniforms at 2i and 2i+1.
  double Normal(uint64_t index) const;

  // Sequential access: consumes the next counter position.
  double NextUniform() { return Uniform(position_++); }
  double NextNormal() { return Normal(position_++); }

  uint64_t key() const { return key_; }

 private:
  uint64_t key_;
  uint64_t position_ = 0;
};

}  // namespace propdp

#endif  // PROPDP_COMMON_COUNTER_RNG_H_
