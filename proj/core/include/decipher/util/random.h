// Copyright 2026 The decipher-fst Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Deterministic random numbers whose streams are identical on every
// platform: std::mt19937_64 is fully specified, and the conversions to
// doubles and bounded integers are done by hand rather than through the
// implementation-defined standard distributions.

#ifndef DECIPHER_UTIL_RANDOM_H_
#define DECIPHER_UTIL_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace decipher::util {

// SplitMix64 finalizer, used to derive independent seeds.
uint64_t MixSeed(uint64_t a, uint64_t b = 0);

class Random {
 public:
  explicit Random(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform in [0, n); n must be positive.
  uint64_t Below(uint64_t n);
  // Index drawn in proportion to `weights`; weights need not be normalized.
  size_t Categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace decipher::util

#endif  // DECIPHER_UTIL_RANDOM_H_
