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
// The built-in synthetic decipherment task: English-like sentences from a
// small grammar, and pronunciation tables over a 30-phone inventory plus
// silence.

#ifndef DECIPHER_SYNTH_DEFAULT_TASK_H_
#define DECIPHER_SYNTH_DEFAULT_TASK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "decipher/synth/cipher.h"

namespace decipher::synth {

inline constexpr char kDefaultSilence[] = "sil";

// Lowercase sentences of 2 to 12 words over roughly 300 common English
// words, with Zipf-like word choice inside each word class.
std::vector<std::string> GenerateText(size_t num_lines, uint64_t seed);

// The 30 non-silence phone names.
const std::vector<std::string> &DefaultPhones();

// Each letter a-z maps to its own phone, chosen by a seeded permutation;
// four phones stay unused. Spaces map to "sil".
PronunciationTable BijectiveTable(uint64_t seed);

// The bijective table with six seeded letters given a second variant
// (probability 0.3): four move to an otherwise unused phone, one shares
// another letter's phone, and one becomes a two-phone sequence.
PronunciationTable AmbiguousTable(uint64_t seed);

}  // namespace decipher::synth

#endif  // DECIPHER_SYNTH_DEFAULT_TASK_H_
