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
// Declarative description of staged EM training.

#ifndef DECIPHER_ENGINE_SCHEDULE_H_
#define DECIPHER_ENGINE_SCHEDULE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "decipher/lm/ngram_lm.h"

namespace decipher::engine {

// A language model named by token kind and order, written "char:3" or
// "word:2".
struct LmRef {
  lm::TokenKind kind = lm::TokenKind::kGrapheme;
  int order = 2;

  std::string ToString() const;
  static LmRef Parse(std::string_view text);
  friend bool operator==(const LmRef &, const LmRef &) = default;
};

struct Stage {
  LmRef lm;
  int iterations = 10;
  // Applied before the stage, smoothing first.
  std::optional<double> smooth_alpha;
  std::optional<int> prune_k;
  // Composition beam; none means exhaustive.
  std::optional<double> beam;
  // Applied after the stage.
  std::optional<double> smooth_after_alpha;

  friend bool operator==(const Stage &, const Stage &) = default;
};

struct TrainingSchedule {
  std::vector<Stage> stages;

  // Throws ConfigError unless every stage has iterations >= 1, alphas in
  // (0, 1], k >= 1 and positive beams.
  void Validate() const;

  // Character models 2 through 5 for 10 iterations each, pruning to the
  // top 10 phones after the bigram stage; then smoothing with 0.9, 10
  // iterations against the word trigram with beam 10, and a final
  // smoothing with 0.9.
  static TrainingSchedule Default();

  // Character models `from`..`to`, `iterations` each, pruning to `prune_k`
  // after the first stage when given, all with the same beam.
  static TrainingSchedule CharOnly(int from, int to, int iterations,
                                   std::optional<int> prune_k = 10,
                                   std::optional<double> beam = std::nullopt);

  // A JSON list of stage objects {lm, iterations, smooth_alpha?, prune_k?,
  // beam?, smooth_after_alpha?}.
  static TrainingSchedule FromJson(std::string_view text);
  static TrainingSchedule FromJsonFile(const std::string &path);
  std::string ToJson() const;

  // Every distinct LmRef in stage order.
  std::vector<LmRef> RequiredLms() const;

  friend bool operator==(const TrainingSchedule &,
                         const TrainingSchedule &) = default;
};

}  // namespace decipher::engine

#endif  // DECIPHER_ENGINE_SCHEDULE_H_
