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
// Baum-Welch training of the lexical model against fixed language models.

#ifndef DECIPHER_ENGINE_TRAINER_H_
#define DECIPHER_ENGINE_TRAINER_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decipher/engine/edit_fst.h"
#include "decipher/engine/lexical_model.h"
#include "decipher/engine/schedule.h"
#include "decipher/fst/wfst.h"

namespace decipher::engine {

using PhoneCorpus = std::vector<std::vector<Label>>;

struct EStepResult {
  // Expected number of uses of every lexical parameter, by ParamId.
  std::vector<double> counts;
  // Natural-log likelihood of the corpus under the current models, summed
  // over utterances with a nonempty lattice.
  double loglik = 0.0;
  size_t utterances = 0;
  std::vector<size_t> skipped;  // utterances whose lattice was empty
};

// Expected counts from the lattices x o edit o g, computed on `jobs`
// threads. Utterances are merged in corpus order, so the result does not
// depend on `jobs`.
EStepResult EStep(const LexicalModel &lex, const AlignmentModel &ali,
                  const PhoneCorpus &corpus, const fst::Wfst &g,
                  std::optional<double> beam = std::nullopt, int jobs = 1);

struct EmStepResult {
  LexicalModel model;
  double loglik = 0.0;  // of the models before the update
  size_t utterances = 0;
  std::vector<size_t> skipped;
};

EmStepResult EmStep(const LexicalModel &lex, const AlignmentModel &ali,
                    const PhoneCorpus &corpus, const fst::Wfst &g,
                    std::optional<double> beam = std::nullopt, int jobs = 1);

struct IterationRecord {
  std::string stage;  // LmRef::ToString() of the stage's model
  int stage_index = 0;
  int iteration = 0;  // 1-based within the stage
  double loglik = 0.0;
  size_t active_params = 0;
  size_t utterances = 0;
  size_t skipped = 0;
};

struct TrainOptions {
  int jobs = 1;
  // A stage aborts with TrainingError when more than this fraction of the
  // corpus has empty lattices.
  double max_skip_fraction = 0.5;
  std::function<void(const IterationRecord &)> on_iteration;
};

struct TrainResult {
  LexicalModel model;
  std::vector<IterationRecord> log;
};

// Runs the schedule. `lms` maps LmRef::ToString() to a grapheme acceptor;
// every model the schedule names must be present.
TrainResult Train(const TrainingSchedule &schedule, const PhoneCorpus &corpus,
                  const std::map<std::string, fst::Wfst> &lms,
                  LexicalModel init, const AlignmentModel &ali,
                  const TrainOptions &options = {});

}  // namespace decipher::engine

#endif  // DECIPHER_ENGINE_TRAINER_H_
