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
// The lexical and alignment models precomposed into one three-state edit
// transducer from phones to graphemes.

#ifndef DECIPHER_ENGINE_EDIT_FST_H_
#define DECIPHER_ENGINE_EDIT_FST_H_

#include "decipher/engine/lexical_model.h"
#include "decipher/fst/wfst.h"

namespace decipher::engine {

// Fixed operation probabilities. Validate() requires nonnegative values
// summing to 1 within 1e-9 and a positive substitution probability.
struct AlignmentModel {
  double substitute = 0.90;
  double insert = 0.05;
  double remove = 0.05;

  void Validate() const;
};

enum EditState : fst::StateId {
  kBase = 0,
  kAfterInsertion = 1,
  kAfterDeletion = 2,
};

// Substitutions x:y lead to kBase from every state. From kBase only,
// insertions <eps>:y lead to kAfterInsertion and deletions x:<eps> lead to
// kAfterDeletion, so two insertions or two deletions never follow each
// other. Weights are -log(P(x|y) * P(op)); entries that are inactive or
// have zero probability get no arc; every arc is tagged with its lexical
// parameter. All states are final with weight 0 and arcs are input-sorted.
fst::Wfst BuildEditFst(const LexicalModel &lex, const AlignmentModel &ali);

}  // namespace decipher::engine

#endif  // DECIPHER_ENGINE_EDIT_FST_H_
