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

#include "decipher/engine/edit_fst.h"

#include <cmath>

#include "decipher/errors.h"

namespace decipher::engine {

void AlignmentModel::Validate() const {
  if (!(substitute > 0.0) || !(insert >= 0.0) || !(remove >= 0.0) ||
      std::fabs(substitute + insert + remove - 1.0) > 1e-9) {
    throw ConfigError(
        "alignment model: operation probabilities must be nonnegative, "
        "sum to 1 and allow substitution");
  }
}

fst::Wfst BuildEditFst(const LexicalModel &lex, const AlignmentModel &ali) {
  ali.Validate();
  fst::Wfst f(lex.Phones(), lex.Graphemes());
  for (int i = 0; i < 3; ++i) f.SetFinal(f.AddState(), 0.0);
  f.SetStart(kBase);
  const auto rows = static_cast<Label>(lex.NumRows());
  const auto cols = static_cast<Label>(lex.NumCols());
  auto usable = [&](Label y, Label x) {
    return lex.State(y, x) == EntryState::kActive && lex.Prob(y, x) > 0.0;
  };
  auto weight = [&](Label y, Label x, double op) {
    return -std::log(lex.Prob(y, x)) - std::log(op);
  };

  // Epsilon-input arcs first keeps every state input-sorted.
  if (ali.insert > 0.0) {
    for (Label y = 1; y < rows; ++y) {
      if (!usable(y, fst::kEpsilon)) continue;
      f.AddArc(kBase, {fst::kEpsilon, y, weight(y, fst::kEpsilon, ali.insert),
                       kAfterInsertion, lex.Param(y, fst::kEpsilon)});
    }
  }
  for (fst::StateId s : {kBase, kAfterInsertion, kAfterDeletion}) {
    for (Label x = 1; x < cols; ++x) {
      if (s == kBase && ali.remove > 0.0 && usable(fst::kEpsilon, x)) {
        f.AddArc(s, {x, fst::kEpsilon, weight(fst::kEpsilon, x, ali.remove),
                     kAfterDeletion, lex.Param(fst::kEpsilon, x)});
      }
      for (Label y = 1; y < rows; ++y) {
        if (!usable(y, x)) continue;
        f.AddArc(s, {x, y, weight(y, x, ali.substitute), kBase,
                     lex.Param(y, x)});
      }
    }
  }
  return f;
}

}  // namespace decipher::engine
