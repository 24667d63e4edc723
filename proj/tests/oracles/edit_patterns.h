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

#ifndef DECIPHER_TESTS_ORACLES_EDIT_PATTERNS_H_
#define DECIPHER_TESTS_ORACLES_EDIT_PATTERNS_H_

#include <vector>

#include "decipher/fst/compose.h"
#include "decipher/fst/ops.h"
#include "decipher/fst/wfst.h"

namespace decipher::oracle {

enum EditOp : fst::Label { kSub = 1, kIns = 2, kDel = 3 };

inline EditOp OpOf(const fst::Arc &arc) {
  if (arc.ilabel == fst::kEpsilon) return kIns;
  if (arc.olabel == fst::kEpsilon) return kDel;
  return kSub;
}

// The edit machine with every arc relabeled by its operation.
inline fst::Wfst OperationAcceptor(const fst::Wfst &edit) {
  fst::Wfst f;
  for (size_t s = 0; s < edit.NumStates(); ++s) f.AddState();
  for (size_t s = 0; s < edit.NumStates(); ++s) {
    const auto id = static_cast<fst::StateId>(s);
    f.SetFinal(id, edit.Final(id));
    for (const auto &arc : edit.Arcs(id)) {
      const fst::Label op = OpOf(arc);
      f.AddArc(id, {op, op, 0.0, arc.nextstate});
    }
  }
  f.SetStart(edit.Start());
  return f;
}

// Accepts operation strings containing `first` immediately followed by
// `second`.
inline fst::Wfst PatternAcceptor(EditOp first, EditOp second) {
  fst::Wfst f;
  for (int i = 0; i < 3; ++i) f.AddState();
  f.SetStart(0);
  f.SetFinal(2, 0.0);
  for (fst::Label op : {kSub, kIns, kDel}) {
    f.AddArc(0, {op, op, 0.0, 0});
    f.AddArc(2, {op, op, 0.0, 2});
  }
  f.AddArc(0, {first, first, 0.0, 1});
  f.AddArc(1, {second, second, 0.0, 2});
  return f;
}

// True when some operation string of `edit` contains the pattern.
inline bool HasPattern(const fst::Wfst &edit, EditOp first, EditOp second) {
  return !fst::Trim(fst::Compose(OperationAcceptor(edit),
                                 PatternAcceptor(first, second)))
              .Empty();
}

}  // namespace decipher::oracle

#endif  // DECIPHER_TESTS_ORACLES_EDIT_PATTERNS_H_
