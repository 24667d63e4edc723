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

#ifndef DECIPHER_FST_SHORTEST_PATH_H_
#define DECIPHER_FST_SHORTEST_PATH_H_

#include <optional>
#include <vector>

#include "decipher/fst/wfst.h"

namespace decipher::fst {

struct PathArc {
  StateId state = kNoStateId;
  size_t arc_index = 0;
};

struct Path {
  std::vector<Label> ilabels;  // epsilons removed
  std::vector<Label> olabels;  // epsilons removed
  double weight = kInfinity;   // includes the final weight
  std::vector<PathArc> arcs;   // arcs taken, in order
  StateId final_state = kNoStateId;
};

// Viterbi best path in the tropical semiring. Among equal-weight
// alternatives the predecessor (and the final state) with the lowest state
// id wins. Returns nullopt when the machine has no accepting path.
std::optional<Path> ShortestPath(const Wfst &f);

}  // namespace decipher::fst

#endif  // DECIPHER_FST_SHORTEST_PATH_H_
