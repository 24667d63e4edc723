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
// Weighted composition. Epsilons are handled with a sequencing filter:
// between two label-matching moves, all moves of the left machine on an
// output epsilon come before all moves of the right machine on an input
// epsilon. Each pair of compatible paths therefore yields exactly one
// composed path.

#ifndef DECIPHER_FST_COMPOSE_H_
#define DECIPHER_FST_COMPOSE_H_

#include <optional>

#include "decipher/fst/wfst.h"

namespace decipher::fst {

// Requires a's output symbols to equal b's input symbols (ConfigError
// otherwise). Arc tags are carried over from whichever side has one; an
// arc whose two halves are both tagged is a ConfigError. The result is
// not trimmed.
Wfst Compose(const Wfst &a, const Wfst &b);

// x o la o g as a trimmed lattice. Without a beam (or with an infinite
// one) this is Trim(Compose(Compose(x, la), g)). With a finite beam only
// arcs lying on a path whose tropical weight is within `beam` of the best
// path are kept; the search is an A* expansion of the second composition
// guided by exact completion costs of x o la, which never discards a
// within-beam path when g carries no negative weights. Machines with
// negative weights in g fall back to full composition followed by Prune.
// beam <= 0 is a ConfigError.
Wfst Compose3(const Wfst &x, const Wfst &la, const Wfst &g,
              std::optional<double> beam = std::nullopt);

}  // namespace decipher::fst

#endif  // DECIPHER_FST_COMPOSE_H_
