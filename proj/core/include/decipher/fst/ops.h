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
// Structural operations on Wfst values. All functions are pure: inputs are
// never modified and a fresh machine is returned.

#ifndef DECIPHER_FST_OPS_H_
#define DECIPHER_FST_OPS_H_

#include <deque>
#include <type_traits>
#include <optional>
#include <string>
#include <vector>

#include "decipher/errors.h"
#include "decipher/fst/semiring.h"
#include "decipher/fst/wfst.h"

namespace decipher::fst {

enum class LabelSide { kInput, kOutput };

// Removes states that are not on some start-to-final path. Surviving
// states keep their relative order, so an already-trim machine comes back
// unchanged. A machine without accepting paths becomes the empty machine.
Wfst Trim(const Wfst &f);

// Stable sort of each state's arcs by the chosen label.
Wfst ArcSort(const Wfst &f, LabelSide side);

// Copies the chosen label onto both sides, producing an acceptor.
Wfst Project(const Wfst &f, LabelSide side);

Wfst RemoveTags(const Wfst &f);

// Replaces every arc and final weight by One (0).
Wfst RemoveWeights(const Wfst &f);

// States reachable from the start in topological order, or nullopt when a
// reachable cycle exists.
std::optional<std::vector<StateId>> TopologicalOrder(const Wfst &f);

// Keeps exactly the arcs and final weights that lie on some accepting path
// whose tropical weight is within `beam` of the best one, then trims.
Wfst Prune(const Wfst &f, double beam);

// Semiring shortest distance from the start (forward) or to the final
// states including final weights (reverse). Acyclic machines use a
// topological sweep and accept any weights; cyclic machines are supported
// for the tropical semiring only (label-correcting, no negative cycles).
template <Semiring S>
std::vector<double> ShortestDistance(const Wfst &f, bool reverse = false);

// ---------------------------------------------------------------------------

namespace internal {

template <Semiring S>
std::vector<double> AcyclicDistance(const Wfst &f,
                                    const std::vector<StateId> &order,
                                    bool reverse) {
  std::vector<double> d(f.NumStates(), S::Zero());
  if (!reverse) {
    d[f.Start()] = S::One();
    for (StateId s : order) {
      if (d[s] == S::Zero()) continue;
      for (const Arc &arc : f.Arcs(s)) {
        d[arc.nextstate] =
            S::Plus(d[arc.nextstate], S::Times(d[s], arc.weight));
      }
    }
  } else {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const StateId s = *it;
      double acc = f.Final(s);
      for (const Arc &arc : f.Arcs(s)) {
        acc = S::Plus(acc, S::Times(arc.weight, d[arc.nextstate]));
      }
      d[s] = acc;
    }
  }
  return d;
}

std::vector<double> TropicalLabelCorrecting(const Wfst &f, bool reverse);

}  // namespace internal

template <Semiring S>
std::vector<double> ShortestDistance(const Wfst &f, bool reverse) {
  if (f.Empty()) return std::vector<double>(f.NumStates(), S::Zero());
  if (auto order = TopologicalOrder(f)) {
    return internal::AcyclicDistance<S>(f, *order, reverse);
  }
  if constexpr (std::is_same_v<S, TropicalSemiring>) {
    return internal::TropicalLabelCorrecting(f, reverse);
  } else {
    throw AlgorithmError(std::string("ShortestDistance: cyclic machine in ") +
                         std::string(S::Name()) + " semiring");
  }
}

}  // namespace decipher::fst

#endif  // DECIPHER_FST_OPS_H_
