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

#include "decipher/fst/shortest_path.h"

#include <algorithm>
#include <deque>

#include "decipher/errors.h"
#include "decipher/fst/ops.h"

namespace decipher::fst {
namespace {

struct Backpointer {
  StateId state = kNoStateId;
  size_t arc_index = 0;
};

// Relaxes s -> arc.nextstate; ties resolved towards the lower source id.
bool Relax(std::vector<double> &d, std::vector<Backpointer> &bp, StateId s,
           size_t arc_index, const Arc &arc) {
  const double nd = d[s] + arc.weight;
  const StateId t = arc.nextstate;
  if (nd < d[t] ||
      (nd == d[t] && bp[t].state != kNoStateId &&
       (s < bp[t].state || (s == bp[t].state && arc_index < bp[t].arc_index)))) {
    const bool improved = nd < d[t];
    d[t] = nd;
    bp[t] = {s, arc_index};
    return improved;
  }
  return false;
}

}  // namespace

std::optional<Path> ShortestPath(const Wfst &f) {
  if (f.Empty()) return std::nullopt;
  const size_t n = f.NumStates();
  std::vector<double> d(n, kInfinity);
  std::vector<Backpointer> bp(n);
  d[f.Start()] = 0.0;

  if (auto order = TopologicalOrder(f)) {
    for (StateId s : *order) {
      if (d[s] == kInfinity) continue;
      const auto arcs = f.Arcs(s);
      for (size_t i = 0; i < arcs.size(); ++i) Relax(d, bp, s, i, arcs[i]);
    }
  } else {
    std::deque<StateId> queue{f.Start()};
    std::vector<char> queued(n, 0);
    queued[f.Start()] = 1;
    size_t pops = 0;
    while (!queue.empty()) {
      const StateId s = queue.front();
      queue.pop_front();
      queued[s] = 0;
      const auto arcs = f.Arcs(s);
      for (size_t i = 0; i < arcs.size(); ++i) {
        if (Relax(d, bp, s, i, arcs[i]) && !queued[arcs[i].nextstate]) {
          queued[arcs[i].nextstate] = 1;
          queue.push_back(arcs[i].nextstate);
        }
      }
      if (++pops > n * n + 16) {
        throw AlgorithmError("ShortestPath: negative cycle");
      }
    }
  }

  StateId best_final = kNoStateId;
  double best = kInfinity;
  for (size_t s = 0; s < n; ++s) {
    const auto sid = static_cast<StateId>(s);
    if (d[s] == kInfinity || !f.IsFinal(sid)) continue;
    const double total = d[s] + f.Final(sid);
    if (total < best) {
      best = total;
      best_final = sid;
    }
  }
  if (best_final == kNoStateId) return std::nullopt;

  Path path;
  path.weight = best;
  path.final_state = best_final;
  for (StateId s = best_final; bp[s].state != kNoStateId; s = bp[s].state) {
    path.arcs.push_back({bp[s].state, bp[s].arc_index});
    if (path.arcs.size() > n) {
      throw AlgorithmError("ShortestPath: backpointer cycle");
    }
  }
  std::reverse(path.arcs.begin(), path.arcs.end());
  for (const PathArc &pa : path.arcs) {
    const Arc &arc = f.Arcs(pa.state)[pa.arc_index];
    if (arc.ilabel != kEpsilon) path.ilabels.push_back(arc.ilabel);
    if (arc.olabel != kEpsilon) path.olabels.push_back(arc.olabel);
  }
  return path;
}

}  // namespace decipher::fst
