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

#include "decipher/fst/compose.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

#include "decipher/errors.h"
#include "decipher/fst/ops.h"

namespace decipher::fst {
namespace {

// A composed state: (left state, right state, filter state). The filter
// state is 1 right after the right machine moved alone.
struct Triple {
  StateId a;
  StateId b;
  uint8_t filter;
};

uint64_t Pack(const Triple &t) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(t.a)) << 32) |
         (static_cast<uint64_t>(static_cast<uint32_t>(t.b)) << 1) | t.filter;
}

void CheckComposable(const Wfst &a, const Wfst &b) {
  if (!SameSymbols(a.OutputSymbols(), b.InputSymbols())) {
    throw ConfigError(
        "Compose: output symbols of the left machine differ from input "
        "symbols of the right machine");
  }
}

// Expands composed states on demand. `b` must be sorted on input labels;
// the constructor makes a sorted copy when it is not.
class Composer {
 public:
  Composer(const Wfst &a, const Wfst &b) : a_(a) {
    if (b.InputSorted()) {
      b_ = &b;
    } else {
      sorted_b_ = ArcSort(b, LabelSide::kInput);
      b_ = &sorted_b_;
    }
  }

  const Wfst &Left() const { return a_; }
  const Wfst &Right() const { return *b_; }

  double Final(const Triple &t) const {
    return TropicalSemiring::Times(a_.Final(t.a), b_->Final(t.b));
  }

  // Calls emit(arc, next) for every composed arc leaving `t`; the arc's
  // nextstate field is left unset.
  template <class Emit>
  void Expand(const Triple &t, Emit &&emit) const {
    const auto barcs = b_->Arcs(t.b);
    for (const Arc &aa : a_.Arcs(t.a)) {
      if (aa.olabel == kEpsilon) {
        if (t.filter == 0) {
          emit(Arc{aa.ilabel, kEpsilon, aa.weight, kNoStateId, aa.tag},
               Triple{aa.nextstate, t.b, 0});
        }
        continue;
      }
      auto lo = std::lower_bound(
          barcs.begin(), barcs.end(), aa.olabel,
          [](const Arc &arc, Label l) { return arc.ilabel < l; });
      for (auto it = lo; it != barcs.end() && it->ilabel == aa.olabel; ++it) {
        if (aa.tag != kNoParam && it->tag != kNoParam) {
          throw ConfigError("Compose: both operands tag the same arc");
        }
        emit(Arc{aa.ilabel, it->olabel, aa.weight + it->weight, kNoStateId,
                 aa.tag != kNoParam ? aa.tag : it->tag},
             Triple{aa.nextstate, it->nextstate, 0});
      }
    }
    for (const Arc &ba : barcs) {
      if (ba.ilabel != kEpsilon) break;
      emit(Arc{kEpsilon, ba.olabel, ba.weight, kNoStateId, ba.tag},
           Triple{t.a, ba.nextstate, 1});
    }
  }

 private:
  const Wfst &a_;
  const Wfst *b_ = nullptr;
  Wfst sorted_b_;
};

bool HasNegativeWeights(const Wfst &f) {
  for (size_t s = 0; s < f.NumStates(); ++s) {
    const auto sid = static_cast<StateId>(s);
    if (f.Final(sid) < 0.0) return true;
    for (const Arc &arc : f.Arcs(sid)) {
      if (arc.weight < 0.0) return true;
    }
  }
  return false;
}

// Beam-limited A* expansion of Compose(xla, g) followed by Prune.
Wfst PrunedCompose(const Wfst &xla, const Wfst &g, double beam) {
  Wfst out(xla.InputSymbols(), g.OutputSymbols());
  if (xla.Empty() || g.Empty()) return out;
  const Composer composer(xla, g);
  const std::vector<double> completion =
      ShortestDistance<TropicalSemiring>(xla, /*reverse=*/true);
  if (completion[xla.Start()] == kInfinity) return out;

  struct Node {
    Triple triple;
    double dist;
    double heuristic;
    bool expanded;
    std::vector<Arc> arcs;
    double final_weight;
  };
  std::vector<Node> nodes;
  std::unordered_map<uint64_t, StateId> ids;
  using Entry = std::pair<double, StateId>;  // (priority, node); -1 = goal
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  auto discover = [&](const Triple &t) -> StateId {
    auto [it, inserted] = ids.try_emplace(Pack(t), kNoStateId);
    if (inserted) {
      it->second = static_cast<StateId>(nodes.size());
      nodes.push_back(
          Node{t, kInfinity, completion[t.a], false, {}, kInfinity});
    }
    return it->second;
  };

  const StateId start = discover(Triple{xla.Start(), g.Start(), 0});
  nodes[start].dist = 0.0;
  queue.emplace(nodes[start].heuristic, start);

  double best = kInfinity;
  double limit = kInfinity;
  while (!queue.empty()) {
    const auto [priority, id] = queue.top();
    if (priority > limit) break;
    queue.pop();
    if (id == kNoStateId) {
      if (best == kInfinity) {
        best = priority;
        limit = best + beam + 1e-9 * std::max(1.0, std::abs(best));
      }
      continue;
    }
    if (nodes[id].expanded) continue;
    nodes[id].expanded = true;
    const Triple t = nodes[id].triple;
    const double dist = nodes[id].dist;
    const double fw = composer.Final(t);
    nodes[id].final_weight = fw;
    if (fw != kInfinity) queue.emplace(dist + fw, kNoStateId);
    composer.Expand(t, [&](Arc arc, const Triple &next) {
      if (completion[next.a] == kInfinity) return;
      const StateId nid = discover(next);
      arc.nextstate = nid;
      nodes[id].arcs.push_back(arc);
      Node &n = nodes[nid];
      const double nd = dist + arc.weight;
      if (!n.expanded && nd < n.dist) {
        n.dist = nd;
        queue.emplace(nd + n.heuristic, nid);
      }
    });
  }

  out.ReserveStates(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) out.AddState();
  out.SetStart(start);
  for (size_t i = 0; i < nodes.size(); ++i) {
    Node &n = nodes[i];
    if (!n.expanded) continue;
    const auto sid = static_cast<StateId>(i);
    out.SetFinal(sid, n.final_weight);
    out.ReserveArcs(sid, n.arcs.size());
    for (const Arc &arc : n.arcs) out.AddArc(sid, arc);
    std::vector<Arc>().swap(n.arcs);
  }
  return Prune(out, beam);
}

}  // namespace

Wfst Compose(const Wfst &a, const Wfst &b) {
  CheckComposable(a, b);
  Wfst out(a.InputSymbols(), b.OutputSymbols());
  if (a.Empty() || b.Empty()) return out;
  const Composer composer(a, b);

  std::unordered_map<uint64_t, StateId> ids;
  std::vector<Triple> triples;
  auto lookup = [&](const Triple &t) -> StateId {
    auto [it, inserted] = ids.try_emplace(Pack(t), kNoStateId);
    if (inserted) {
      it->second = out.AddState();
      triples.push_back(t);
    }
    return it->second;
  };

  out.SetStart(lookup(Triple{a.Start(), b.Start(), 0}));
  for (size_t i = 0; i < triples.size(); ++i) {
    const Triple t = triples[i];
    const auto sid = static_cast<StateId>(i);
    out.SetFinal(sid, composer.Final(t));
    composer.Expand(t, [&](Arc arc, const Triple &next) {
      arc.nextstate = lookup(next);
      out.AddArc(sid, arc);
    });
  }
  return out;
}

Wfst Compose3(const Wfst &x, const Wfst &la, const Wfst &g,
              std::optional<double> beam) {
  if (beam && !(*beam > 0.0)) {
    throw ConfigError("Compose3: beam must be positive");
  }
  CheckComposable(x, la);
  CheckComposable(la, g);
  const Wfst xla = Trim(Compose(x, la));
  if (!beam || *beam == kInfinity) return Trim(Compose(xla, g));
  if (HasNegativeWeights(g)) return Prune(Compose(xla, g), *beam);
  return PrunedCompose(xla, g, *beam);
}

}  // namespace decipher::fst
