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

#include "decipher/fst/ops.h"

#include <algorithm>
#include <cmath>

namespace decipher::fst {
namespace {

// Copies header information (symbols) but no states.
Wfst ShellOf(const Wfst &f) {
  return Wfst(f.InputSymbols(), f.OutputSymbols());
}

template <class ArcFn, class FinalFn>
Wfst MapMachine(const Wfst &f, ArcFn arc_fn, FinalFn final_fn) {
  Wfst out = ShellOf(f);
  out.ReserveStates(f.NumStates());
  for (size_t s = 0; s < f.NumStates(); ++s) out.AddState();
  if (!f.Empty()) out.SetStart(f.Start());
  for (size_t s = 0; s < f.NumStates(); ++s) {
    const auto sid = static_cast<StateId>(s);
    out.SetFinal(sid, final_fn(f.Final(sid)));
    out.ReserveArcs(sid, f.NumArcs(sid));
    for (const Arc &arc : f.Arcs(sid)) out.AddArc(sid, arc_fn(arc));
  }
  return out;
}

double PruneSlack(double best) {
  return 1e-9 * std::max(1.0, std::abs(best));
}

}  // namespace

Wfst Trim(const Wfst &f) {
  Wfst out = ShellOf(f);
  if (f.Empty()) return out;
  const size_t n = f.NumStates();

  std::vector<char> accessible(n, 0);
  std::vector<StateId> stack{f.Start()};
  accessible[f.Start()] = 1;
  std::vector<std::vector<StateId>> preds(n);
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (const Arc &arc : f.Arcs(s)) {
      preds[arc.nextstate].push_back(s);
      if (!accessible[arc.nextstate]) {
        accessible[arc.nextstate] = 1;
        stack.push_back(arc.nextstate);
      }
    }
  }

  std::vector<char> coaccessible(n, 0);
  for (size_t s = 0; s < n; ++s) {
    if (accessible[s] && f.IsFinal(static_cast<StateId>(s))) {
      coaccessible[s] = 1;
      stack.push_back(static_cast<StateId>(s));
    }
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId p : preds[s]) {
      if (!coaccessible[p]) {
        coaccessible[p] = 1;
        stack.push_back(p);
      }
    }
  }

  if (!coaccessible[f.Start()]) return out;

  std::vector<StateId> remap(n, kNoStateId);
  for (size_t s = 0; s < n; ++s) {
    if (accessible[s] && coaccessible[s]) remap[s] = out.AddState();
  }
  out.SetStart(remap[f.Start()]);
  for (size_t s = 0; s < n; ++s) {
    const StateId ns = remap[s];
    if (ns == kNoStateId) continue;
    const auto sid = static_cast<StateId>(s);
    out.SetFinal(ns, f.Final(sid));
    for (const Arc &arc : f.Arcs(sid)) {
      const StateId nt = remap[arc.nextstate];
      if (nt == kNoStateId) continue;
      Arc copy = arc;
      copy.nextstate = nt;
      out.AddArc(ns, copy);
    }
  }
  return out;
}

Wfst ArcSort(const Wfst &f, LabelSide side) {
  Wfst out = ShellOf(f);
  out.ReserveStates(f.NumStates());
  for (size_t s = 0; s < f.NumStates(); ++s) out.AddState();
  if (!f.Empty()) out.SetStart(f.Start());
  std::vector<Arc> arcs;
  for (size_t s = 0; s < f.NumStates(); ++s) {
    const auto sid = static_cast<StateId>(s);
    out.SetFinal(sid, f.Final(sid));
    arcs.assign(f.Arcs(sid).begin(), f.Arcs(sid).end());
    if (side == LabelSide::kInput) {
      std::stable_sort(arcs.begin(), arcs.end(),
                       [](const Arc &a, const Arc &b) {
                         return a.ilabel < b.ilabel;
                       });
    } else {
      std::stable_sort(arcs.begin(), arcs.end(),
                       [](const Arc &a, const Arc &b) {
                         return a.olabel < b.olabel;
                       });
    }
    out.ReserveArcs(sid, arcs.size());
    for (const Arc &arc : arcs) out.AddArc(sid, arc);
  }
  return out;
}

Wfst Project(const Wfst &f, LabelSide side) {
  Wfst out = MapMachine(
      f,
      [side](Arc arc) {
        if (side == LabelSide::kInput) {
          arc.olabel = arc.ilabel;
        } else {
          arc.ilabel = arc.olabel;
        }
        return arc;
      },
      [](double w) { return w; });
  const auto &syms =
      side == LabelSide::kInput ? f.InputSymbols() : f.OutputSymbols();
  out.SetInputSymbols(syms);
  out.SetOutputSymbols(syms);
  return out;
}

Wfst RemoveTags(const Wfst &f) {
  return MapMachine(
      f,
      [](Arc arc) {
        arc.tag = kNoParam;
        return arc;
      },
      [](double w) { return w; });
}

Wfst RemoveWeights(const Wfst &f) {
  return MapMachine(
      f,
      [](Arc arc) {
        arc.weight = 0.0;
        return arc;
      },
      [](double w) { return w == kInfinity ? kInfinity : 0.0; });
}

std::optional<std::vector<StateId>> TopologicalOrder(const Wfst &f) {
  std::vector<StateId> order;
  if (f.Empty()) return order;
  const size_t n = f.NumStates();
  // Iterative DFS with colors; post-order reversed is a topological order.
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> color(n, kWhite);
  std::vector<std::pair<StateId, size_t>> stack;
  stack.emplace_back(f.Start(), 0);
  color[f.Start()] = kGrey;
  while (!stack.empty()) {
    auto &[s, next_arc] = stack.back();
    const auto arcs = f.Arcs(s);
    if (next_arc < arcs.size()) {
      const StateId t = arcs[next_arc++].nextstate;
      if (color[t] == kGrey) return std::nullopt;
      if (color[t] == kWhite) {
        color[t] = kGrey;
        stack.emplace_back(t, 0);
      }
    } else {
      color[s] = kBlack;
      order.push_back(s);
      stack.pop_back();
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

Wfst Prune(const Wfst &f, double beam) {
  if (!(beam > 0.0)) throw ConfigError("Prune: beam must be positive");
  if (f.Empty()) return Trim(f);
  const auto alpha = ShortestDistance<TropicalSemiring>(f, false);
  const auto beta = ShortestDistance<TropicalSemiring>(f, true);
  const double best = beta[f.Start()];
  if (best == kInfinity) return Trim(f);
  if (beam == kInfinity) return Trim(f);
  const double limit = best + beam + PruneSlack(best);

  Wfst out = ShellOf(f);
  out.ReserveStates(f.NumStates());
  for (size_t s = 0; s < f.NumStates(); ++s) out.AddState();
  out.SetStart(f.Start());
  for (size_t s = 0; s < f.NumStates(); ++s) {
    const auto sid = static_cast<StateId>(s);
    if (alpha[s] == kInfinity) continue;
    if (alpha[s] + f.Final(sid) <= limit) out.SetFinal(sid, f.Final(sid));
    for (const Arc &arc : f.Arcs(sid)) {
      if (alpha[s] + arc.weight + beta[arc.nextstate] <= limit) {
        out.AddArc(sid, arc);
      }
    }
  }
  return Trim(out);
}

namespace internal {

std::vector<double> TropicalLabelCorrecting(const Wfst &f, bool reverse) {
  const size_t n = f.NumStates();
  std::vector<double> d(n, kInfinity);
  std::vector<char> queued(n, 0);
  std::deque<StateId> queue;
  if (!reverse) {
    d[f.Start()] = 0.0;
    queue.push_back(f.Start());
    queued[f.Start()] = 1;
    size_t relaxations = 0;
    while (!queue.empty()) {
      const StateId s = queue.front();
      queue.pop_front();
      queued[s] = 0;
      for (const Arc &arc : f.Arcs(s)) {
        const double nd = d[s] + arc.weight;
        if (nd < d[arc.nextstate]) {
          d[arc.nextstate] = nd;
          if (!queued[arc.nextstate]) {
            queued[arc.nextstate] = 1;
            queue.push_back(arc.nextstate);
          }
        }
      }
      if (++relaxations > n * n + 16) {
        throw AlgorithmError("ShortestDistance: negative cycle");
      }
    }
    return d;
  }
  std::vector<std::vector<std::pair<StateId, double>>> preds(n);
  for (size_t s = 0; s < n; ++s) {
    for (const Arc &arc : f.Arcs(static_cast<StateId>(s))) {
      preds[arc.nextstate].emplace_back(static_cast<StateId>(s), arc.weight);
    }
    d[s] = f.Final(static_cast<StateId>(s));
    if (d[s] != kInfinity) {
      queue.push_back(static_cast<StateId>(s));
      queued[s] = 1;
    }
  }
  size_t relaxations = 0;
  while (!queue.empty()) {
    const StateId t = queue.front();
    queue.pop_front();
    queued[t] = 0;
    for (auto [s, w] : preds[t]) {
      const double nd = w + d[t];
      if (nd < d[s]) {
        d[s] = nd;
        if (!queued[s]) {
          queued[s] = 1;
          queue.push_back(s);
        }
      }
    }
    if (++relaxations > n * n + 16) {
      throw AlgorithmError("ShortestDistance: negative cycle");
    }
  }
  return d;
}

}  // namespace internal
}  // namespace decipher::fst
