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

#include "decipher/fst/forward_backward.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "decipher/errors.h"
#include "decipher/fst/ops.h"

namespace decipher::fst {

std::optional<ForwardBackwardResult> ForwardBackward(const Wfst &lattice) {
  if (lattice.Empty()) return std::nullopt;
  auto order = TopologicalOrder(lattice);
  if (!order) throw AlgorithmError("ForwardBackward: lattice is cyclic");

  ForwardBackwardResult r;
  r.alpha = internal::AcyclicDistance<LogSemiring>(lattice, *order, false);
  r.beta = internal::AcyclicDistance<LogSemiring>(lattice, *order, true);

  double fwd = kInfinity;
  for (StateId s : *order) {
    fwd = LogSemiring::Plus(fwd,
                            LogSemiring::Times(r.alpha[s], lattice.Final(s)));
  }
  r.forward_total = fwd;
  r.backward_total = r.beta[lattice.Start()];
  r.total = r.backward_total;
  if (r.total == kInfinity) return std::nullopt;
  if (std::abs(r.forward_total - r.backward_total) >
      1e-6 * std::max(1.0, std::abs(r.total))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "ForwardBackward: forward total " << r.forward_total
        << " disagrees with backward total " << r.backward_total;
    throw AlgorithmError(msg.str());
  }

  const size_t n = lattice.NumStates();
  r.offsets.resize(n + 1);
  for (size_t s = 0; s < n; ++s) {
    r.offsets[s + 1] = r.offsets[s] + lattice.NumArcs(static_cast<StateId>(s));
  }
  r.posteriors.assign(r.offsets[n], 0.0);
  for (StateId s : *order) {
    if (r.alpha[s] == kInfinity) continue;
    const auto arcs = lattice.Arcs(s);
    for (size_t i = 0; i < arcs.size(); ++i) {
      const double b = r.beta[arcs[i].nextstate];
      if (b == kInfinity) continue;
      r.posteriors[r.offsets[s] + i] = std::min(
          1.0, std::exp(-(r.alpha[s] + arcs[i].weight + b - r.total)));
    }
  }
  return r;
}

}  // namespace decipher::fst
