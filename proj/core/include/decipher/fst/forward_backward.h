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
// Log-semiring forward-backward over acyclic lattices.

#ifndef DECIPHER_FST_FORWARD_BACKWARD_H_
#define DECIPHER_FST_FORWARD_BACKWARD_H_

#include <optional>
#include <vector>

#include "decipher/fst/wfst.h"

namespace decipher::fst {

struct ForwardBackwardResult {
  // -log of the summed probability of all accepting paths.
  double total = kInfinity;
  // The same quantity computed from either end; they agree to 1e-6
  // relative or ForwardBackward throws.
  double forward_total = kInfinity;
  double backward_total = kInfinity;
  std::vector<double> alpha;  // -log forward mass per state
  std::vector<double> beta;   // -log backward mass per state

  // Probability mass of paths through arc `i` of state `s` divided by the
  // total mass.
  double Posterior(StateId s, size_t i) const {
    return posteriors[offsets[s] + i];
  }

  std::vector<size_t> offsets;  // first arc slot per state
  std::vector<double> posteriors;
};

// Throws AlgorithmError on a reachable cycle. Returns nullopt when the
// machine is empty or has no accepting path.
std::optional<ForwardBackwardResult> ForwardBackward(const Wfst &lattice);

}  // namespace decipher::fst

#endif  // DECIPHER_FST_FORWARD_BACKWARD_H_
