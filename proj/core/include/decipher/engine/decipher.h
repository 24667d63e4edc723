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
// Best grapheme sequence for a phone sequence under the trained models.

#ifndef DECIPHER_ENGINE_DECIPHER_H_
#define DECIPHER_ENGINE_DECIPHER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "decipher/engine/edit_fst.h"
#include "decipher/engine/lexical_model.h"
#include "decipher/fst/wfst.h"

namespace decipher::engine {

struct DecipherResult {
  std::vector<Label> graphemes;  // includes <wb>
  double weight = fst::kInfinity;  // tropical weight of the best path
  std::optional<fst::Wfst> lattice;

  // True when no path survived composition and pruning.
  bool Empty() const { return weight == fst::kInfinity; }
};

// Shortest path through x o edit o g. With `emit_lattice` the (pruned)
// lattice is returned as well.
DecipherResult Decipher(const fst::Wfst &edit, const fst::Wfst &g,
                        std::span<const Label> phones,
                        std::optional<double> beam = std::nullopt,
                        bool emit_lattice = false);

DecipherResult Decipher(const LexicalModel &lex, const AlignmentModel &ali,
                        const fst::Wfst &g, std::span<const Label> phones,
                        std::optional<double> beam = std::nullopt,
                        bool emit_lattice = false);

// Decodes every utterance on `jobs` threads; results are in corpus order.
std::vector<DecipherResult> DecipherCorpus(
    const fst::Wfst &edit, const fst::Wfst &g,
    const std::vector<std::vector<Label>> &corpus,
    std::optional<double> beam = std::nullopt, int jobs = 1,
    bool emit_lattices = false);

// Space-separated phone tokens. ConfigError on unknown phones.
std::vector<Label> PhoneTokens(std::string_view line,
                               const fst::SymbolTable &phones);

// Graphemes joined into text with <wb> written as a space.
std::string GraphemesToText(std::span<const Label> graphemes,
                            const fst::SymbolTable &syms);

}  // namespace decipher::engine

#endif  // DECIPHER_ENGINE_DECIPHER_H_
