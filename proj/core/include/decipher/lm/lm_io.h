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
// On-disk language models: `<name>.fst` (text format), `<name>.syms` and a
// `<name>.json` sidecar naming the order, token kind and companion files.
// Word models also carry a `<name>.lex` grapheme lexicon and a reference
// to the grapheme symbol table it spells with.

#ifndef DECIPHER_LM_LM_IO_H_
#define DECIPHER_LM_LM_IO_H_

#include <optional>
#include <string>

#include "decipher/fst/wfst.h"
#include "decipher/lm/lexicon.h"
#include "decipher/lm/ngram_lm.h"

namespace decipher::lm {

struct LoadedLm {
  int order = 0;
  TokenKind kind = TokenKind::kGrapheme;
  fst::Wfst fst;                  // over the model's own alphabet
  std::optional<GraphemeLexicon> lexicon;  // word models only

  // The model as an acceptor over graphemes, ready to serve as G.
  fst::Wfst GraphemeAcceptor() const;
};

// Writes the model into `dir` and returns the sidecar path. Word models
// need `lexicon`; `grapheme_syms_file` is recorded relative to `dir`.
std::string SaveLm(const NGramLm &lm, const std::string &dir,
                   const std::string &name,
                   const GraphemeLexicon *lexicon = nullptr,
                   const std::string &grapheme_syms_file = "graphemes.syms");

LoadedLm LoadLm(const std::string &sidecar_path);

}  // namespace decipher::lm

#endif  // DECIPHER_LM_LM_IO_H_
