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
// Grapheme spellings of a word vocabulary and the transducer that reads
// spelled-out word sequences.

#ifndef DECIPHER_LM_LEXICON_H_
#define DECIPHER_LM_LEXICON_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "decipher/fst/wfst.h"
#include "decipher/lm/ngram_lm.h"

namespace decipher::lm {

struct LexiconEntry {
  std::string word;
  std::vector<Label> spelling;  // grapheme labels, never <wb>
};

class GraphemeLexicon {
 public:
  // Throws ConfigError on duplicate or unknown words, empty spellings, or
  // graphemes missing from `graphemes`.
  GraphemeLexicon(SymbolTablePtr graphemes, SymbolTablePtr words,
                  std::vector<LexiconEntry> entries);

  // Spells every vocabulary word of a word model character by character.
  // <unk> and words containing graphemes outside `graphemes` are left out.
  static GraphemeLexicon FromWordLm(const NGramLm &word_lm,
                                    SymbolTablePtr graphemes);

  const SymbolTablePtr &Graphemes() const { return graphemes_; }
  const SymbolTablePtr &Words() const { return words_; }
  const std::vector<LexiconEntry> &Entries() const { return entries_; }
  Label Boundary() const { return boundary_; }

  // `word<TAB>g1 g2 ...` lines.
  void Write(std::ostream &os) const;
  void WriteFile(const std::string &path) const;
  static GraphemeLexicon ReadFile(const std::string &path,
                                  SymbolTablePtr graphemes,
                                  SymbolTablePtr words);

 private:
  SymbolTablePtr graphemes_;
  SymbolTablePtr words_;
  std::vector<LexiconEntry> entries_;
  Label boundary_;
};

// Unweighted transducer from graphemes to words. Each word's spelling is a
// chain from the start state that emits the word on its first arc; the
// chain end is final and returns to the start on <wb>, so word sequences
// separated by single boundaries are read.
fst::Wfst BuildLexiconFst(const GraphemeLexicon &lex);

// The word model expressed over graphemes: the input projection of
// lexicon o word_lm_fst, trimmed and input-sorted.
fst::Wfst WordGraphemeAcceptor(const GraphemeLexicon &lex,
                               const fst::Wfst &word_lm_fst);

}  // namespace decipher::lm

#endif  // DECIPHER_LM_LEXICON_H_
