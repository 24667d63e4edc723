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

#include "decipher/lm/lexicon.h"

#include <fstream>
#include <set>

#include "decipher/errors.h"
#include "decipher/fst/compose.h"
#include "decipher/fst/ops.h"
#include "decipher/util/text.h"

namespace decipher::lm {

GraphemeLexicon::GraphemeLexicon(SymbolTablePtr graphemes,
                                 SymbolTablePtr words,
                                 std::vector<LexiconEntry> entries)
    : graphemes_(std::move(graphemes)),
      words_(std::move(words)),
      entries_(std::move(entries)) {
  if (!graphemes_ || !words_) throw ConfigError("lexicon: null symbol table");
  boundary_ = graphemes_->Find(kWordBoundary);
  if (boundary_ == fst::kNoLabel) {
    throw ConfigError("lexicon: grapheme table lacks " +
                      std::string(kWordBoundary));
  }
  if (entries_.empty()) throw ConfigError("lexicon: empty vocabulary");
  std::set<std::string> seen;
  for (const auto &e : entries_) {
    if (!seen.insert(e.word).second) {
      throw ConfigError("lexicon: duplicate word '" + e.word + "'");
    }
    if (words_->Find(e.word) == fst::kNoLabel) {
      throw ConfigError("lexicon: word '" + e.word + "' not in word table");
    }
    if (e.spelling.empty()) {
      throw ConfigError("lexicon: empty spelling for '" + e.word + "'");
    }
    for (Label g : e.spelling) {
      if (g <= fst::kEpsilon || g == boundary_ || !graphemes_->Contains(g)) {
        throw ConfigError("lexicon: bad grapheme in spelling of '" + e.word +
                          "'");
      }
    }
  }
}

GraphemeLexicon GraphemeLexicon::FromWordLm(const NGramLm &word_lm,
                                            SymbolTablePtr graphemes) {
  if (word_lm.Kind() != TokenKind::kWord) {
    throw ConfigError("lexicon: language model is not word-level");
  }
  std::vector<LexiconEntry> entries;
  const auto &words = word_lm.Alphabet()->Symbols();
  for (size_t i = 1; i < words.size(); ++i) {
    if (words[i] == kUnknownWord) continue;
    LexiconEntry e{words[i], {}};
    bool ok = true;
    for (const auto &c : util::SplitUtf8(words[i])) {
      const Label g = graphemes->Find(c);
      if (g == fst::kNoLabel || c == kWordBoundary) {
        ok = false;
        break;
      }
      e.spelling.push_back(g);
    }
    if (ok) entries.push_back(std::move(e));
  }
  return GraphemeLexicon(std::move(graphemes), word_lm.Alphabet(),
                         std::move(entries));
}

void GraphemeLexicon::Write(std::ostream &os) const {
  for (const auto &e : entries_) {
    os << e.word << '\t';
    for (size_t i = 0; i < e.spelling.size(); ++i) {
      if (i) os << ' ';
      os << graphemes_->Symbol(e.spelling[i]);
    }
    os << '\n';
  }
}

void GraphemeLexicon::WriteFile(const std::string &path) const {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path);
  Write(os);
}

GraphemeLexicon GraphemeLexicon::ReadFile(const std::string &path,
                                          SymbolTablePtr graphemes,
                                          SymbolTablePtr words) {
  std::vector<LexiconEntry> entries;
  size_t lineno = 0;
  for (const auto &line : util::ReadLines(path)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": expected word<TAB>spelling");
    }
    LexiconEntry e{line.substr(0, tab), {}};
    for (const auto &g : util::SplitWhitespace(line.substr(tab + 1))) {
      const Label l = graphemes->Find(g);
      if (l == fst::kNoLabel) {
        throw FormatError(path + ":" + std::to_string(lineno) +
                          ": unknown grapheme '" + g + "'");
      }
      e.spelling.push_back(l);
    }
    entries.push_back(std::move(e));
  }
  return GraphemeLexicon(std::move(graphemes), std::move(words),
                         std::move(entries));
}

fst::Wfst BuildLexiconFst(const GraphemeLexicon &lex) {
  fst::Wfst f(lex.Graphemes(), lex.Words());
  const fst::StateId start = f.AddState();
  f.SetStart(start);
  f.SetFinal(start, 0.0);
  for (const auto &e : lex.Entries()) {
    const Label word = lex.Words()->Find(e.word);
    fst::StateId s = start;
    for (size_t i = 0; i < e.spelling.size(); ++i) {
      const fst::StateId next = f.AddState();
      f.AddArc(s, {e.spelling[i], i == 0 ? word : fst::kEpsilon, 0.0, next});
      s = next;
    }
    f.SetFinal(s, 0.0);
    f.AddArc(s, {lex.Boundary(), fst::kEpsilon, 0.0, start});
  }
  return f;
}

fst::Wfst WordGraphemeAcceptor(const GraphemeLexicon &lex,
                               const fst::Wfst &word_lm_fst) {
  const fst::Wfst composed =
      fst::Trim(fst::Compose(BuildLexiconFst(lex), word_lm_fst));
  fst::Wfst g = fst::Project(composed, fst::LabelSide::kInput);
  return fst::ArcSort(g, fst::LabelSide::kInput);
}

}  // namespace decipher::lm
