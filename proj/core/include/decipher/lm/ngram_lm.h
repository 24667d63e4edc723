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
// Backoff n-gram models over graphemes or words with Witten-Bell
// smoothing, and their compilation into acceptors.

#ifndef DECIPHER_LM_NGRAM_LM_H_
#define DECIPHER_LM_NGRAM_LM_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "decipher/fst/wfst.h"

namespace decipher::lm {

using fst::Label;
using fst::SymbolTablePtr;

enum class TokenKind { kGrapheme, kWord };

std::string_view TokenKindName(TokenKind kind);
TokenKind ParseTokenKind(std::string_view name);

inline constexpr std::string_view kWordBoundary = "<wb>";
inline constexpr std::string_view kUnknownWord = "<unk>";

// Sentence delimiters live outside the symbol table so that a grapheme LM
// shares its alphabet with the lexical model unchanged.
inline constexpr Label kBeginOfSentence = -2;
inline constexpr Label kEndOfSentence = -3;

using History = std::vector<Label>;

// Raw n-gram counts: for every history (of length 0..order-1) the number
// of times each event followed it. Events are alphabet labels or
// kEndOfSentence; histories may begin with kBeginOfSentence.
class NGramCounts {
 public:
  explicit NGramCounts(int order) : order_(order) {}

  void AddSentence(std::span<const Label> tokens);

  int Order() const { return order_; }
  const std::map<History, std::map<Label, uint64_t>> &Table() const {
    return table_;
  }
  uint64_t Count(const History &h, Label event) const;
  // c(h, event) / c(h, *), or 0 when h was never seen.
  double RawRatio(const History &h, Label event) const;

 private:
  int order_;
  std::map<History, std::map<Label, uint64_t>> table_;
};

class NGramLm {
 public:
  struct Context {
    std::map<Label, double> probs;  // explicitly stored P(event | history)
    double backoff = 1.0;           // mass scale for unstored events
  };

  // `contexts` must contain the empty history with a probability for every
  // event, and be closed under dropping the oldest history token.
  NGramLm(int order, TokenKind kind, SymbolTablePtr alphabet,
          std::map<History, Context> contexts);

  // Witten-Bell estimate interpolated down to a uniform distribution over
  // all events, stored in backoff form (backoff(h) = T(h) / (N(h) + T(h))).
  static NGramLm WittenBell(const NGramCounts &counts, TokenKind kind,
                            SymbolTablePtr alphabet);

  // Uniform unigram over all events.
  static NGramLm Uniform(TokenKind kind, SymbolTablePtr alphabet);

  int Order() const { return order_; }
  TokenKind Kind() const { return kind_; }
  const SymbolTablePtr &Alphabet() const { return alphabet_; }
  const std::map<History, Context> &Contexts() const { return contexts_; }

  // Alphabet labels (excluding epsilon) followed by kEndOfSentence.
  std::vector<Label> Events() const;

  // P(event | history) following the backoff recursion. `history` may be
  // longer than order-1; only its tail is used. An event outside the
  // alphabet (kNoLabel) receives the uniform floor reached through every
  // backoff.
  double Prob(Label event, std::span<const Label> history) const;

  // Natural-log probability of a sentence including its end marker.
  double SentenceLogProb(std::span<const Label> tokens) const;

  // Longest stored suffix of `history` (truncated to order-1 tokens).
  History StateFor(std::span<const Label> history) const;

  // Maps normalized text to model tokens: graphemes with <wb> for spaces,
  // or words with <unk> for out-of-vocabulary items. Unknown graphemes are
  // a ConfigError unless `allow_unknown`, in which case they map to
  // kNoLabel.
  std::vector<Label> Tokenize(std::string_view line,
                              bool allow_unknown = false) const;

 private:
  int order_;
  TokenKind kind_;
  SymbolTablePtr alphabet_;
  std::map<History, Context> contexts_;
};

// Grapheme alphabet: <eps>, <wb>, then every character of the normalized
// corpus in code-point order.
fst::SymbolTable GraphemeAlphabet(const std::vector<std::string> &corpus);

// Graphemes of a normalized line; spaces become <wb>. ConfigError when a
// character is missing from `alphabet`.
std::vector<Label> GraphemeTokens(std::string_view line,
                                  const fst::SymbolTable &alphabet,
                                  bool allow_unknown = false);

// Character n-gram model. Lines are normalized first; empty lines are
// skipped. With `alphabet` null the alphabet is derived from the corpus.
NGramLm TrainCharLm(const std::vector<std::string> &corpus, int order,
                    SymbolTablePtr alphabet = nullptr);

// Word n-gram model over the `vocab_limit` most frequent words (ties by
// lexicographic order); other words map to <unk>.
NGramLm TrainWordLm(const std::vector<std::string> &corpus, int order,
                    size_t vocab_limit);

// exp(-(1/N) sum log P) over all tokens and sentence ends. Empty lines
// are skipped.
double Perplexity(const NGramLm &lm, const std::vector<std::string> &text);

// Acceptor with one state per stored history. Token arcs carry
// -log P(token | history), epsilon arcs carry -log backoff(history), and
// -log P(</s> | history) is the final weight where stored.
fst::Wfst LmToFst(const NGramLm &lm);

}  // namespace decipher::lm

#endif  // DECIPHER_LM_NGRAM_LM_H_
