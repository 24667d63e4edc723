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
// Synthetic phone channels: text is spelled out through a pronunciation
// table, word boundaries optionally become silence, and phone-level noise
// is applied.

#ifndef DECIPHER_SYNTH_CIPHER_H_
#define DECIPHER_SYNTH_CIPHER_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "decipher/fst/symbol_table.h"

namespace decipher::synth {

struct Pronunciation {
  std::vector<std::string> phones;  // 0 to 2 phones
  double prob = 1.0;
};

// Keys are graphemes or grapheme pairs (matched longest first); the key
// <wb> names the silence phone.
class PronunciationTable {
 public:
  // Throws ConfigError when a key's probabilities do not sum to 1 within
  // 1e-6, a variant has more than 2 phones, or <wb> is missing or maps to
  // anything other than a single phone with probability 1.
  explicit PronunciationTable(
      std::map<std::string, std::vector<Pronunciation>> entries);

  const std::map<std::string, std::vector<Pronunciation>> &Entries() const {
    return entries_;
  }
  const std::string &SilencePhone() const { return silence_; }
  size_t MaxKeyLength() const { return max_key_chars_; }

  // All phones except silence, sorted.
  std::vector<std::string> NonSilencePhones() const;

  // <eps>, the non-silence phones sorted, then the silence phone.
  fst::SymbolTable PhoneSymbols() const;

  // `grapheme<TAB>phones<TAB>prob`; an empty phone field is the empty
  // sequence.
  void WriteTsv(std::ostream &os) const;
  void WriteTsvFile(const std::string &path) const;
  static PronunciationTable ReadTsv(std::istream &is,
                                    const std::string &source = "");
  static PronunciationTable ReadTsvFile(const std::string &path);

 private:
  std::map<std::string, std::vector<Pronunciation>> entries_;
  std::string silence_;
  size_t max_key_chars_ = 1;
};

struct ChannelNoise {
  double substitution = 0.0;
  double deletion = 0.0;
  double insertion = 0.0;
  // Optional replacement distribution per phone for substitutions;
  // otherwise replacements are uniform over the other non-silence phones.
  std::map<std::string, std::vector<std::pair<std::string, double>>> confusion;

  // Rates in [0, 1) with a sum below 1.
  void Validate() const;
};

struct CipherOptions {
  double silence_prob = 1.0;  // chance that a space becomes silence
  uint64_t seed = 0;
};

struct CipherCorpus {
  std::vector<std::vector<std::string>> phones;
  std::vector<std::string> references;  // normalized text
};

// Lines are normalized and empty lines dropped. Every line draws from its
// own generator seeded from (seed, line index), so results do not depend
// on how the corpus is split. Noise touches non-silence phones only: each
// is independently substituted, deleted, or kept and followed by a random
// inserted phone. Throws ConfigError on characters the table cannot spell.
CipherCorpus GenCipher(const std::vector<std::string> &text,
                       const PronunciationTable &table,
                       const ChannelNoise &noise,
                       const CipherOptions &options = {});

// Indices of the n utterances with the fewest phones, ties by original
// position, in that order. n larger than the corpus selects everything.
std::vector<size_t> SelectShortest(
    const std::vector<std::vector<std::string>> &phones, size_t n);

// The subset of `corpus` at `indices`, in that order.
CipherCorpus Subset(const CipherCorpus &corpus,
                    const std::vector<size_t> &indices);

}  // namespace decipher::synth

#endif  // DECIPHER_SYNTH_CIPHER_H_
