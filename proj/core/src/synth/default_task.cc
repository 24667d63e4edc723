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

#include "decipher/synth/default_task.h"

#include <algorithm>
#include <numeric>

#include "decipher/lm/ngram_lm.h"
#include "decipher/util/random.h"
#include "decipher/util/text.h"

namespace decipher::synth {
namespace {

const std::vector<std::string> kDeterminers = {
    "the", "a", "this", "that", "my", "his", "her", "our", "their", "some",
    "every", "no", "one", "your"};
const std::vector<std::string> kPronouns = {"he", "she", "they", "we", "i",
                                            "you", "it"};
const std::vector<std::string> kNouns = {
    "man", "woman", "child", "house", "day", "time", "world", "life", "hand",
    "eye", "door", "night", "water", "friend", "mother", "father", "road",
    "city", "king", "horse", "dog", "river", "tree", "garden", "letter",
    "book", "room", "table", "window", "voice", "face", "heart", "head",
    "ship", "sea", "land", "boy", "girl", "wind", "fire", "money", "word",
    "story", "morning", "evening", "village", "church", "school", "field",
    "paper", "bread", "cat", "bird", "street", "stone", "light", "family",
    "doctor", "teacher", "soldier", "captain", "farmer", "market", "bridge",
    "mountain", "forest", "kitchen", "picture", "question", "answer",
    "journey", "winter", "summer", "box", "quilt", "jug", "fox", "zoo"};
const std::vector<std::string> kAdjectives = {
    "old", "little", "good", "great", "young", "long", "small", "large",
    "dark", "white", "black", "red", "green", "cold", "warm", "poor", "rich",
    "strong", "quiet", "happy", "strange", "beautiful", "empty", "heavy",
    "bright", "early", "open", "kind", "wild", "deep", "quick", "lazy",
    "brown", "gentle", "proud"};
const std::vector<std::string> kTransitive = {
    "saw", "found", "took", "gave", "made", "knew", "left", "held", "kept",
    "brought", "told", "heard", "loved", "wanted", "called", "opened",
    "closed", "watched", "followed", "carried", "visited", "remembered",
    "touched", "painted", "built", "bought", "sold", "wrote", "read",
    "helped", "asked", "washed", "fixed", "pushed", "pulled", "jumped over",
    "liked", "needed", "met", "lost"};
const std::vector<std::string> kIntransitive = {
    "slept", "waited", "smiled", "laughed", "arrived", "walked", "ran",
    "stood", "sat", "cried", "sang", "danced", "listened", "worked",
    "returned", "fell", "stayed", "spoke", "moved", "rested", "looked",
    "lived", "died", "swam"};
const std::vector<std::string> kPrepositions = {
    "in", "on", "at", "with", "from", "to", "for", "by", "near", "under",
    "over", "after", "before", "into", "behind", "across"};
const std::vector<std::string> kAdverbs = {
    "again", "never", "often", "always", "soon", "today", "then", "still",
    "quickly", "slowly", "here", "there", "now", "once", "together",
    "quietly", "yesterday", "early"};
const std::vector<std::string> kConjunctions = {"and", "but", "so", "because",
                                                "while", "when", "until"};

class SentenceGenerator {
 public:
  explicit SentenceGenerator(uint64_t seed) : rng_(seed) {}

  std::string Sentence() {
    while (true) {
      words_.clear();
      Clause();
      if (Chance(0.25)) {
        Pick(kConjunctions);
        Clause();
      }
      if (words_.size() >= 2 && words_.size() <= 12) {
        return util::Join(words_, " ");
      }
    }
  }

 private:
  bool Chance(double p) { return rng_.Uniform() < p; }

  // Zipf-like choice: the k-th word of a class has weight 1/(k+2).
  void Pick(const std::vector<std::string> &words) {
    weights_.resize(words.size());
    for (size_t k = 0; k < words.size(); ++k) weights_[k] = 1.0 / (k + 2.0);
    words_.push_back(words[rng_.Categorical(weights_)]);
  }

  void NounPhrase() {
    Pick(kDeterminers);
    if (Chance(0.35)) Pick(kAdjectives);
    Pick(kNouns);
  }

  void Clause() {
    if (Chance(0.4)) {
      Pick(kPronouns);
    } else {
      NounPhrase();
    }
    if (Chance(0.15)) Pick(kAdverbs);
    if (Chance(0.45)) {
      Pick(kIntransitive);
    } else {
      Pick(kTransitive);
      NounPhrase();
    }
    if (Chance(0.3)) {
      Pick(kPrepositions);
      NounPhrase();
    }
    if (Chance(0.15)) Pick(kAdverbs);
  }

  util::Random rng_;
  std::vector<std::string> words_;
  std::vector<double> weights_;
};

std::vector<std::string> PermutedPhones(util::Random &rng) {
  std::vector<std::string> phones = DefaultPhones();
  for (size_t i = phones.size(); i > 1; --i) {
    std::swap(phones[i - 1], phones[rng.Below(i)]);
  }
  return phones;
}

std::map<std::string, std::vector<Pronunciation>> BijectiveEntries(
    const std::vector<std::string> &phones) {
  std::map<std::string, std::vector<Pronunciation>> entries;
  for (int c = 0; c < 26; ++c) {
    entries[std::string(1, static_cast<char>('a' + c))] = {{{phones[c]}, 1.0}};
  }
  entries[std::string(lm::kWordBoundary)] = {{{kDefaultSilence}, 1.0}};
  return entries;
}

}  // namespace

std::vector<std::string> GenerateText(size_t num_lines, uint64_t seed) {
  SentenceGenerator gen(seed);
  std::vector<std::string> lines;
  lines.reserve(num_lines);
  for (size_t i = 0; i < num_lines; ++i) lines.push_back(gen.Sentence());
  return lines;
}

const std::vector<std::string> &DefaultPhones() {
  static const std::vector<std::string> kPhones = {
      "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH",
      "EH", "ER", "EY", "F",  "G",  "HH", "IH", "IY", "JH", "K",
      "L",  "M",  "N",  "NG", "OW", "OY", "P",  "R",  "S",  "SH"};
  return kPhones;
}

PronunciationTable BijectiveTable(uint64_t seed) {
  util::Random rng(util::MixSeed(seed, 101));
  return PronunciationTable(BijectiveEntries(PermutedPhones(rng)));
}

PronunciationTable AmbiguousTable(uint64_t seed) {
  util::Random rng(util::MixSeed(seed, 101));
  const std::vector<std::string> phones = PermutedPhones(rng);
  auto entries = BijectiveEntries(phones);
  std::vector<int> letters(26);
  std::iota(letters.begin(), letters.end(), 0);
  for (size_t i = letters.size(); i > 1; --i) {
    std::swap(letters[i - 1], letters[rng.Below(i)]);
  }
  auto key = [](int c) { return std::string(1, static_cast<char>('a' + c)); };
  for (int k = 0; k < 6; ++k) {
    const int c = letters[k];
    std::vector<std::string> second;
    if (k < 4) {
      second = {phones[26 + k]};
    } else if (k == 4) {
      second = {phones[letters[6]]};
    } else {
      second = {phones[c], phones[letters[7]]};
    }
    entries[key(c)] = {{{phones[c]}, 0.7}, {second, 0.3}};
  }
  return PronunciationTable(std::move(entries));
}

}  // namespace decipher::synth
