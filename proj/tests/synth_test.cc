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

#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "decipher/errors.h"
#include "decipher/lm/ngram_lm.h"
#include "decipher/synth/cipher.h"
#include "decipher/synth/default_task.h"
#include "decipher/util/random.h"
#include "decipher/util/text.h"

namespace decipher::synth {
namespace {

using Phones = std::vector<std::string>;

PronunciationTable IdentityTable() {
  std::map<std::string, std::vector<Pronunciation>> e;
  e["a"] = {{{"A"}, 1.0}};
  e["b"] = {{{"B"}, 1.0}};
  e["c"] = {{{"C"}, 1.0}};
  e[std::string(lm::kWordBoundary)] = {{{"sil"}, 1.0}};
  return PronunciationTable(std::move(e));
}

TEST(PronunciationTableTest, Validation) {
  std::map<std::string, std::vector<Pronunciation>> e;
  e["a"] = {{{"A"}, 0.6}, {{"B"}, 0.3}};
  e[std::string(lm::kWordBoundary)] = {{{"sil"}, 1.0}};
  EXPECT_THROW(PronunciationTable{e}, ConfigError);
  e["a"] = {{{"A", "B", "C"}, 1.0}};
  EXPECT_THROW(PronunciationTable{e}, ConfigError);
  e["a"] = {{{"sil"}, 1.0}};
  EXPECT_THROW(PronunciationTable{e}, ConfigError);
  e["a"] = {{{"A"}, 1.0}};
  e.erase(std::string(lm::kWordBoundary));
  EXPECT_THROW(PronunciationTable{e}, ConfigError);
}

TEST(PronunciationTableTest, PhoneSymbolsPutSilenceLast) {
  const auto table = IdentityTable();
  const auto syms = table.PhoneSymbols();
  EXPECT_EQ(syms.Find("A"), 1);
  EXPECT_EQ(syms.Find("C"), 3);
  EXPECT_EQ(syms.Find("sil"), 4);
  EXPECT_EQ(table.NonSilencePhones(), (Phones{"A", "B", "C"}));
}

TEST(PronunciationTableTest, TsvRoundTrip) {
  const auto table = AmbiguousTable(3);
  std::stringstream ss;
  table.WriteTsv(ss);
  const auto back = PronunciationTable::ReadTsv(ss);
  ASSERT_EQ(back.Entries().size(), table.Entries().size());
  for (const auto &[key, variants] : table.Entries()) {
    const auto &other = back.Entries().at(key);
    ASSERT_EQ(other.size(), variants.size());
    for (size_t i = 0; i < variants.size(); ++i) {
      EXPECT_EQ(other[i].phones, variants[i].phones);
      EXPECT_EQ(other[i].prob, variants[i].prob);
    }
  }
  std::stringstream bad("a\tA\n");
  EXPECT_THROW(PronunciationTable::ReadTsv(bad), FormatError);
  std::stringstream bad_prob("a\tA\tx\n<wb>\tsil\t1\n");
  EXPECT_THROW(PronunciationTable::ReadTsv(bad_prob), FormatError);
}

TEST(GenCipherTest, IdentityExample) {
  const auto c = GenCipher({"ab c"}, IdentityTable(), {});
  ASSERT_EQ(c.phones.size(), 1u);
  EXPECT_EQ(c.phones[0], (Phones{"A", "B", "sil", "C"}));
  EXPECT_EQ(c.references[0], "ab c");
}

TEST(GenCipherTest, NormalizesAndSkipsEmptyLines) {
  const auto c = GenCipher({"  AB   C ", "", "   "}, IdentityTable(), {});
  ASSERT_EQ(c.phones.size(), 1u);
  EXPECT_EQ(c.references[0], "ab c");
  EXPECT_THROW(GenCipher({"abd"}, IdentityTable(), {}), ConfigError);
}

TEST(GenCipherTest, LongestKeyWins) {
  auto entries = IdentityTable().Entries();
  entries["ab"] = {{{"X"}, 1.0}};
  const PronunciationTable table(entries);
  const auto c = GenCipher({"abab cab"}, table, {});
  EXPECT_EQ(c.phones[0], (Phones{"X", "X", "sil", "C", "X"}));
}

TEST(GenCipherTest, SilenceProbabilityZeroDropsSilence) {
  const auto text = GenerateText(50, 1);
  CipherOptions opts;
  opts.silence_prob = 0.0;
  const auto c = GenCipher(text, BijectiveTable(1), {}, opts);
  for (const auto &u : c.phones) {
    EXPECT_EQ(std::count(u.begin(), u.end(), "sil"), 0);
  }
  opts.silence_prob = 1.5;
  EXPECT_THROW(GenCipher(text, BijectiveTable(1), {}, opts), ConfigError);
}

TEST(GenCipherTest, SilenceRateMatchesProbability) {
  const auto text = GenerateText(400, 2);
  CipherOptions opts;
  opts.silence_prob = 0.4;
  const auto c = GenCipher(text, BijectiveTable(2), {}, opts);
  size_t spaces = 0, sil = 0;
  for (size_t i = 0; i < c.phones.size(); ++i) {
    spaces += std::count(c.references[i].begin(), c.references[i].end(), ' ');
    sil += std::count(c.phones[i].begin(), c.phones[i].end(), "sil");
  }
  const double p = 0.4, n = static_cast<double>(spaces);
  EXPECT_NEAR(sil / n, p, 3.0 * std::sqrt(p * (1 - p) / n));
}

TEST(GenCipherTest, DeletionRateWithinThreeSigma) {
  const auto text = GenerateText(400, 3);
  const auto table = BijectiveTable(3);
  ChannelNoise noise;
  noise.deletion = 0.2;
  const auto clean = GenCipher(text, table, {});
  const auto noisy = GenCipher(text, table, noise, {.seed = 9});
  size_t before = 0, after = 0;
  for (size_t i = 0; i < clean.phones.size(); ++i) {
    for (const auto &p : clean.phones[i]) before += p != "sil";
    for (const auto &p : noisy.phones[i]) after += p != "sil";
    // Deletion never touches silence.
    EXPECT_EQ(std::count(clean.phones[i].begin(), clean.phones[i].end(), "sil"),
              std::count(noisy.phones[i].begin(), noisy.phones[i].end(), "sil"));
  }
  const double n = static_cast<double>(before);
  const double rate = (before - after) / n;
  EXPECT_NEAR(rate, 0.2, 3.0 * std::sqrt(0.2 * 0.8 / n));
}

TEST(GenCipherTest, SubstitutionAndInsertionRates) {
  const auto text = GenerateText(300, 4);
  const auto table = BijectiveTable(4);
  ChannelNoise noise;
  noise.substitution = 0.1;
  noise.insertion = 0.15;
  const auto clean = GenCipher(text, table, {});
  const auto noisy = GenCipher(text, table, noise, {.seed = 2});
  size_t before = 0, after = 0;
  for (size_t i = 0; i < clean.phones.size(); ++i) {
    for (const auto &p : clean.phones[i]) before += p != "sil";
    for (const auto &p : noisy.phones[i]) after += p != "sil";
  }
  const double n = static_cast<double>(before);
  EXPECT_NEAR((after - n) / n, 0.15, 3.0 * std::sqrt(0.15 * 0.85 / n));
}

TEST(GenCipherTest, DeterministicPerLine) {
  const auto text = GenerateText(60, 5);
  const auto table = AmbiguousTable(5);
  ChannelNoise noise{0.05, 0.05, 0.05, {}};
  const auto a = GenCipher(text, table, noise, {.seed = 7});
  const auto b = GenCipher(text, table, noise, {.seed = 7});
  EXPECT_EQ(a.phones, b.phones);
  // A line's output depends only on its position and the seed.
  const std::vector<std::string> head(text.begin(), text.begin() + 30);
  const auto c = GenCipher(head, table, noise, {.seed = 7});
  for (size_t i = 0; i < 30; ++i) EXPECT_EQ(c.phones[i], a.phones[i]);
  const auto d = GenCipher(text, table, noise, {.seed = 8});
  EXPECT_NE(d.phones, a.phones);
}

TEST(GenCipherTest, NoiselessBijectionIsInvertible) {
  const auto text = GenerateText(100, 6);
  const auto table = BijectiveTable(6);
  const auto c = GenCipher(text, table, {});
  std::map<std::string, std::string> inverse;
  for (const auto &[key, variants] : table.Entries()) {
    inverse[variants[0].phones[0]] = key == lm::kWordBoundary ? " " : key;
  }
  ASSERT_EQ(inverse.size(), 27u);
  for (size_t i = 0; i < c.phones.size(); ++i) {
    std::string decoded;
    for (const auto &p : c.phones[i]) decoded += inverse.at(p);
    EXPECT_EQ(decoded, c.references[i]);
  }
}

TEST(GenCipherTest, RejectsBadNoise) {
  ChannelNoise noise;
  noise.substitution = 0.6;
  noise.deletion = 0.5;
  EXPECT_THROW(GenCipher({"ab"}, IdentityTable(), noise), ConfigError);
  noise = {};
  noise.insertion = -0.1;
  EXPECT_THROW(GenCipher({"ab"}, IdentityTable(), noise), ConfigError);
}

TEST(SelectShortestTest, Examples) {
  const std::vector<Phones> corpus = {
      {"a", "b", "c"}, {"a"}, {"a", "b"}, {"x"}, {"a", "b", "c", "d"}};
  EXPECT_EQ(SelectShortest(corpus, 2), (std::vector<size_t>{1, 3}));
  EXPECT_EQ(SelectShortest(corpus, 3), (std::vector<size_t>{1, 3, 2}));
  EXPECT_EQ(SelectShortest(corpus, 10).size(), 5u);
  EXPECT_TRUE(SelectShortest(corpus, 0).empty());
  CipherCorpus c;
  c.phones = corpus;
  for (size_t i = 0; i < corpus.size(); ++i) c.references.push_back(std::to_string(i));
  const auto sub = Subset(c, SelectShortest(corpus, 2));
  EXPECT_EQ(sub.references, (std::vector<std::string>{"1", "3"}));
}

TEST(DefaultTaskTest, TablesHaveExpectedShape) {
  const auto bij = BijectiveTable(11);
  EXPECT_EQ(bij.Entries().size(), 27u);
  EXPECT_EQ(bij.SilencePhone(), "sil");
  std::set<std::string> used;
  for (const auto &[key, v] : bij.Entries()) used.insert(v[0].phones[0]);
  EXPECT_EQ(used.size(), 27u);

  const auto amb = AmbiguousTable(11);
  int ambiguous = 0;
  for (const auto &[key, v] : amb.Entries()) {
    if (v.size() == 2) {
      ++ambiguous;
      EXPECT_DOUBLE_EQ(v[0].prob, 0.7);
      EXPECT_EQ(v[0].phones, bij.Entries().at(key)[0].phones);
    }
  }
  EXPECT_EQ(ambiguous, 6);
  EXPECT_EQ(amb.NonSilencePhones().size(), 30u);
}

TEST(DefaultTaskTest, TextIsDeterministicAndNormalized) {
  const auto a = GenerateText(200, 1);
  EXPECT_EQ(a, GenerateText(200, 1));
  EXPECT_NE(a, GenerateText(200, 2));
  for (const auto &line : a) {
    EXPECT_EQ(util::NormalizeText(line), line);
    for (char ch : line) EXPECT_TRUE(ch == ' ' || (ch >= 'a' && ch <= 'z'));
  }
}

TEST(UtilTest, TextHelpers) {
  EXPECT_EQ(util::NormalizeText("  Hello\tWORLD \n"), "hello world");
  EXPECT_EQ(util::SplitWhitespace(" a  b\tc "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(util::SplitUtf8("a\xc3\xa9z"),
            (std::vector<std::string>{"a", "\xc3\xa9", "z"}));
  // Published FNV-1a 64-bit test vectors.
  EXPECT_EQ(util::Fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(util::Fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(UtilTest, RandomIsUniformAndReproducible) {
  util::Random a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Next(), b.Next());
  util::Random r(7);
  std::vector<int> hist(6, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    const double u = r.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ++hist[r.Below(6)];
  }
  for (int h : hist) EXPECT_NEAR(h / double(n), 1.0 / 6, 3 * std::sqrt(5.0 / 36 / n));
  std::vector<double> w = {1.0, 0.0, 3.0};
  int count0 = 0;
  for (int i = 0; i < n; ++i) {
    const size_t k = r.Categorical(w);
    ASSERT_NE(k, 1u);
    count0 += k == 0;
  }
  EXPECT_NEAR(count0 / double(n), 0.25, 3 * std::sqrt(0.25 * 0.75 / n));
  EXPECT_NE(util::MixSeed(1, 0), util::MixSeed(1, 1));
  EXPECT_NE(util::MixSeed(1, 0), util::MixSeed(2, 0));
}

}  // namespace
}  // namespace decipher::synth
