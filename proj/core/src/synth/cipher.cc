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

#include "decipher/synth/cipher.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "decipher/errors.h"
#include "decipher/lm/ngram_lm.h"
#include "decipher/util/random.h"
#include "decipher/util/text.h"

namespace decipher::synth {

PronunciationTable::PronunciationTable(
    std::map<std::string, std::vector<Pronunciation>> entries)
    : entries_(std::move(entries)) {
  const std::string wb(lm::kWordBoundary);
  auto it = entries_.find(wb);
  if (it == entries_.end() || it->second.size() != 1 ||
      it->second[0].phones.size() != 1) {
    throw ConfigError("pronunciation table: " + wb +
                      " must map to exactly one silence phone");
  }
  silence_ = it->second[0].phones[0];
  for (auto &[key, variants] : entries_) {
    if (key.empty() || variants.empty()) {
      throw ConfigError("pronunciation table: empty key or variant list");
    }
    double sum = 0.0;
    for (const auto &v : variants) {
      if (v.phones.size() > 2) {
        throw ConfigError("pronunciation table: '" + key +
                          "' has a variant longer than 2 phones");
      }
      if (!(v.prob >= 0.0)) {
        throw ConfigError("pronunciation table: negative probability for '" +
                          key + "'");
      }
      if (key != wb) {
        for (const auto &p : v.phones) {
          if (p == silence_) {
            throw ConfigError("pronunciation table: '" + key +
                              "' uses the silence phone");
          }
        }
      }
      sum += v.prob;
    }
    if (std::fabs(sum - 1.0) > 1e-6) {
      throw ConfigError("pronunciation table: probabilities for '" + key +
                        "' sum to " + std::to_string(sum));
    }
    if (key != wb) {
      max_key_chars_ = std::max(max_key_chars_, util::SplitUtf8(key).size());
    }
  }
}

std::vector<std::string> PronunciationTable::NonSilencePhones() const {
  std::set<std::string> phones;
  for (const auto &[key, variants] : entries_) {
    for (const auto &v : variants) {
      for (const auto &p : v.phones) {
        if (p != silence_) phones.insert(p);
      }
    }
  }
  return {phones.begin(), phones.end()};
}

fst::SymbolTable PronunciationTable::PhoneSymbols() const {
  fst::SymbolTable syms;
  for (const auto &p : NonSilencePhones()) syms.AddSymbol(p);
  syms.AddSymbol(silence_);
  return syms;
}

void PronunciationTable::WriteTsv(std::ostream &os) const {
  for (const auto &[key, variants] : entries_) {
    for (const auto &v : variants) {
      os << key << '\t' << util::Join(v.phones, " ") << '\t';
      char buf[64];
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v.prob);
      os.write(buf, end - buf);
      os << '\n';
    }
  }
}

void PronunciationTable::WriteTsvFile(const std::string &path) const {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path);
  WriteTsv(os);
}

PronunciationTable PronunciationTable::ReadTsv(std::istream &is,
                                               const std::string &source) {
  std::map<std::string, std::vector<Pronunciation>> entries;
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(f);
    if (fields.size() == 2 && line.back() == '\t') fields.emplace_back();
    if (fields.size() != 3) {
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": expected grapheme<TAB>phones<TAB>prob");
    }
    Pronunciation p;
    p.phones = util::SplitWhitespace(fields[1]);
    auto [ptr, ec] = std::from_chars(
        fields[2].data(), fields[2].data() + fields[2].size(), p.prob);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size()) {
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": bad probability '" + fields[2] + "'");
    }
    entries[fields[0]].push_back(std::move(p));
  }
  return PronunciationTable(std::move(entries));
}

PronunciationTable PronunciationTable::ReadTsvFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open: " + path);
  return ReadTsv(is, path);
}

void ChannelNoise::Validate() const {
  for (double r : {substitution, deletion, insertion}) {
    if (!(r >= 0.0 && r < 1.0)) {
      throw ConfigError("channel noise rates must be in [0, 1)");
    }
  }
  if (!(substitution + deletion + insertion < 1.0)) {
    throw ConfigError("channel noise rates must sum to less than 1");
  }
}

CipherCorpus GenCipher(const std::vector<std::string> &text,
                       const PronunciationTable &table,
                       const ChannelNoise &noise,
                       const CipherOptions &options) {
  noise.Validate();
  if (!(options.silence_prob >= 0.0 && options.silence_prob <= 1.0)) {
    throw ConfigError("silence probability must be in [0, 1]");
  }
  const auto &entries = table.Entries();
  const std::vector<std::string> inventory = table.NonSilencePhones();
  const bool noisy =
      noise.substitution > 0.0 || noise.deletion > 0.0 || noise.insertion > 0.0;
  if (noisy && inventory.size() < 2) {
    throw ConfigError("channel noise needs at least two phones");
  }
  CipherCorpus out;
  std::vector<double> weights;
  for (size_t li = 0; li < text.size(); ++li) {
    const std::string norm = util::NormalizeText(text[li]);
    if (norm.empty()) continue;
    util::Random spell_rng(util::MixSeed(options.seed, 2 * li));
    util::Random noise_rng(util::MixSeed(options.seed, 2 * li + 1));
    const auto chars = util::SplitUtf8(norm);

    std::vector<std::string> clean;
    for (size_t i = 0; i < chars.size();) {
      if (chars[i] == " ") {
        if (spell_rng.Uniform() < options.silence_prob) {
          clean.push_back(table.SilencePhone());
        }
        ++i;
        continue;
      }
      const std::vector<Pronunciation> *variants = nullptr;
      size_t len = std::min(table.MaxKeyLength(), chars.size() - i);
      for (; len > 0; --len) {
        std::string key;
        bool has_space = false;
        for (size_t k = 0; k < len; ++k) {
          has_space = has_space || chars[i + k] == " ";
          key += chars[i + k];
        }
        if (has_space) continue;
        auto it = entries.find(key);
        if (it != entries.end() && key != lm::kWordBoundary) {
          variants = &it->second;
          break;
        }
      }
      if (!variants) {
        throw ConfigError("pronunciation table cannot spell '" + chars[i] +
                          "' in line " + std::to_string(li + 1));
      }
      weights.clear();
      for (const auto &v : *variants) weights.push_back(v.prob);
      const auto &chosen = (*variants)[spell_rng.Categorical(weights)];
      clean.insert(clean.end(), chosen.phones.begin(), chosen.phones.end());
      i += len;
    }

    std::vector<std::string> phones;
    if (!noisy) {
      phones = std::move(clean);
    } else {
      auto random_other = [&](const std::string &p) {
        auto conf = noise.confusion.find(p);
        if (conf != noise.confusion.end() && !conf->second.empty()) {
          weights.clear();
          for (const auto &[q, w] : conf->second) weights.push_back(w);
          return conf->second[noise_rng.Categorical(weights)].first;
        }
        std::string q;
        do {
          q = inventory[noise_rng.Below(inventory.size())];
        } while (q == p);
        return q;
      };
      for (const auto &p : clean) {
        if (p == table.SilencePhone()) {
          phones.push_back(p);
          continue;
        }
        const double u = noise_rng.Uniform();
        if (u < noise.substitution) {
          phones.push_back(random_other(p));
        } else if (u < noise.substitution + noise.deletion) {
          // dropped
        } else if (u < noise.substitution + noise.deletion + noise.insertion) {
          phones.push_back(p);
          phones.push_back(inventory[noise_rng.Below(inventory.size())]);
        } else {
          phones.push_back(p);
        }
      }
    }
    out.phones.push_back(std::move(phones));
    out.references.push_back(norm);
  }
  return out;
}

std::vector<size_t> SelectShortest(
    const std::vector<std::vector<std::string>> &phones, size_t n) {
  std::vector<size_t> idx(phones.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return phones[a].size() < phones[b].size();
  });
  if (idx.size() > n) idx.resize(n);
  return idx;
}

CipherCorpus Subset(const CipherCorpus &corpus,
                    const std::vector<size_t> &indices) {
  CipherCorpus out;
  for (size_t i : indices) {
    out.phones.push_back(corpus.phones.at(i));
    out.references.push_back(corpus.references.at(i));
  }
  return out;
}

}  // namespace decipher::synth
