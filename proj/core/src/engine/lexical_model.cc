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

#include "decipher/engine/lexical_model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "decipher/errors.h"
#include "decipher/lm/ngram_lm.h"

namespace decipher::engine {
namespace {

std::string FormatProb(double p) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), p);
  return std::string(buf, end);
}

}  // namespace

LexicalModel::LexicalModel(SymbolTablePtr phones, SymbolTablePtr graphemes,
                           std::vector<Label> silence, bool allow_insertions)
    : phones_(std::move(phones)),
      graphemes_(std::move(graphemes)),
      silence_(std::move(silence)),
      allow_insertions_(allow_insertions) {
  if (!phones_ || !graphemes_) {
    throw ConfigError("lexical model: null symbol table");
  }
  boundary_ = graphemes_->Find(lm::kWordBoundary);
  if (boundary_ == fst::kNoLabel) {
    throw ConfigError("lexical model: grapheme table lacks " +
                      std::string(lm::kWordBoundary));
  }
  num_rows_ = graphemes_->Size();
  num_cols_ = phones_->Size();
  is_silence_.assign(num_cols_, false);
  std::sort(silence_.begin(), silence_.end());
  silence_.erase(std::unique(silence_.begin(), silence_.end()),
                 silence_.end());
  for (Label s : silence_) {
    if (s <= fst::kEpsilon || s >= static_cast<Label>(num_cols_)) {
      throw ConfigError("lexical model: silence phone " + std::to_string(s) +
                        " is not a phone");
    }
    is_silence_[s] = true;
  }
  num_nonsilence_ = num_cols_ - 1 - silence_.size();
  if (num_nonsilence_ == 0) {
    throw ConfigError("lexical model: no non-silence phones");
  }
  probs_.assign(num_rows_ * num_cols_, 0.0);
  states_.assign(num_rows_ * num_cols_, EntryState::kForbidden);
  for (Label y = 0; y < static_cast<Label>(num_rows_); ++y) {
    for (Label x = 0; x < static_cast<Label>(num_cols_); ++x) {
      bool permitted;
      if (x == fst::kEpsilon) {
        permitted = y != fst::kEpsilon && allow_insertions_;
      } else if (y == boundary_) {
        permitted = is_silence_[x];
      } else {
        permitted = !is_silence_[x];
      }
      if (permitted) states_[Param(y, x)] = EntryState::kActive;
    }
  }
}

LexicalModel LexicalModel::Init(SymbolTablePtr phones,
                                SymbolTablePtr graphemes,
                                std::vector<Label> silence,
                                double insertion_mass) {
  if (!(insertion_mass >= 0.0 && insertion_mass < 1.0)) {
    throw ConfigError("lexical model: insertion mass must be in [0, 1)");
  }
  LexicalModel m(std::move(phones), std::move(graphemes), std::move(silence),
                 insertion_mass > 0.0);
  for (Label y = 0; y < static_cast<Label>(m.num_rows_); ++y) {
    size_t n_phones = 0;
    for (Label x = 1; x < static_cast<Label>(m.num_cols_); ++x) {
      if (m.State(y, x) == EntryState::kActive) ++n_phones;
    }
    double ins = 0.0;
    if (m.State(y, fst::kEpsilon) == EntryState::kActive) {
      ins = n_phones == 0 ? 1.0 : insertion_mass;
      m.probs_[m.Param(y, fst::kEpsilon)] = ins;
    }
    for (Label x = 1; x < static_cast<Label>(m.num_cols_); ++x) {
      if (m.State(y, x) == EntryState::kActive) {
        m.probs_[m.Param(y, x)] = (1.0 - ins) / static_cast<double>(n_phones);
      }
    }
  }
  return m;
}

size_t LexicalModel::ActiveParams() const {
  size_t n = 0;
  for (size_t i = 0; i < probs_.size(); ++i) {
    if (states_[i] == EntryState::kActive && probs_[i] > 0.0) ++n;
  }
  return n;
}

void LexicalModel::CheckNormalized(double tol) const {
  for (Label y = 0; y < static_cast<Label>(num_rows_); ++y) {
    double sum = 0.0;
    bool any = false;
    for (Label x = 0; x < static_cast<Label>(num_cols_); ++x) {
      const double p = Prob(y, x);
      if (State(y, x) != EntryState::kActive) {
        if (p != 0.0) {
          throw AlgorithmError("lexical model: inactive entry with mass in row " +
                               graphemes_->Symbol(y));
        }
        continue;
      }
      if (!(p >= 0.0 && p <= 1.0)) {
        throw AlgorithmError("lexical model: probability out of range in row " +
                             graphemes_->Symbol(y));
      }
      any = true;
      sum += p;
    }
    if (any && std::fabs(sum - 1.0) > tol) {
      throw AlgorithmError("lexical model: row " + graphemes_->Symbol(y) +
                           " sums to " + FormatProb(sum));
    }
  }
}

void LexicalModel::NormalizeRow(Label y) {
  double sum = 0.0;
  for (Label x = 0; x < static_cast<Label>(num_cols_); ++x) {
    sum += probs_[Param(y, x)];
  }
  if (sum <= 0.0) return;
  for (Label x = 0; x < static_cast<Label>(num_cols_); ++x) {
    probs_[Param(y, x)] /= sum;
  }
}

LexicalModel LexicalModel::Reestimate(std::span<const double> counts) const {
  if (counts.size() != probs_.size()) {
    throw ConfigError("Reestimate: count vector has wrong size");
  }
  LexicalModel out = *this;
  for (Label y = 0; y < static_cast<Label>(num_rows_); ++y) {
    double total = 0.0;
    for (Label x = 0; x < static_cast<Label>(num_cols_); ++x) {
      if (State(y, x) == EntryState::kActive) total += counts[Param(y, x)];
    }
    if (!(total > 0.0)) continue;
    for (Label x = 0; x < static_cast<Label>(num_cols_); ++x) {
      const ParamId p = Param(y, x);
      out.probs_[p] =
          states_[p] == EntryState::kActive ? counts[p] / total : 0.0;
    }
  }
  return out;
}

LexicalModel LexicalModel::Smooth(double alpha) const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("smooth: alpha must be in (0, 1]");
  }
  LexicalModel out = *this;
  const double floor = (1.0 - alpha) / static_cast<double>(num_nonsilence_);
  for (Label y = 0; y < static_cast<Label>(num_rows_); ++y) {
    if (!IsLetterRow(y)) continue;
    for (Label x = 0; x < static_cast<Label>(num_cols_); ++x) {
      const ParamId p = Param(y, x);
      if (states_[p] == EntryState::kForbidden) continue;
      if (x == fst::kEpsilon) {
        out.probs_[p] = alpha * probs_[p];
      } else {
        out.probs_[p] = alpha * probs_[p] + floor;
        out.states_[p] = EntryState::kActive;
      }
    }
  }
  return out;
}

LexicalModel LexicalModel::Prune(int k) const {
  if (k < 1) throw ConfigError("prune: k must be >= 1");
  LexicalModel out = *this;
  std::vector<Label> cand;
  for (Label y = 0; y < static_cast<Label>(num_rows_); ++y) {
    if (!IsLetterRow(y)) continue;
    cand.clear();
    for (Label x = 1; x < static_cast<Label>(num_cols_); ++x) {
      if (State(y, x) == EntryState::kActive) cand.push_back(x);
    }
    if (cand.size() <= static_cast<size_t>(k)) continue;
    std::stable_sort(cand.begin(), cand.end(), [&](Label a, Label b) {
      return Prob(y, a) > Prob(y, b);
    });
    for (size_t i = static_cast<size_t>(k); i < cand.size(); ++i) {
      const ParamId p = Param(y, cand[i]);
      out.probs_[p] = 0.0;
      out.states_[p] = EntryState::kPruned;
    }
    out.NormalizeRow(y);
  }
  return out;
}

void LexicalModel::SetProb(Label grapheme, Label phone, double p) {
  const ParamId id = Param(grapheme, phone);
  if (states_[id] == EntryState::kForbidden) {
    throw ConfigError("SetProb: entry is structurally forbidden");
  }
  states_[id] = EntryState::kActive;
  probs_[id] = p;
}

void LexicalModel::WriteTsv(std::ostream &os) const {
  for (Label y = 0; y < static_cast<Label>(num_rows_); ++y) {
    for (Label x = 0; x < static_cast<Label>(num_cols_); ++x) {
      if (State(y, x) != EntryState::kActive) continue;
      os << graphemes_->Symbol(y) << '\t' << phones_->Symbol(x) << '\t'
         << FormatProb(Prob(y, x)) << '\n';
    }
  }
}

void LexicalModel::WriteTsvFile(const std::string &path) const {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path);
  WriteTsv(os);
}

LexicalModel LexicalModel::ReadTsv(std::istream &is, SymbolTablePtr phones,
                                   SymbolTablePtr graphemes,
                                   std::vector<Label> silence,
                                   bool allow_insertions,
                                   const std::string &source) {
  LexicalModel m(std::move(phones), std::move(graphemes), std::move(silence),
                 allow_insertions);
  for (auto &s : m.states_) {
    if (s == EntryState::kActive) s = EntryState::kPruned;
  }
  std::string line;
  size_t lineno = 0;
  auto fail = [&](const std::string &msg) {
    throw FormatError(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(f);
    if (fields.size() != 3) fail("expected grapheme<TAB>phone<TAB>prob");
    const Label y = m.graphemes_->Find(fields[0]);
    const Label x = m.phones_->Find(fields[1]);
    if (y == fst::kNoLabel) fail("unknown grapheme '" + fields[0] + "'");
    if (x == fst::kNoLabel) fail("unknown phone '" + fields[1] + "'");
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(fields[2].data(),
                                     fields[2].data() + fields[2].size(), p);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size()) {
      fail("bad probability '" + fields[2] + "'");
    }
    if (m.State(y, x) == EntryState::kForbidden) {
      fail("entry " + fields[0] + "/" + fields[1] + " is not permitted");
    }
    m.SetProb(y, x, p);
  }
  m.CheckNormalized(1e-6);
  return m;
}

LexicalModel LexicalModel::ReadTsvFile(const std::string &path,
                                       SymbolTablePtr phones,
                                       SymbolTablePtr graphemes,
                                       std::vector<Label> silence,
                                       bool allow_insertions) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open: " + path);
  return ReadTsv(is, std::move(phones), std::move(graphemes),
                 std::move(silence), allow_insertions, path);
}

bool LexicalModel::operator==(const LexicalModel &other) const {
  return fst::SameSymbols(phones_, other.phones_) &&
         fst::SameSymbols(graphemes_, other.graphemes_) &&
         silence_ == other.silence_ &&
         allow_insertions_ == other.allow_insertions_ &&
         probs_ == other.probs_ && states_ == other.states_;
}

}  // namespace decipher::engine
