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
// The trainable channel table P(phone | grapheme).
//
// Rows are indexed by grapheme label with row 0 (epsilon) holding phone
// deletions; columns are indexed by phone label with column 0 (epsilon)
// holding grapheme insertions. Every entry is forbidden by structure,
// active, or pruned. Forbidden entries are:
//   - epsilon/epsilon;
//   - any silence phone outside the <wb> row, and any non-silence phone
//     inside it;
//   - insertions when the model was built without them.

#ifndef DECIPHER_ENGINE_LEXICAL_MODEL_H_
#define DECIPHER_ENGINE_LEXICAL_MODEL_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "decipher/fst/wfst.h"

namespace decipher::engine {

using fst::Label;
using fst::ParamId;
using fst::SymbolTablePtr;

enum class EntryState : uint8_t { kForbidden, kActive, kPruned };

class LexicalModel {
 public:
  // Uniform rows over permitted entries. Grapheme rows (including <wb>)
  // give `insertion_mass` to their insertion entry and share the rest over
  // their phones; the deletion row is uniform over non-silence phones.
  // `insertion_mass == 0` disables insertions structurally. Throws
  // ConfigError when `silence` is not a subset of `phones`, when
  // `graphemes` lacks <wb>, or when there is no non-silence phone.
  static LexicalModel Init(SymbolTablePtr phones, SymbolTablePtr graphemes,
                           std::vector<Label> silence,
                           double insertion_mass = 0.01);

  const SymbolTablePtr &Phones() const { return phones_; }
  const SymbolTablePtr &Graphemes() const { return graphemes_; }
  const std::vector<Label> &Silence() const { return silence_; }
  bool IsSilence(Label phone) const { return is_silence_[phone]; }
  bool AllowsInsertions() const { return allow_insertions_; }
  Label Boundary() const { return boundary_; }
  size_t NumNonSilencePhones() const { return num_nonsilence_; }

  size_t NumRows() const { return num_rows_; }
  size_t NumCols() const { return num_cols_; }
  size_t NumParams() const { return num_rows_ * num_cols_; }

  ParamId Param(Label grapheme, Label phone) const {
    return static_cast<ParamId>(grapheme * num_cols_ + phone);
  }
  std::pair<Label, Label> Entry(ParamId p) const {
    return {static_cast<Label>(p / num_cols_),
            static_cast<Label>(p % num_cols_)};
  }

  double Prob(Label grapheme, Label phone) const {
    return probs_[Param(grapheme, phone)];
  }
  EntryState State(Label grapheme, Label phone) const {
    return states_[Param(grapheme, phone)];
  }
  std::span<const double> Probs() const { return probs_; }

  // Active entries with nonzero probability.
  size_t ActiveParams() const;

  // Throws AlgorithmError unless every row with active entries sums to 1
  // within `tol` and inactive entries hold zero.
  void CheckNormalized(double tol = 1e-9) const;

  // Rows with positive total count become the normalized counts; the
  // other rows keep their values. `counts` is indexed by ParamId.
  LexicalModel Reestimate(std::span<const double> counts) const;

  // For every letter row: each non-silence phone entry becomes
  // alpha * P + (1 - alpha) / |non-silence phones|, reactivating pruned
  // entries, and the insertion entry is scaled by alpha. The <wb> and
  // deletion rows are untouched. Throws ConfigError unless 0 < alpha <= 1.
  LexicalModel Smooth(double alpha) const;

  // For every letter row keeps the k most probable active phone entries
  // (ties to the lower phone id), prunes the rest and renormalizes. The
  // insertion entry is kept and not counted. Throws ConfigError if k < 1.
  LexicalModel Prune(int k) const;

  // Sets one entry and renormalizes nothing; for tests and hand-built
  // models. The entry must not be forbidden.
  void SetProb(Label grapheme, Label phone, double p);

  // `grapheme<TAB>phone<TAB>prob` for every active entry, deletion row
  // first. Epsilon is written as <eps>.
  void WriteTsv(std::ostream &os) const;
  void WriteTsvFile(const std::string &path) const;

  // Entries absent from the file are pruned (when permitted).
  static LexicalModel ReadTsv(std::istream &is, SymbolTablePtr phones,
                              SymbolTablePtr graphemes,
                              std::vector<Label> silence,
                              bool allow_insertions,
                              const std::string &source = "");
  static LexicalModel ReadTsvFile(const std::string &path,
                                  SymbolTablePtr phones,
                                  SymbolTablePtr graphemes,
                                  std::vector<Label> silence,
                                  bool allow_insertions);

  bool operator==(const LexicalModel &other) const;

 private:
  LexicalModel(SymbolTablePtr phones, SymbolTablePtr graphemes,
               std::vector<Label> silence, bool allow_insertions);

  bool IsLetterRow(Label y) const { return y != fst::kEpsilon && y != boundary_; }
  void NormalizeRow(Label y);

  SymbolTablePtr phones_;
  SymbolTablePtr graphemes_;
  std::vector<Label> silence_;
  std::vector<bool> is_silence_;
  bool allow_insertions_ = true;
  Label boundary_ = fst::kNoLabel;
  size_t num_nonsilence_ = 0;
  size_t num_rows_ = 0;
  size_t num_cols_ = 0;
  std::vector<double> probs_;
  std::vector<EntryState> states_;
};

}  // namespace decipher::engine

#endif  // DECIPHER_ENGINE_LEXICAL_MODEL_H_
