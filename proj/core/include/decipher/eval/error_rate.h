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

#ifndef DECIPHER_EVAL_ERROR_RATE_H_
#define DECIPHER_EVAL_ERROR_RATE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "decipher/fst/wfst.h"

namespace decipher::eval {

enum class Unit { kWord, kChar, kPhone };

std::string_view UnitName(Unit unit);
// Throws ConfigError for anything but "word", "char" or "phone".
Unit ParseUnit(std::string_view name);

// Boundary token used for spaces when scoring characters.
inline constexpr char kBoundaryToken[] = "<wb>";

struct ErrorReport {
  Unit unit = Unit::kWord;
  size_t substitutions = 0;
  size_t insertions = 0;
  size_t deletions = 0;
  size_t ref_length = 0;

  size_t Errors() const { return substitutions + insertions + deletions; }
  // (S + I + D) / N; 0 when both sides are empty and infinity when only
  // the reference is.
  double Rate() const;

  ErrorReport &operator+=(const ErrorReport &other);
  friend bool operator==(const ErrorReport &, const ErrorReport &) = default;

  // {"unit", "S", "I", "D", "N", "rate"}; an undefined rate is null.
  std::string ToJson() const;
};

// Splits normalized text into scoring units. Words and phones split on
// whitespace; characters split on UTF-8 code points with each run of
// whitespace becoming one kBoundaryToken.
std::vector<std::string> Tokenize(std::string_view text, Unit unit);

// Levenshtein alignment with unit costs. Among minimal alignments the
// backtrace prefers a diagonal step, then a deletion, then an insertion,
// so counts are deterministic.
template <typename T>
ErrorReport Align(std::span<const T> ref, std::span<const T> hyp, Unit unit);

ErrorReport ErrorRate(std::string_view ref, std::string_view hyp, Unit unit);
ErrorReport ErrorRate(std::span<const std::string> ref,
                      std::span<const std::string> hyp, Unit unit);

// Sums per-utterance reports. Throws ConfigError on a size mismatch.
ErrorReport CorpusErrorRate(const std::vector<std::string> &refs,
                            const std::vector<std::string> &hyps, Unit unit,
                            int jobs = 1);

// Minimal edit distance between `ref` and any output string of an acyclic
// lattice, computed by composing the output projection with an edit
// transducer for `ref` and taking the shortest path. Lattice weights are
// ignored and epsilon outputs are skipped. Returns nullopt for an empty
// lattice.
std::optional<ErrorReport> OracleErrorRate(const fst::Wfst &lattice,
                                           std::span<const fst::Label> ref,
                                           Unit unit = Unit::kChar);

// Fixed-width table with one row per named report.
std::string FormatSummary(
    const std::vector<std::pair<std::string, ErrorReport>> &rows);

}  // namespace decipher::eval

#endif  // DECIPHER_EVAL_ERROR_RATE_H_
