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

#include "decipher/eval/error_rate.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "decipher/errors.h"
#include "decipher/fst/compose.h"
#include "decipher/fst/ops.h"
#include "decipher/fst/shortest_path.h"
#include "decipher/util/parallel.h"
#include "decipher/util/text.h"
#include "json.hpp"

namespace decipher::eval {
namespace {

using fst::Label;

// Output labels of the edit transducer name the operation taken.
enum EditOp : Label { kMatch = 1, kSubstitute = 2, kInsert = 3, kDelete = 4 };

}  // namespace

std::string_view UnitName(Unit unit) {
  switch (unit) {
    case Unit::kWord:
      return "word";
    case Unit::kChar:
      return "char";
    case Unit::kPhone:
      return "phone";
  }
  return "word";
}

Unit ParseUnit(std::string_view name) {
  if (name == "word") return Unit::kWord;
  if (name == "char") return Unit::kChar;
  if (name == "phone") return Unit::kPhone;
  throw ConfigError("unknown scoring unit '" + std::string(name) + "'");
}

double ErrorReport::Rate() const {
  if (ref_length == 0) {
    return Errors() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return static_cast<double>(Errors()) / static_cast<double>(ref_length);
}

ErrorReport &ErrorReport::operator+=(const ErrorReport &other) {
  substitutions += other.substitutions;
  insertions += other.insertions;
  deletions += other.deletions;
  ref_length += other.ref_length;
  return *this;
}

std::string ErrorReport::ToJson() const {
  nlohmann::ordered_json j;
  j["unit"] = UnitName(unit);
  j["S"] = substitutions;
  j["I"] = insertions;
  j["D"] = deletions;
  j["N"] = ref_length;
  const double rate = Rate();
  if (std::isfinite(rate)) {
    j["rate"] = rate;
  } else {
    j["rate"] = nullptr;
  }
  return j.dump();
}

std::vector<std::string> Tokenize(std::string_view text, Unit unit) {
  if (unit != Unit::kChar) return util::SplitWhitespace(text);
  std::vector<std::string> out;
  bool pending_space = false;
  for (auto &ch : util::SplitUtf8(text)) {
    if (ch.size() == 1 && std::isspace(static_cast<unsigned char>(ch[0]))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.emplace_back(kBoundaryToken);
    pending_space = false;
    out.push_back(std::move(ch));
  }
  return out;
}

template <typename T>
ErrorReport Align(std::span<const T> ref, std::span<const T> hyp, Unit unit) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<size_t> d((n + 1) * (m + 1));
  auto at = [&](size_t i, size_t j) -> size_t & { return d[i * (m + 1) + j]; };
  for (size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (size_t i = 1; i <= n; ++i) {
    for (size_t j = 1; j <= m; ++j) {
      const size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  ErrorReport r;
  r.unit = unit;
  r.ref_length = n;
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        if (!same) ++r.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++r.deletions;
      --i;
    } else {
      ++r.insertions;
      --j;
    }
  }
  return r;
}

template ErrorReport Align<std::string>(std::span<const std::string>,
                                        std::span<const std::string>, Unit);
template ErrorReport Align<Label>(std::span<const Label>,
                                  std::span<const Label>, Unit);

ErrorReport ErrorRate(std::span<const std::string> ref,
                      std::span<const std::string> hyp, Unit unit) {
  return Align<std::string>(ref, hyp, unit);
}

ErrorReport ErrorRate(std::string_view ref, std::string_view hyp, Unit unit) {
  const auto r = Tokenize(ref, unit);
  const auto h = Tokenize(hyp, unit);
  return Align<std::string>(r, h, unit);
}

ErrorReport CorpusErrorRate(const std::vector<std::string> &refs,
                            const std::vector<std::string> &hyps, Unit unit,
                            int jobs) {
  if (refs.size() != hyps.size()) {
    throw ConfigError("reference and hypothesis counts differ: " +
                      std::to_string(refs.size()) + " vs " +
                      std::to_string(hyps.size()));
  }
  std::vector<ErrorReport> parts(refs.size());
  util::ParallelFor(refs.size(), jobs, [&](size_t i) {
    parts[i] = ErrorRate(refs[i], hyps[i], unit);
  });
  ErrorReport total;
  total.unit = unit;
  for (const auto &p : parts) total += p;
  return total;
}

std::optional<ErrorReport> OracleErrorRate(const fst::Wfst &lattice,
                                           std::span<const Label> ref,
                                           Unit unit) {
  const fst::Wfst hyps = fst::Trim(fst::RemoveWeights(
      fst::RemoveTags(fst::Project(lattice, fst::LabelSide::kOutput))));
  if (hyps.Empty()) return std::nullopt;
  if (!fst::TopologicalOrder(hyps)) {
    throw ConfigError("oracle error rate needs an acyclic lattice");
  }

  std::set<Label> alphabet(ref.begin(), ref.end());
  for (size_t s = 0; s < hyps.NumStates(); ++s) {
    for (const auto &arc : hyps.Arcs(s)) {
      if (arc.ilabel != fst::kEpsilon) alphabet.insert(arc.ilabel);
    }
  }

  // State i has consumed i reference tokens.
  fst::Wfst edit(hyps.OutputSymbols(), nullptr);
  const size_t n = ref.size();
  for (size_t i = 0; i <= n; ++i) edit.AddState();
  edit.SetStart(0);
  edit.SetFinal(static_cast<fst::StateId>(n), 0.0);
  for (size_t i = 0; i <= n; ++i) {
    const auto s = static_cast<fst::StateId>(i);
    for (Label a : alphabet) {
      edit.AddArc(s, {a, kInsert, 1.0, s});
      if (i < n) {
        const bool same = a == ref[i];
        edit.AddArc(s, {a, same ? kMatch : kSubstitute, same ? 0.0 : 1.0,
                        s + 1});
      }
    }
    if (i < n) edit.AddArc(s, {fst::kEpsilon, kDelete, 1.0, s + 1});
  }

  const auto path = fst::ShortestPath(fst::Compose(hyps, edit));
  if (!path) return std::nullopt;
  ErrorReport r;
  r.unit = unit;
  r.ref_length = n;
  for (Label op : path->olabels) {
    if (op == kSubstitute) ++r.substitutions;
    if (op == kInsert) ++r.insertions;
    if (op == kDelete) ++r.deletions;
  }
  return r;
}

std::string FormatSummary(
    const std::vector<std::pair<std::string, ErrorReport>> &rows) {
  size_t width = 4;
  for (const auto &[name, r] : rows) width = std::max(width, name.size());
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-*s %-5s %8s %8s %8s %8s %8s\n",
                static_cast<int>(width), "name", "unit", "S", "I", "D", "N",
                "rate");
  os << buf;
  for (const auto &[name, r] : rows) {
    std::snprintf(buf, sizeof(buf), "%-*s %-5s %8zu %8zu %8zu %8zu %7.2f%%\n",
                  static_cast<int>(width), name.c_str(),
                  std::string(UnitName(r.unit)).c_str(), r.substitutions,
                  r.insertions, r.deletions, r.ref_length, 100.0 * r.Rate());
    os << buf;
  }
  return os.str();
}

}  // namespace decipher::eval
