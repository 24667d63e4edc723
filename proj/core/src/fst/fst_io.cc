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

#include "decipher/fst/fst_io.h"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "decipher/errors.h"

namespace decipher::fst {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == '\t' || line[i] == ' ')) ++i;
    if (i >= line.size()) break;
    size_t j = i;
    while (j < line.size() && line[j] != '\t' && line[j] != ' ') ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

template <class Int>
Int ParseInt(std::string_view text, const std::string &where) {
  Int value{};
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    throw FormatError(where + ": bad integer '" + std::string(text) + "'");
  }
  return value;
}

void WriteState(const Wfst &f, StateId s, std::ostream &os) {
  for (const Arc &arc : f.Arcs(s)) {
    os << s << '\t' << arc.nextstate << '\t' << arc.ilabel << '\t'
       << arc.olabel << '\t' << FormatWeight(arc.weight) << '\n';
  }
  if (f.IsFinal(s)) os << s << '\t' << FormatWeight(f.Final(s)) << '\n';
}

}  // namespace

std::string FormatWeight(double w) {
  if (w == kInfinity) return "Infinity";
  if (std::isnan(w)) throw ConfigError("FormatWeight: NaN weight");
  if (w == 0.0) return "0";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), w);
  return std::string(buf.data(), ptr);
}

double ParseWeight(std::string_view text) {
  if (text == "Infinity" || text == "inf" || text == "INF") return kInfinity;
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), w);
  if (ec != std::errc() || ptr != text.data() + text.size() || std::isnan(w)) {
    throw FormatError("bad weight '" + std::string(text) + "'");
  }
  return w;
}

void WriteText(const Wfst &f, std::ostream &os) {
  if (f.Empty()) return;
  const StateId start = f.Start();
  if (f.NumArcs(start) == 0 && !f.IsFinal(start)) {
    // Keeps the start state identifiable on read.
    os << start << '\t' << FormatWeight(kInfinity) << '\n';
  }
  WriteState(f, start, os);
  for (size_t s = 0; s < f.NumStates(); ++s) {
    if (static_cast<StateId>(s) != start) {
      WriteState(f, static_cast<StateId>(s), os);
    }
  }
}

std::string ToText(const Wfst &f) {
  std::ostringstream os;
  WriteText(f, os);
  return os.str();
}

Wfst ReadText(std::istream &is, SymbolTablePtr isyms, SymbolTablePtr osyms,
              const std::string &source) {
  Wfst f(isyms, osyms);
  auto ensure = [&f](StateId s) {
    while (f.NumStates() <= static_cast<size_t>(s)) f.AddState();
  };
  std::string line;
  size_t lineno = 0;
  bool first = true;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = SplitFields(line);
    if (fields.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto src = ParseInt<StateId>(fields[0], where);
    ensure(src);
    if (first) {
      f.SetStart(src);
      first = false;
    }
    if (fields.size() <= 2) {
      const double w = fields.size() == 2 ? ParseWeight(fields[1]) : 0.0;
      f.SetFinal(src, w);
      continue;
    }
    if (fields.size() != 4 && fields.size() != 5) {
      throw FormatError(where + ": expected 1, 2, 4 or 5 fields");
    }
    Arc arc;
    arc.nextstate = ParseInt<StateId>(fields[1], where);
    arc.ilabel = ParseInt<Label>(fields[2], where);
    arc.olabel = ParseInt<Label>(fields[3], where);
    arc.weight = fields.size() == 5 ? ParseWeight(fields[4]) : 0.0;
    if (isyms && !isyms->Contains(arc.ilabel)) {
      throw FormatError(where + ": input label not in symbol table");
    }
    if (osyms && !osyms->Contains(arc.olabel)) {
      throw FormatError(where + ": output label not in symbol table");
    }
    ensure(arc.nextstate);
    f.AddArc(src, arc);
  }
  return f;
}

Wfst FromText(const std::string &text, SymbolTablePtr isyms,
              SymbolTablePtr osyms) {
  std::istringstream is(text);
  return ReadText(is, std::move(isyms), std::move(osyms), "<string>");
}

void WriteTextFile(const Wfst &f, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path);
  WriteText(f, os);
}

Wfst ReadTextFile(const std::string &path, SymbolTablePtr isyms,
                  SymbolTablePtr osyms) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open FST: " + path);
  return ReadText(is, std::move(isyms), std::move(osyms), path);
}

}  // namespace decipher::fst
