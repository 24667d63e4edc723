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
// AT&T-style text serialization. One arc per line
//   src<TAB>dst<TAB>ilabel<TAB>olabel<TAB>weight
// and one line per final state
//   state<TAB>weight
// The source state of the first line is the start state. Labels are
// numeric ids resolved through companion symbol-table files. Weights are
// printed in shortest round-trip form, so write(read(text)) reproduces
// text written by this module byte for byte.

#ifndef DECIPHER_FST_FST_IO_H_
#define DECIPHER_FST_FST_IO_H_

#include <iosfwd>
#include <string>

#include "decipher/fst/wfst.h"

namespace decipher::fst {

void WriteText(const Wfst &f, std::ostream &os);
std::string ToText(const Wfst &f);

// Symbol tables are attached to the result and every label is checked
// against them; pass nullptr to skip the check.
Wfst ReadText(std::istream &is, SymbolTablePtr isyms, SymbolTablePtr osyms,
              const std::string &source = "");
Wfst FromText(const std::string &text, SymbolTablePtr isyms = nullptr,
              SymbolTablePtr osyms = nullptr);

void WriteTextFile(const Wfst &f, const std::string &path);
Wfst ReadTextFile(const std::string &path, SymbolTablePtr isyms,
                  SymbolTablePtr osyms);

// Shortest decimal form that parses back to the same double; "Infinity"
// for +inf.
std::string FormatWeight(double w);
double ParseWeight(std::string_view text);

}  // namespace decipher::fst

#endif  // DECIPHER_FST_FST_IO_H_
