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

#include "decipher/fst/symbol_table.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "decipher/errors.h"

namespace decipher::fst {

SymbolTable::SymbolTable() { AddSymbol(kEpsilonSymbol); }

Label SymbolTable::AddSymbol(std::string_view symbol) {
  if (auto it = ids_.find(std::string(symbol)); it != ids_.end()) {
    return it->second;
  }
  const auto id = static_cast<Label>(symbols_.size());
  symbols_.emplace_back(symbol);
  ids_.emplace(symbols_.back(), id);
  return id;
}

Label SymbolTable::Find(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  return it == ids_.end() ? kNoLabel : it->second;
}

const std::string &SymbolTable::Symbol(Label label) const {
  if (!Contains(label)) {
    throw ConfigError("SymbolTable: label " + std::to_string(label) +
                      " out of range");
  }
  return symbols_[label];
}

void SymbolTable::Write(std::ostream &os) const {
  for (size_t i = 0; i < symbols_.size(); ++i) {
    os << symbols_[i] << '\t' << i << '\n';
  }
}

void SymbolTable::WriteFile(const std::string &path) const {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path);
  Write(os);
}

SymbolTable SymbolTable::Read(std::istream &is, const std::string &source) {
  SymbolTable table;
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) {
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": expected token<TAB>id");
    }
    Label id = 0;
    const char *first = line.data() + tab + 1;
    const char *last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, id);
    if (ec != std::errc() || ptr != last || id < 0) {
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": bad symbol id");
    }
    const std::string token = line.substr(0, tab);
    if (id == 0) {
      if (token != kEpsilonSymbol) {
        throw FormatError(source + ": id 0 must be " +
                          std::string(kEpsilonSymbol));
      }
      continue;
    }
    if (id != static_cast<Label>(table.Size()) || table.Contains(token)) {
      throw FormatError(source + ":" + std::to_string(lineno) +
                        ": ids must be dense, ascending and unique");
    }
    table.AddSymbol(token);
  }
  return table;
}

SymbolTable SymbolTable::ReadFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open symbol table: " + path);
  return Read(is, path);
}

}  // namespace decipher::fst
