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

#ifndef DECIPHER_FST_SYMBOL_TABLE_H_
#define DECIPHER_FST_SYMBOL_TABLE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace decipher::fst {

using Label = int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr Label kNoLabel = -1;
inline constexpr std::string_view kEpsilonSymbol = "<eps>";

// Dense bijection between tokens and label ids. Id 0 is always <eps>;
// further symbols receive consecutive ids in insertion order.
class SymbolTable {
 public:
  SymbolTable();

  // Returns the id of `symbol`, adding it if absent.
  Label AddSymbol(std::string_view symbol);

  // kNoLabel when absent.
  Label Find(std::string_view symbol) const;
  const std::string &Symbol(Label label) const;

  bool Contains(Label label) const {
    return label >= 0 && label < static_cast<Label>(symbols_.size());
  }
  bool Contains(std::string_view symbol) const {
    return Find(symbol) != kNoLabel;
  }

  // Number of symbols including <eps>.
  size_t Size() const { return symbols_.size(); }
  const std::vector<std::string> &Symbols() const { return symbols_; }

  // `token<TAB>id` lines, ids ascending.
  void Write(std::ostream &os) const;
  void WriteFile(const std::string &path) const;
  static SymbolTable Read(std::istream &is, const std::string &source = "");
  static SymbolTable ReadFile(const std::string &path);

  friend bool operator==(const SymbolTable &a, const SymbolTable &b) {
    return a.symbols_ == b.symbols_;
  }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Label> ids_;
};

}  // namespace decipher::fst

#endif  // DECIPHER_FST_SYMBOL_TABLE_H_
