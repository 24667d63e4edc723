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
// Vector-backed weighted finite-state transducer. Weights are negative
// log values; whether alternatives combine by min or by log-sum is chosen
// by the algorithm (see semiring.h), not stored in the machine.

#ifndef DECIPHER_FST_WFST_H_
#define DECIPHER_FST_WFST_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "decipher/fst/semiring.h"
#include "decipher/fst/symbol_table.h"

namespace decipher::fst {

using StateId = int32_t;
// Identifies the trainable parameter an arc weight was drawn from.
using ParamId = int32_t;

inline constexpr StateId kNoStateId = -1;
inline constexpr ParamId kNoParam = -1;

struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  double weight = 0.0;
  StateId nextstate = kNoStateId;
  ParamId tag = kNoParam;

  friend bool operator==(const Arc &, const Arc &) = default;
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

class Wfst {
 public:
  Wfst() = default;
  Wfst(SymbolTablePtr isyms, SymbolTablePtr osyms)
      : isyms_(std::move(isyms)), osyms_(std::move(osyms)) {}

  StateId AddState();
  void ReserveStates(size_t n) { states_.reserve(n); }
  void SetStart(StateId s);
  void SetFinal(StateId s, double weight);
  void AddArc(StateId s, const Arc &arc);
  void ReserveArcs(StateId s, size_t n) { states_[s].arcs.reserve(n); }

  StateId Start() const { return start_; }
  double Final(StateId s) const { return states_[s].final_weight; }
  bool IsFinal(StateId s) const { return states_[s].final_weight != kInfinity; }
  std::span<const Arc> Arcs(StateId s) const { return states_[s].arcs; }
  size_t NumArcs(StateId s) const { return states_[s].arcs.size(); }
  size_t NumStates() const { return states_.size(); }
  size_t TotalArcs() const;
  bool Empty() const { return start_ == kNoStateId; }

  const SymbolTablePtr &InputSymbols() const { return isyms_; }
  const SymbolTablePtr &OutputSymbols() const { return osyms_; }
  void SetInputSymbols(SymbolTablePtr syms) { isyms_ = std::move(syms); }
  void SetOutputSymbols(SymbolTablePtr syms) { osyms_ = std::move(syms); }

  // Arcs of every state are nondecreasing in the given label. Maintained
  // incrementally by AddArc.
  bool InputSorted() const { return ilabel_sorted_; }
  bool OutputSorted() const { return olabel_sorted_; }

  bool IsAcceptor() const;
  bool HasTags() const;

  // Throws ConfigError on dangling next-states or labels that do not
  // resolve in the attached symbol tables.
  void Validate() const;

  bool operator==(const Wfst &other) const;

 private:
  struct State {
    double final_weight = kInfinity;
    std::vector<Arc> arcs;
    bool operator==(const State &) const = default;
  };

  std::vector<State> states_;
  StateId start_ = kNoStateId;
  SymbolTablePtr isyms_;
  SymbolTablePtr osyms_;
  bool ilabel_sorted_ = true;
  bool olabel_sorted_ = true;
};

// True when both pointers are null, identical, or hold equal tables.
bool SameSymbols(const SymbolTablePtr &a, const SymbolTablePtr &b);

// Linear acceptor over `labels` with unit weights.
Wfst StringAcceptor(std::span<const Label> labels, SymbolTablePtr syms);

}  // namespace decipher::fst

#endif  // DECIPHER_FST_WFST_H_
