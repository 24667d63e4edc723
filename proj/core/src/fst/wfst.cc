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

#include "decipher/fst/wfst.h"

#include <algorithm>
#include <string>

#include "decipher/errors.h"

namespace decipher::fst {
namespace {

void CheckState(const Wfst &f, StateId s, const char *what) {
  if (s < 0 || static_cast<size_t>(s) >= f.NumStates()) {
    throw ConfigError(std::string(what) + ": invalid state id " +
                      std::to_string(s));
  }
}

}  // namespace

StateId Wfst::AddState() {
  states_.emplace_back();
  return static_cast<StateId>(states_.size() - 1);
}

void Wfst::SetStart(StateId s) {
  CheckState(*this, s, "SetStart");
  start_ = s;
}

void Wfst::SetFinal(StateId s, double weight) {
  CheckState(*this, s, "SetFinal");
  states_[s].final_weight = weight;
}

void Wfst::AddArc(StateId s, const Arc &arc) {
  CheckState(*this, s, "AddArc");
  auto &arcs = states_[s].arcs;
  if (!arcs.empty()) {
    if (arc.ilabel < arcs.back().ilabel) ilabel_sorted_ = false;
    if (arc.olabel < arcs.back().olabel) olabel_sorted_ = false;
  }
  arcs.push_back(arc);
}

size_t Wfst::TotalArcs() const {
  size_t n = 0;
  for (const auto &state : states_) n += state.arcs.size();
  return n;
}

bool Wfst::IsAcceptor() const {
  for (const auto &state : states_) {
    for (const auto &arc : state.arcs) {
      if (arc.ilabel != arc.olabel) return false;
    }
  }
  return true;
}

bool Wfst::HasTags() const {
  for (const auto &state : states_) {
    for (const auto &arc : state.arcs) {
      if (arc.tag != kNoParam) return true;
    }
  }
  return false;
}

void Wfst::Validate() const {
  if (start_ != kNoStateId) CheckState(*this, start_, "Validate");
  for (size_t s = 0; s < states_.size(); ++s) {
    for (const auto &arc : states_[s].arcs) {
      CheckState(*this, arc.nextstate, "Validate");
      if (isyms_ && !isyms_->Contains(arc.ilabel)) {
        throw ConfigError("Validate: input label " +
                          std::to_string(arc.ilabel) +
                          " missing from input symbols");
      }
      if (osyms_ && !osyms_->Contains(arc.olabel)) {
        throw ConfigError("Validate: output label " +
                          std::to_string(arc.olabel) +
                          " missing from output symbols");
      }
    }
  }
}

bool Wfst::operator==(const Wfst &other) const {
  return start_ == other.start_ && states_ == other.states_ &&
         SameSymbols(isyms_, other.isyms_) && SameSymbols(osyms_, other.osyms_);
}

bool SameSymbols(const SymbolTablePtr &a, const SymbolTablePtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Wfst StringAcceptor(std::span<const Label> labels, SymbolTablePtr syms) {
  Wfst f(syms, syms);
  StateId s = f.AddState();
  f.SetStart(s);
  for (Label l : labels) {
    const StateId next = f.AddState();
    f.AddArc(s, Arc{l, l, 0.0, next});
    s = next;
  }
  f.SetFinal(s, 0.0);
  return f;
}

}  // namespace decipher::fst
