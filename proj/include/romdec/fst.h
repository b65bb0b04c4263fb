// Copyright 2026 The romdec Authors.
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
// Mutable vector-backed weighted transducer. Arcs are stored per state in
// contiguous arrays.

#ifndef ROMDEC_FST_H_
#define ROMDEC_FST_H_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "romdec/errors.h"
#include "romdec/semiring.h"
#include "romdec/symbol_table.h"

namespace romdec {

using StateId = int32_t;
inline constexpr StateId kNoState = -1;

template <class W>
struct Arc {
  Label ilabel = kEpsilon;
  Label olabel = kEpsilon;
  W weight = W::One();
  StateId nextstate = kNoState;
};

template <class W>
class VectorFst {
 public:
  using Weight = W;
  using ArcType = Arc<W>;

  StateId AddState() {
    states_.emplace_back();
    return static_cast<StateId>(states_.size()) - 1;
  }

  void ReserveStates(size_t n) { states_.reserve(n); }

  void SetStart(StateId s) { start_ = s; }
  StateId Start() const { return start_; }

  void SetFinal(StateId s, W weight) { states_[s].final = std::move(weight); }
  const W &Final(StateId s) const { return states_[s].final; }
  bool IsFinal(StateId s) const { return !states_[s].final.IsZero(); }

  void AddArc(StateId s, ArcType arc) {
    input_sorted_ = output_sorted_ = false;
    states_[s].arcs.push_back(std::move(arc));
  }
  void ReserveArcs(StateId s, size_t n) { states_[s].arcs.reserve(n); }

  std::span<const ArcType> Arcs(StateId s) const { return states_[s].arcs; }
  std::vector<ArcType> &MutableArcs(StateId s) {
    input_sorted_ = output_sorted_ = false;
    return states_[s].arcs;
  }

  StateId NumStates() const { return static_cast<StateId>(states_.size()); }
  size_t NumArcs(StateId s) const { return states_[s].arcs.size(); }
  size_t NumArcs() const {
    size_t n = 0;
    for (const auto &state : states_) n += state.arcs.size();
    return n;
  }

  const std::shared_ptr<const SymbolTable> &InputSymbols() const {
    return isymbols_;
  }
  const std::shared_ptr<const SymbolTable> &OutputSymbols() const {
    return osymbols_;
  }
  void SetInputSymbols(std::shared_ptr<const SymbolTable> table) {
    isymbols_ = std::move(table);
  }
  void SetOutputSymbols(std::shared_ptr<const SymbolTable> table) {
    osymbols_ = std::move(table);
  }

  // Arcs carrying this label are failure (backoff) transitions: taken only
  // when no arc matches the current symbol. kNoLabel when absent.
  Label FailureLabel() const { return failure_label_; }
  void SetFailureLabel(Label label) { failure_label_ = label; }

  void SortArcsByInput() {
    for (auto &state : states_) {
      std::stable_sort(state.arcs.begin(), state.arcs.end(),
                       [](const ArcType &x, const ArcType &y) {
                         return x.ilabel < y.ilabel;
                       });
    }
    input_sorted_ = true;
    output_sorted_ = IsAcceptor();
  }

  void SortArcsByOutput() {
    for (auto &state : states_) {
      std::stable_sort(state.arcs.begin(), state.arcs.end(),
                       [](const ArcType &x, const ArcType &y) {
                         return x.olabel < y.olabel;
                       });
    }
    output_sorted_ = true;
    input_sorted_ = IsAcceptor();
  }

  // Set by the sorts and cleared by any arc mutation.
  bool InputSorted() const { return input_sorted_; }
  bool OutputSorted() const { return output_sorted_; }
  // For copies that preserve arc order.
  void SetSortedFlags(bool input, bool output) {
    input_sorted_ = input;
    output_sorted_ = output;
  }

  bool IsAcceptor() const {
    for (const auto &state : states_) {
      for (const auto &arc : state.arcs) {
        if (arc.ilabel != arc.olabel) return false;
      }
    }
    return true;
  }

  // Start and every arc target name existing states.
  bool Verify() const {
    if (states_.empty()) return start_ == kNoState;
    if (start_ < 0 || start_ >= NumStates()) return false;
    for (const auto &state : states_) {
      for (const auto &arc : state.arcs) {
        if (arc.nextstate < 0 || arc.nextstate >= NumStates()) return false;
      }
    }
    return true;
  }

 private:
  struct State {
    std::vector<ArcType> arcs;
    W final = W::Zero();
  };

  bool input_sorted_ = false;
  bool output_sorted_ = false;

  std::vector<State> states_;
  StateId start_ = kNoState;
  std::shared_ptr<const SymbolTable> isymbols_;
  std::shared_ptr<const SymbolTable> osymbols_;
  Label failure_label_ = kNoLabel;
};

using StdFst = VectorFst<TropicalWeight>;
using LogFst = VectorFst<LogWeight>;
using ExpectationFst = VectorFst<ExpectationWeight>;

}  // namespace romdec

#endif  // ROMDEC_FST_H_
