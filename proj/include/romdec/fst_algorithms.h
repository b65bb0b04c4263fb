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
// Algorithms over VectorFst: construction helpers, trimming, topological
// ordering, composition with epsilon filtering and failure transitions,
// shortest distance, shortest path and weight-threshold arc pruning.
//
// All lattices built by this library are acyclic; shortest distance and
// shortest path reject cyclic input instead of iterating to convergence.

#ifndef ROMDEC_FST_ALGORITHMS_H_
#define ROMDEC_FST_ALGORITHMS_H_

#include <cstdint>
#include <deque>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "romdec/errors.h"
#include "romdec/fst.h"
#include "romdec/semiring.h"
#include "romdec/symbol_table.h"

namespace romdec {

// Linear acceptor of `seq` with |seq|+1 states and unit weights.
template <class W>
VectorFst<W> ChainAcceptor(std::u32string_view seq,
                           std::shared_ptr<const SymbolTable> table) {
  VectorFst<W> fst;
  fst.ReserveStates(seq.size() + 1);
  StateId prev = fst.AddState();
  fst.SetStart(prev);
  for (size_t i = 0; i < seq.size(); ++i) {
    const Label label = table->Find(seq[i]);
    if (label == kNoLabel) throw UnknownSymbolError(i, seq[i]);
    const StateId next = fst.AddState();
    fst.AddArc(prev, {label, label, W::One(), next});
    prev = next;
  }
  fst.SetFinal(prev, W::One());
  fst.SetInputSymbols(table);
  fst.SetOutputSymbols(table);
  fst.SetSortedFlags(true, true);
  return fst;
}

// Converts every arc and final weight with `fn(const W1&) -> W2`.
template <class W2, class W1, class F>
VectorFst<W2> MapWeights(const VectorFst<W1> &in, F fn) {
  VectorFst<W2> out;
  out.ReserveStates(in.NumStates());
  for (StateId s = 0; s < in.NumStates(); ++s) out.AddState();
  out.SetStart(in.Start());
  for (StateId s = 0; s < in.NumStates(); ++s) {
    if (in.IsFinal(s)) out.SetFinal(s, fn(in.Final(s)));
    out.ReserveArcs(s, in.NumArcs(s));
    for (const auto &arc : in.Arcs(s)) {
      out.AddArc(s, {arc.ilabel, arc.olabel, fn(arc.weight), arc.nextstate});
    }
  }
  out.SetInputSymbols(in.InputSymbols());
  out.SetOutputSymbols(in.OutputSymbols());
  out.SetFailureLabel(in.FailureLabel());
  out.SetSortedFlags(in.InputSorted(), in.OutputSorted());
  return out;
}

// Removes states that do not lie on a start->final path. Surviving states
// keep their relative order. A machine with no successful path becomes the
// empty machine (no states).
template <class W>
VectorFst<W> Connect(VectorFst<W> in) {
  const StateId n = in.NumStates();
  std::vector<char> access(n, 0), coaccess(n, 0);
  if (in.Start() != kNoState) {
    std::vector<StateId> stack = {in.Start()};
    access[in.Start()] = 1;
    while (!stack.empty()) {
      const StateId s = stack.back();
      stack.pop_back();
      for (const auto &arc : in.Arcs(s)) {
        if (!access[arc.nextstate]) {
          access[arc.nextstate] = 1;
          stack.push_back(arc.nextstate);
        }
      }
    }
  }
  std::vector<std::vector<StateId>> reverse(n);
  std::vector<StateId> stack;
  for (StateId s = 0; s < n; ++s) {
    if (!access[s]) continue;
    for (const auto &arc : in.Arcs(s)) reverse[arc.nextstate].push_back(s);
    if (in.IsFinal(s)) {
      coaccess[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[s]) {
      if (!coaccess[p]) {
        coaccess[p] = 1;
        stack.push_back(p);
      }
    }
  }

  VectorFst<W> out;
  out.SetInputSymbols(in.InputSymbols());
  out.SetOutputSymbols(in.OutputSymbols());
  out.SetFailureLabel(in.FailureLabel());
  if (in.Start() == kNoState || !coaccess[in.Start()]) return out;

  std::vector<StateId> remap(n, kNoState);
  for (StateId s = 0; s < n; ++s) {
    if (access[s] && coaccess[s]) remap[s] = out.AddState();
  }
  out.SetStart(remap[in.Start()]);
  for (StateId s = 0; s < n; ++s) {
    const StateId t = remap[s];
    if (t == kNoState) continue;
    if (in.IsFinal(s)) out.SetFinal(t, in.Final(s));
    auto &arcs = in.MutableArcs(s);
    size_t kept = 0;
    for (const auto &arc : arcs) kept += remap[arc.nextstate] != kNoState;
    out.ReserveArcs(t, kept);
    for (auto &arc : arcs) {
      const StateId next = remap[arc.nextstate];
      if (next == kNoState) continue;
      out.AddArc(t, {arc.ilabel, arc.olabel, std::move(arc.weight), next});
    }
  }
  return out;
}

// Kahn's algorithm over all states; nullopt when the machine has a cycle.
template <class W>
std::optional<std::vector<StateId>> TopologicalOrder(const VectorFst<W> &fst) {
  const StateId n = fst.NumStates();
  std::vector<int32_t> indegree(n, 0);
  for (StateId s = 0; s < n; ++s) {
    for (const auto &arc : fst.Arcs(s)) ++indegree[arc.nextstate];
  }
  std::vector<StateId> order;
  order.reserve(n);
  for (StateId s = 0; s < n; ++s) {
    if (indegree[s] == 0) order.push_back(s);
  }
  for (size_t head = 0; head < order.size(); ++head) {
    for (const auto &arc : fst.Arcs(order[head])) {
      if (--indegree[arc.nextstate] == 0) order.push_back(arc.nextstate);
    }
  }
  if (static_cast<StateId>(order.size()) != n) return std::nullopt;
  return order;
}

template <class W>
bool IsAcyclic(const VectorFst<W> &fst) {
  return TopologicalOrder(fst).has_value();
}

template <class W>
std::vector<StateId> RequireTopologicalOrder(const VectorFst<W> &fst) {
  auto order = TopologicalOrder(fst);
  if (!order) throw FstError("cycle detected in lattice");
  return *std::move(order);
}

template <class W>
struct ShortestDistanceResult {
  std::vector<W> distance;  // forward weight of every state
  W total = W::Zero();      // plus over finals of distance * final
};

// Forward shortest distance from the start state, in topological order.
template <class W>
ShortestDistanceResult<W> ShortestDistance(const VectorFst<W> &fst) {
  ShortestDistanceResult<W> result;
  result.distance.assign(fst.NumStates(), W::Zero());
  if (fst.Start() == kNoState) return result;
  const auto order = RequireTopologicalOrder(fst);
  result.distance[fst.Start()] = W::One();
  for (StateId s : order) {
    const W &ds = result.distance[s];
    if (ds.IsZero()) continue;
    for (const auto &arc : fst.Arcs(s)) {
      W &dt = result.distance[arc.nextstate];
      dt = Plus(dt, Times(ds, arc.weight));
    }
    if (fst.IsFinal(s)) {
      result.total = Plus(result.total, Times(ds, fst.Final(s)));
    }
  }
  return result;
}

// Backward distance: for every state, plus over paths to a final state.
template <class W>
std::vector<W> BackwardDistance(const VectorFst<W> &fst,
                                const std::vector<StateId> &order) {
  std::vector<W> beta(fst.NumStates(), W::Zero());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const StateId s = *it;
    W acc = fst.Final(s);
    for (const auto &arc : fst.Arcs(s)) {
      acc = Plus(acc, Times(arc.weight, beta[arc.nextstate]));
    }
    beta[s] = std::move(acc);
  }
  return beta;
}

template <class W>
struct Path {
  std::vector<StateId> states;  // states[i] is the source of arcs[i]
  std::vector<Arc<W>> arcs;
  TropicalWeight weight = TropicalWeight::Zero();
};

// Minimum-weight successful path under the natural (min) order of the
// weights' values. Ties go to the path whose (state id, arc index) sequence
// is lexicographically smallest; stopping at a final state precedes any
// continuation. Returns nullopt when no successful path exists.
template <class W>
std::optional<Path<W>> ShortestPath(const VectorFst<W> &fst) {
  if (fst.Start() == kNoState) return std::nullopt;
  const auto order = RequireTopologicalOrder(fst);
  const StateId n = fst.NumStates();
  std::vector<double> best(n, kInfinity);
  std::vector<int32_t> choice(n, -1);  // -1 = stop here
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const StateId s = *it;
    double b = fst.Final(s).Value();
    int32_t c = -1;
    const auto arcs = fst.Arcs(s);
    for (size_t i = 0; i < arcs.size(); ++i) {
      const double cand = arcs[i].weight.Value() + best[arcs[i].nextstate];
      if (cand < b) {
        b = cand;
        c = static_cast<int32_t>(i);
      }
    }
    best[s] = b;
    choice[s] = c;
  }
  if (best[fst.Start()] == kInfinity) return std::nullopt;
  Path<W> path;
  path.weight = TropicalWeight(best[fst.Start()]);
  StateId s = fst.Start();
  while (choice[s] != -1) {
    const auto &arc = fst.Arcs(s)[choice[s]];
    path.states.push_back(s);
    path.arcs.push_back(arc);
    s = arc.nextstate;
  }
  return path;
}

// Removes arcs whose value (negative log weight) exceeds `threshold`, then
// trims. For every state and input label, if all of that label's
// non-epsilon (substitution) arcs would go, the lowest-weight one is kept so
// that no source symbol loses its whole substitution family.
template <class W>
VectorFst<W> PruneArcs(const VectorFst<W> &in, double threshold) {
  VectorFst<W> out;
  out.ReserveStates(in.NumStates());
  for (StateId s = 0; s < in.NumStates(); ++s) out.AddState();
  out.SetStart(in.Start());
  out.SetInputSymbols(in.InputSymbols());
  out.SetOutputSymbols(in.OutputSymbols());
  out.SetFailureLabel(in.FailureLabel());
  for (StateId s = 0; s < in.NumStates(); ++s) {
    if (in.IsFinal(s)) out.SetFinal(s, in.Final(s));
    const auto arcs = in.Arcs(s);
    // Best surviving-or-not substitution arc per input label.
    std::unordered_map<Label, size_t> best_sub;
    std::unordered_map<Label, bool> family_kept;
    for (size_t i = 0; i < arcs.size(); ++i) {
      const auto &arc = arcs[i];
      if (arc.ilabel == kEpsilon || arc.olabel == kEpsilon) continue;
      auto it = best_sub.find(arc.ilabel);
      if (it == best_sub.end() ||
          arc.weight.Value() < arcs[it->second].weight.Value()) {
        best_sub[arc.ilabel] = i;
      }
      if (arc.weight.Value() <= threshold) family_kept[arc.ilabel] = true;
    }
    for (size_t i = 0; i < arcs.size(); ++i) {
      const auto &arc = arcs[i];
      bool keep = arc.weight.Value() <= threshold;
      if (!keep && arc.ilabel != kEpsilon && arc.olabel != kEpsilon &&
          !family_kept[arc.ilabel] && best_sub[arc.ilabel] == i) {
        keep = true;
      }
      if (keep) out.AddArc(s, arc);
    }
  }
  return Connect(std::move(out));
}

namespace internal {

// Index of a state's arcs sorted by one side's label.
template <class W>
class LabelIndex {
 public:
  // Machines already sorted on the matched side are searched in place;
  // others get a per-state permutation.
  LabelIndex(const VectorFst<W> &fst, bool by_output)
      : fst_(fst),
        by_output_(by_output),
        sorted_(by_output ? fst.OutputSorted() : fst.InputSorted()) {
    if (sorted_) return;
    index_.resize(fst.NumStates());
    for (StateId s = 0; s < fst.NumStates(); ++s) {
      auto &idx = index_[s];
      idx.resize(fst.NumArcs(s));
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int32_t>(i);
      const auto arcs = fst.Arcs(s);
      std::stable_sort(idx.begin(), idx.end(), [&](int32_t x, int32_t y) {
        return LabelOf(arcs[x]) < LabelOf(arcs[y]);
      });
    }
  }

  // Positions [first, last) of the arcs in state `s` carrying `label`, in
  // arc-index order; Position(s, k) maps the k-th to an arc index.
  std::pair<size_t, size_t> Find(StateId s, Label label) const {
    const auto arcs = fst_.Arcs(s);
    if (sorted_) {
      auto lo = std::lower_bound(
          arcs.begin(), arcs.end(), label,
          [&](const Arc<W> &a, Label l) { return LabelOf(a) < l; });
      auto hi = std::upper_bound(
          lo, arcs.end(), label,
          [&](Label l, const Arc<W> &a) { return l < LabelOf(a); });
      return {static_cast<size_t>(lo - arcs.begin()),
              static_cast<size_t>(hi - arcs.begin())};
    }
    const auto &idx = index_[s];
    auto lo = std::lower_bound(
        idx.begin(), idx.end(), label,
        [&](int32_t i, Label l) { return LabelOf(arcs[i]) < l; });
    auto hi = std::upper_bound(
        lo, idx.end(), label,
        [&](Label l, int32_t i) { return l < LabelOf(arcs[i]); });
    return {static_cast<size_t>(lo - idx.begin()),
            static_cast<size_t>(hi - idx.begin())};
  }

  const Arc<W> &At(StateId s, size_t k) const {
    return fst_.Arcs(s)[sorted_ ? k : index_[s][k]];
  }

 private:
  Label LabelOf(const Arc<W> &arc) const {
    return by_output_ ? arc.olabel : arc.ilabel;
  }

  const VectorFst<W> &fst_;
  bool by_output_;
  bool sorted_;
  std::vector<std::vector<int32_t>> index_;
};

// Checks the shape under which failure transitions are supported: the
// failure side must be deterministic on the matched label and free of
// epsilons on that side.
template <class W>
void CheckFailureShape(const VectorFst<W> &fst, bool on_output,
                       const char *which) {
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    std::vector<Label> labels;
    for (const auto &arc : fst.Arcs(s)) {
      const Label l = on_output ? arc.olabel : arc.ilabel;
      if (l == kEpsilon) {
        throw FstError(std::string("compose: failure-label machine (") +
                       which + ") has epsilons on the matched side");
      }
      labels.push_back(l);
    }
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
      throw FstError(std::string("compose: failure-label machine (") + which +
                     ") is not deterministic on the matched side");
    }
  }
}

struct ComposeState {
  StateId a;
  StateId b;
  int8_t filter;
  bool operator==(const ComposeState &o) const {
    return a == o.a && b == o.b && filter == o.filter;
  }
};

struct ComposeStateHash {
  size_t operator()(const ComposeState &s) const {
    // splitmix64 finalizer over the packed key.
    uint64_t h = (static_cast<uint64_t>(static_cast<uint32_t>(s.a)) << 32 |
                  static_cast<uint32_t>(s.b)) +
                 static_cast<uint64_t>(static_cast<uint8_t>(s.filter)) *
                     0x9E3779B97F4A7C15ull;
    h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull;
    h = (h ^ (h >> 27)) * 0x94D049BB133111EBull;
    return static_cast<size_t>(h ^ (h >> 31));
  }
};

}  // namespace internal

// Composition a o b. Epsilons are handled with the three-state filter
// (0: free, 1: after a-only epsilon move, 2: after b-only epsilon move),
// which admits exactly one composed path per pair of matching paths.
//
// Failure labels are supported on one operand at a time: on a's output side
// or on b's input side. That machine must be deterministic and
// epsilon-free on the matched side; its failure arc is followed only when
// no arc matches the current symbol, and its final weight falls back along
// failure arcs when zero. The result is trimmed.
template <class W>
VectorFst<W> Compose(const VectorFst<W> &a, const VectorFst<W> &b) {
  if (a.OutputSymbols() && b.InputSymbols() &&
      a.OutputSymbols() != b.InputSymbols() &&
      !(*a.OutputSymbols() == *b.InputSymbols())) {
    throw FstError("compose: output symbols of the left machine differ from "
                   "input symbols of the right machine");
  }
  const Label phi_a = a.FailureLabel();
  const Label phi_b = b.FailureLabel();
  if (phi_a != kNoLabel && phi_b != kNoLabel) {
    throw FstError("compose: failure labels on both operands not supported");
  }
  if (phi_a != kNoLabel) internal::CheckFailureShape(a, true, "left");
  if (phi_b != kNoLabel) internal::CheckFailureShape(b, false, "right");

  VectorFst<W> out;
  out.SetInputSymbols(a.InputSymbols());
  out.SetOutputSymbols(b.OutputSymbols());
  if (a.Start() == kNoState || b.Start() == kNoState) return out;

  // a is only searched when it carries failure arcs.
  std::optional<internal::LabelIndex<W>> a_index;
  if (phi_a != kNoLabel) a_index.emplace(a, /*by_output=*/true);
  const internal::LabelIndex<W> b_index(b, /*by_output=*/false);

  // Follows failure arcs from `s` until an arc with `label` is found.
  // Returns the arc and the accumulated failure weight.
  auto failure_walk = [](const VectorFst<W> &fst,
                         const internal::LabelIndex<W> &index, Label phi,
                         StateId s, Label label)
      -> std::optional<std::pair<const Arc<W> *, W>> {
    W acc = W::One();
    for (StateId steps = 0; steps <= fst.NumStates(); ++steps) {
      auto [lo, hi] = index.Find(s, label);
      if (lo != hi) return std::make_pair(&index.At(s, lo), acc);
      auto [plo, phi_hi] = index.Find(s, phi);
      if (plo == phi_hi) return std::nullopt;
      const auto &back = index.At(s, plo);
      acc = Times(acc, back.weight);
      s = back.nextstate;
    }
    throw FstError("compose: failure-arc cycle");
  };
  // Walk results are memoized per (state, label) when the table is small.
  constexpr size_t kMaxMemo = size_t{1} << 20;
  Label max_label = 0;
  auto scan_labels = [&max_label](const VectorFst<W> &fst, bool output) {
    for (StateId s = 0; s < fst.NumStates(); ++s) {
      for (const auto &arc : fst.Arcs(s)) {
        max_label = std::max(max_label, output ? arc.olabel : arc.ilabel);
      }
    }
  };
  const VectorFst<W> *failing = phi_a != kNoLabel ? &a
                                : phi_b != kNoLabel ? &b
                                                    : nullptr;
  size_t memo_width = 0;
  std::vector<int8_t> memo_state;  // 0 unknown, 1 found, 2 none
  std::vector<std::pair<const Arc<W> *, W>> memo;
  if (failing != nullptr) {
    scan_labels(a, true);
    scan_labels(b, false);
    memo_width = static_cast<size_t>(max_label) + 1;
    const size_t cells = static_cast<size_t>(failing->NumStates()) * memo_width;
    if (cells <= kMaxMemo) {
      memo_state.assign(cells, 0);
      memo.resize(cells, {nullptr, W::Zero()});
    }
  }
  auto failure_find = [&](const VectorFst<W> &fst,
                          const internal::LabelIndex<W> &index, Label phi,
                          StateId s, Label label)
      -> std::optional<std::pair<const Arc<W> *, W>> {
    if (memo_state.empty() || label < 0 ||
        static_cast<size_t>(label) >= memo_width) {
      return failure_walk(fst, index, phi, s, label);
    }
    const size_t cell = static_cast<size_t>(s) * memo_width + label;
    if (memo_state[cell] == 0) {
      auto found = failure_walk(fst, index, phi, s, label);
      memo_state[cell] = found ? 1 : 2;
      if (found) memo[cell] = *found;
    }
    if (memo_state[cell] == 2) return std::nullopt;
    return memo[cell];
  };
  auto failure_final = [](const VectorFst<W> &fst, Label phi, StateId s) {
    W acc = W::One();
    for (StateId steps = 0; steps <= fst.NumStates(); ++steps) {
      if (fst.IsFinal(s)) return Times(acc, fst.Final(s));
      const Arc<W> *back = nullptr;
      for (const auto &arc : fst.Arcs(s)) {
        if (arc.ilabel == phi || arc.olabel == phi) back = &arc;
      }
      if (back == nullptr) return W::Zero();
      acc = Times(acc, back->weight);
      s = back->nextstate;
    }
    throw FstError("compose: failure-arc cycle");
  };

  // Pair ids live in a dense table when the product is small enough.
  constexpr size_t kMaxDense = size_t{1} << 24;
  const size_t dense_size = static_cast<size_t>(a.NumStates()) *
                            static_cast<size_t>(b.NumStates()) * 3;
  std::vector<StateId> dense;
  if (dense_size <= kMaxDense) dense.assign(dense_size, kNoState);
  std::unordered_map<internal::ComposeState, StateId,
                     internal::ComposeStateHash>
      ids;
  std::deque<std::pair<internal::ComposeState, StateId>> queue;
  auto state_id = [&](StateId sa, StateId sb, int8_t f) {
    const internal::ComposeState key{sa, sb, f};
    StateId *slot;
    if (!dense.empty()) {
      slot = &dense[(static_cast<size_t>(sa) * b.NumStates() + sb) * 3 + f];
    } else {
      slot = &ids.try_emplace(key, kNoState).first->second;
    }
    if (*slot == kNoState) {
      *slot = out.AddState();
      queue.emplace_back(key, *slot);
    }
    return *slot;
  };

  // Arcs of the state being expanded, moved out in one allocation.
  std::vector<Arc<W>> buf;
  auto flush = [&](StateId id) {
    auto &arcs = out.MutableArcs(id);
    arcs.reserve(buf.size());
    std::move(buf.begin(), buf.end(), std::back_inserter(arcs));
  };
  out.SetStart(state_id(a.Start(), b.Start(), 0));
  while (!queue.empty()) {
    const auto [cur, id] = queue.front();
    queue.pop_front();
    buf.clear();

    const W fa = phi_a != kNoLabel ? failure_final(a, phi_a, cur.a)
                                   : a.Final(cur.a);
    const W fb = phi_b != kNoLabel ? failure_final(b, phi_b, cur.b)
                                   : b.Final(cur.b);
    if (!fa.IsZero() && !fb.IsZero()) out.SetFinal(id, Times(fa, fb));

    if (phi_a != kNoLabel) {
      // Drive by b's arcs; a has no output epsilons.
      for (const auto &arc_b : b.Arcs(cur.b)) {
        if (arc_b.ilabel == kEpsilon) {
          if (cur.filter == 1) continue;
          const StateId next = state_id(cur.a, arc_b.nextstate, 2);
          buf.push_back({kEpsilon, arc_b.olabel, arc_b.weight, next});
          continue;
        }
        auto match = failure_find(a, *a_index, phi_a, cur.a, arc_b.ilabel);
        if (!match) continue;
        const auto &[arc_a, back] = *match;
        const StateId next = state_id(arc_a->nextstate, arc_b.nextstate, 0);
        buf.push_back({arc_a->ilabel, arc_b.olabel,
                       Times(Times(back, arc_a->weight), arc_b.weight),
                       next});
      }
      flush(id);
      continue;
    }

    for (const auto &arc_a : a.Arcs(cur.a)) {
      if (arc_a.olabel == kEpsilon) {
        if (cur.filter != 2) {
          const StateId next = state_id(arc_a.nextstate, cur.b, 1);
          buf.push_back({arc_a.ilabel, kEpsilon, arc_a.weight, next});
        }
        if (cur.filter == 0 && phi_b == kNoLabel) {
          auto [lo, hi] = b_index.Find(cur.b, kEpsilon);
          for (size_t k = lo; k != hi; ++k) {
            const auto &arc_b = b_index.At(cur.b, k);
            const StateId next =
                state_id(arc_a.nextstate, arc_b.nextstate, 0);
            buf.push_back({arc_a.ilabel, arc_b.olabel,
                           Times(arc_a.weight, arc_b.weight), next});
          }
        }
        continue;
      }
      if (phi_b != kNoLabel) {
        auto match = failure_find(b, b_index, phi_b, cur.b, arc_a.olabel);
        if (!match) continue;
        const auto &[arc_b, back] = *match;
        const StateId next = state_id(arc_a.nextstate, arc_b->nextstate, 0);
        buf.push_back({arc_a.ilabel, arc_b->olabel,
                       Times(arc_a.weight, Times(back, arc_b->weight)),
                       next});
        continue;
      }
      auto [lo, hi] = b_index.Find(cur.b, arc_a.olabel);
      for (size_t k = lo; k != hi; ++k) {
        const auto &arc_b = b_index.At(cur.b, k);
        const StateId next = state_id(arc_a.nextstate, arc_b.nextstate, 0);
        buf.push_back({arc_a.ilabel, arc_b.olabel,
                       Times(arc_a.weight, arc_b.weight), next});
      }
    }
    if (phi_b == kNoLabel && cur.filter != 1) {
      auto [lo, hi] = b_index.Find(cur.b, kEpsilon);
      for (size_t k = lo; k != hi; ++k) {
        const auto &arc_b = b_index.At(cur.b, k);
        const StateId next = state_id(cur.a, arc_b.nextstate, 2);
        buf.push_back({kEpsilon, arc_b.olabel, arc_b.weight, next});
      }
    }
    flush(id);
  }
  return Connect(std::move(out));
}

}  // namespace romdec

#endif  // ROMDEC_FST_ALGORITHMS_H_
