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

#include "romdec/decode.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <thread>
#include <unordered_map>

#include "romdec/errors.h"
#include "romdec/fst_algorithms.h"

namespace romdec {

Decoded Decode(const StdFst &lm, const StdFst &emission,
               const EditOpTable &table, std::u32string_view latin) {
  Decoded out;
  StdFst lattice;
  try {
    const StdFst observed =
        ChainAcceptor<TropicalWeight>(latin, table.latin_symbols());
    lattice = Compose(lm, Compose(emission, observed));
  } catch (const UnknownSymbolError &e) {
    out.error = e.what();
    return out;
  }
  auto path = ShortestPath(lattice);
  if (!path) {
    out.error = "no path through the decoding lattice";
    return out;
  }
  const SymbolTable &source = *table.source_symbols();
  for (const auto &arc : path->arcs) {
    const int32_t id = table.Find(arc.ilabel, arc.olabel);
    if (id < 0) throw FstError("decoding path carries an unknown edit op");
    out.ops.push_back(id);
    if (arc.ilabel != kEpsilon) out.source.push_back(source.Symbol(arc.ilabel));
  }
  out.score = path->weight.Value();
  out.ok = true;
  return out;
}

bool ApplyEdits(std::u32string_view source, const std::vector<int32_t> &ops,
                const EditOpTable &table, std::u32string *latin) {
  latin->clear();
  size_t pos = 0;
  for (int32_t id : ops) {
    const EditOp &op = table.op(id);
    if (op.source != kEpsilon) {
      if (pos >= source.size() ||
          table.source_symbols()->Symbol(op.source) != source[pos]) {
        return false;
      }
      ++pos;
    }
    if (op.target != kEpsilon) {
      latin->push_back(table.latin_symbols()->Symbol(op.target));
    }
  }
  return pos == source.size();
}

Decoder::Decoder(const NgramModel &lm, const EmissionParams &params,
                 int delay)
    : lm_(MapWeights<TropicalWeight>(
          ToWfsa(lm, params.table().source_symbols()),
          [](LogWeight w) { return TropicalWeight(w.Value()); })),
      emission_(BuildEmissionTropical(params, delay)),
      table_(params.shared_table()) {
  // Dense LM transitions with failure arcs resolved.
  num_labels_ = static_cast<Label>(table_->source_symbols()->NumSymbols()) + 1;
  const Label phi = lm_.FailureLabel();
  const StateId n = lm_.NumStates();
  step_.assign(static_cast<size_t>(n) * num_labels_, {kInfinity, kNoState});
  stop_.assign(n, kInfinity);
  for (StateId s = 0; s < n; ++s) {
    for (Label c = 1; c < num_labels_; ++c) {
      double acc = 0.0;
      for (StateId cur = s, steps = 0; cur != kNoState && steps <= n; ++steps) {
        StateId back = kNoState;
        double back_cost = 0.0;
        bool found = false;
        for (const auto &arc : lm_.Arcs(cur)) {
          if (arc.ilabel == c) {
            step_[static_cast<size_t>(s) * num_labels_ + c] = {
                acc + arc.weight.Value(), arc.nextstate};
            found = true;
            break;
          }
          if (arc.ilabel == phi) {
            back = arc.nextstate;
            back_cost = arc.weight.Value();
          }
        }
        if (found) break;
        acc += back_cost;
        cur = back;
      }
    }
    double acc = 0.0;
    for (StateId cur = s, steps = 0; cur != kNoState && steps <= n; ++steps) {
      if (lm_.IsFinal(cur)) {
        stop_[s] = acc + lm_.Final(cur).Value();
        break;
      }
      StateId back = kNoState;
      for (const auto &arc : lm_.Arcs(cur)) {
        if (arc.ilabel == phi) {
          back = arc.nextstate;
          acc += arc.weight.Value();
        }
      }
      cur = back;
    }
  }
}

Decoded Decoder::operator()(std::u32string_view latin) const {
  Decoded out;
  StdFst channel;
  try {
    channel = Compose(emission_,
                      ChainAcceptor<TropicalWeight>(latin, table_->latin_symbols()));
  } catch (const UnknownSymbolError &e) {
    out.error = e.what();
    return out;
  }
  if (channel.Start() == kNoState || lm_.Start() == kNoState) {
    out.error = "no path through the decoding lattice";
    return out;
  }
  // Best-first search over (LM state, channel state) pairs. Every composed
  // step costs -log of a probability, so the first time the goal is popped
  // its cost is optimal.
  struct Node {
    StateId lm;
    StateId ch;
    int64_t parent;
    Label ilabel;
    Label olabel;
  };
  std::vector<Node> nodes;
  std::vector<double> cost;
  std::vector<bool> done;
  std::unordered_map<uint64_t, int64_t> index;
  using Entry = std::pair<double, int64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  const int64_t kGoal = -2;
  double goal_cost = kInfinity;
  int64_t goal_parent = -1;
  auto relax = [&](StateId lm, StateId ch, double c, int64_t parent,
                   Label il, Label ol) {
    const uint64_t key = (static_cast<uint64_t>(static_cast<uint32_t>(lm)) << 32) |
                         static_cast<uint32_t>(ch);
    auto [it, inserted] = index.try_emplace(key, static_cast<int64_t>(nodes.size()));
    if (inserted) {
      nodes.push_back({lm, ch, parent, il, ol});
      cost.push_back(c);
      done.push_back(false);
    } else if (done[it->second] || c >= cost[it->second]) {
      return;
    } else {
      nodes[it->second] = {lm, ch, parent, il, ol};
      cost[it->second] = c;
    }
    queue.emplace(c, it->second);
  };
  relax(lm_.Start(), channel.Start(), 0.0, -1, kNoLabel, kNoLabel);
  while (!queue.empty()) {
    const auto [c, id] = queue.top();
    queue.pop();
    if (id == kGoal) break;
    if (done[id] || c > cost[id]) continue;
    done[id] = true;
    const StateId lm = nodes[id].lm, ch = nodes[id].ch;
    if (channel.IsFinal(ch) && stop_[lm] < kInfinity) {
      const double g = c + stop_[lm] + channel.Final(ch).Value();
      if (g < goal_cost) {
        goal_cost = g;
        goal_parent = id;
        queue.emplace(g, kGoal);
      }
    }
    for (const auto &arc : channel.Arcs(ch)) {
      if (arc.ilabel == kEpsilon) {
        relax(lm, arc.nextstate, c + arc.weight.Value(), id, arc.ilabel, arc.olabel);
        continue;
      }
      const auto &[w, next] = step_[static_cast<size_t>(lm) * num_labels_ + arc.ilabel];
      if (next == kNoState) continue;
      relax(next, arc.nextstate, c + w + arc.weight.Value(), id, arc.ilabel,
            arc.olabel);
    }
  }
  if (goal_parent < 0) {
    out.error = "no path through the decoding lattice";
    return out;
  }
  const SymbolTable &source = *table_->source_symbols();
  for (int64_t id = goal_parent; nodes[id].parent >= 0; id = nodes[id].parent) {
    const int32_t op = table_->Find(nodes[id].ilabel, nodes[id].olabel);
    if (op < 0) throw FstError("decoding path carries an unknown edit op");
    out.ops.push_back(op);
    if (nodes[id].ilabel != kEpsilon) {
      out.source.push_back(source.Symbol(nodes[id].ilabel));
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  std::reverse(out.source.begin(), out.source.end());
  out.score = goal_cost;
  out.ok = true;
  return out;
}

std::vector<Decoded> Decoder::DecodeAll(
    const std::vector<std::u32string> &latin, int workers) const {
  std::vector<Decoded> out(latin.size());
  auto run = [&](size_t first, size_t stride) {
    for (size_t i = first; i < latin.size(); i += stride) {
      out[i] = (*this)(latin[i]);
    }
  };
  if (workers <= 1) {
    run(0, 1);
    return out;
  }
  std::vector<std::thread> threads;
  for (int t = 0; t < workers; ++t) threads.emplace_back(run, t, workers);
  for (auto &t : threads) t.join();
  return out;
}

}  // namespace romdec
