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

// Emission model: edit operations between the original-script alphabet
// and the Latin alphabet, their conditional probabilities, the Dirichlet
// prior built from mapping files, and the delay-limited emission
// transducer.

#ifndef ROMDEC_CHANNEL_H_
#define ROMDEC_CHANNEL_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "romdec/fst.h"
#include "romdec/semiring.h"
#include "romdec/symbol_table.h"

namespace romdec {

// kNoInsertion is the "stop inserting" outcome of the insertion family; it
// is paid once per consumed source symbol and once at the end.
enum class EditKind { kSubstitution, kDeletion, kInsertion, kNoInsertion };

struct EditOp {
  EditKind kind;
  Label source;  // kEpsilon for insertions
  Label target;  // kEpsilon for deletions
};

// Which substitutions are allowed. Restricted symbols (space and
// punctuation, plus original-side digits as sources) only substitute with
// themselves or a specialized partner; they can always be deleted or
// inserted.
struct Restrictions {
  bool enabled = true;
  std::u32string restricted;  // sorted
  std::vector<std::pair<char32_t, char32_t>> specialized;  // (original, latin)

  // Space plus every canonical punctuation mark, with the Arabic question
  // mark and comma specialized to their ASCII counterparts.
  static Restrictions Default();
  static Restrictions None();

  bool IsRestrictedSource(char32_t c) const;
  bool IsRestrictedTarget(char32_t c) const;
  bool Allows(char32_t source, char32_t target) const;
};

// Dense enumeration of the allowed edit operations. For every source label
// in increasing order: its substitutions by target label, then its
// deletion. The insertions follow, by target label.
class EditOpTable {
 public:
  EditOpTable(std::shared_ptr<const SymbolTable> source,
              std::shared_ptr<const SymbolTable> latin,
              Restrictions restrictions);

  size_t size() const { return ops_.size(); }
  const EditOp &op(int32_t id) const { return ops_[id]; }
  const std::vector<EditOp> &ops() const { return ops_; }

  // Op ids conditioned on `source` (substitutions then deletion).
  const std::vector<int32_t> &Family(Label source) const {
    return families_[source];
  }
  // Insertions by target, then the no-insertion op.
  const std::vector<int32_t> &InsertionFamily() const { return insertions_; }
  int32_t NoInsertionOp() const { return insertions_.back(); }
  int32_t DeletionOp(Label source) const { return families_[source].back(); }
  // Id of a substitution, deletion (target kEpsilon), insertion (source
  // kEpsilon) or the no-insertion op (both kEpsilon); -1 when not allowed.
  int32_t Find(Label source, Label target) const;
  int32_t FindChars(char32_t source, char32_t target) const;

  const std::shared_ptr<const SymbolTable> &source_symbols() const {
    return source_;
  }
  const std::shared_ptr<const SymbolTable> &latin_symbols() const {
    return latin_;
  }
  const Restrictions &restrictions() const { return restrictions_; }
  size_t NumSubstitutions() const;

  std::string Describe(int32_t id) const;

 private:
  std::shared_ptr<const SymbolTable> source_;
  std::shared_ptr<const SymbolTable> latin_;
  Restrictions restrictions_;
  std::vector<EditOp> ops_;
  std::vector<std::vector<int32_t>> families_;  // indexed by source label
  std::vector<int32_t> insertions_;
  // index_[source][target] -> op id or -1.
  std::vector<std::vector<int32_t>> index_;
};

class EmissionParams {
 public:
  explicit EmissionParams(std::shared_ptr<const EditOpTable> table);

  const EditOpTable &table() const { return *table_; }
  const std::shared_ptr<const EditOpTable> &shared_table() const {
    return table_;
  }

  double Prob(int32_t id) const { return prob_[id]; }
  double NegLogProb(int32_t id) const;
  void SetProb(int32_t id, double p) { prob_[id] = p; }
  const std::vector<double> &probs() const { return prob_; }

  bool Active(int32_t id) const { return active_[id] != 0; }
  void Deactivate(int32_t id) { active_[id] = 0; }
  size_t NumActive() const;

  bool insertions_enabled() const { return insertions_enabled_; }
  void set_insertions_enabled(bool on) { insertions_enabled_ = on; }

  // Probability deletions are pinned to, if frozen.
  const std::optional<double> &frozen_deletion() const {
    return frozen_deletion_;
  }
  void FreezeDeletions(double p);
  void UnfreezeDeletions() { frozen_deletion_.reset(); }

  // An op enters the emission machine when active, positive and, for the
  // insertion family, enabled.
  bool Usable(int32_t id) const;

  // Sum over the active members of a family.
  double FamilySum(const std::vector<int32_t> &family) const;
  // Rescales each family over its active members, keeping a frozen
  // deletion at its pinned value.
  void Normalize();
  void NormalizeFamily(const std::vector<int32_t> &family, bool has_deletion);

  // Deactivates ops whose -ln p exceeds `threshold`, keeping the most
  // probable substitution of each source and exempting frozen deletions.
  // Returns the number of ops deactivated.
  size_t Prune(double threshold);

  // Text format: a header describing the alphabets and restrictions, then
  // one "source<TAB>target<TAB>prob" line per active op with DELETE and
  // INSERT standing in for the empty side and "INSERT<TAB>NONE" for the
  // no-insertion op.
  void Write(std::ostream &os) const;
  static EmissionParams Read(std::istream &is, const std::string &source);

 private:
  std::shared_ptr<const EditOpTable> table_;
  std::vector<double> prob_;
  std::vector<uint8_t> active_;
  bool insertions_enabled_ = true;
  std::optional<double> frozen_deletion_;
};

struct PriorSpec {
  std::vector<double> alpha;  // per op id; zero off substitutions
  std::vector<std::string> provenance;
  // Pairs that could not be used, as "file:line: reason".
  std::vector<std::string> skipped;

  double Total() const;
};

// Each file contributes one pseudo-count per distinct (original, latin)
// pair it lists; multi-character entries expand to every character pair.
PriorSpec LoadPrior(const std::vector<std::string> &files,
                    const EditOpTable &table);
PriorSpec UniformPrior(const EditOpTable &table);

// Families start uniform, except that the no-insertion op takes half of the
// insertion family so inserting and not inserting start at even odds.
struct InitOptions {
  uint64_t seed = 1;
  // Multiplicative noise amplitude; zero gives exactly uniform families.
  double noise = 0.1;
  bool insertions_enabled = true;
  std::optional<double> frozen_deletion;
};

EmissionParams InitParams(std::shared_ptr<const EditOpTable> table,
                          const InitOptions &options);

// Rebuilds `params` over a table with `restrictions`, copying the
// probabilities of surviving ops and renormalizing.
EmissionParams ApplyRestrictions(const EmissionParams &params,
                                 const Restrictions &restrictions);

// Delay-limited emission transducer with 2d+1 states; state k + d tracks
// delay k (deletions minus insertions). Every state is final. Weights come
// from `weight(op_id, -ln p)`; arcs are sorted by input label.
// `weight(id, extra, neg_log_p)` builds an arc weight for op `id`, with
// `extra` the no-insertion op folded into the same arc (-1 for none).
template <class W, class F>
VectorFst<W> BuildEmissionFst(const EmissionParams &params, int delay,
                              F weight) {
  const EditOpTable &table = params.table();
  const int32_t stop = table.NoInsertionOp();
  const bool paid = params.Usable(stop);
  const double stop_cost = paid ? params.NegLogProb(stop) : 0.0;
  VectorFst<W> fst;
  const int num_states = 2 * delay + 1;
  fst.ReserveStates(num_states);
  for (int s = 0; s < num_states; ++s) {
    fst.AddState();
    fst.SetFinal(s, paid ? weight(stop, -1, stop_cost) : W::One());
  }
  fst.SetStart(delay);
  std::vector<std::pair<int32_t, W>> usable;
  for (int32_t id = 0; id < static_cast<int32_t>(table.size()); ++id) {
    if (id == stop || !params.Usable(id)) continue;
    if (table.op(id).kind == EditKind::kInsertion) {
      usable.emplace_back(id, weight(id, -1, params.NegLogProb(id)));
    } else {
      usable.emplace_back(id, weight(id, paid ? stop : -1,
                                     params.NegLogProb(id) + stop_cost));
    }
  }
  for (int k = -delay; k <= delay; ++k) {
    const StateId s = k + delay;
    for (const auto &[id, w] : usable) {
      const EditOp &op = table.op(id);
      switch (op.kind) {
        case EditKind::kSubstitution:
          fst.AddArc(s, {op.source, op.target, w, s});
          break;
        case EditKind::kDeletion:
          if (k < delay) fst.AddArc(s, {op.source, kEpsilon, w, s + 1});
          break;
        case EditKind::kInsertion:
          if (k > -delay) fst.AddArc(s, {kEpsilon, op.target, w, s - 1});
          break;
        case EditKind::kNoInsertion:
          break;
      }
    }
  }
  fst.SortArcsByInput();
  fst.SetInputSymbols(table.source_symbols());
  fst.SetOutputSymbols(table.latin_symbols());
  return fst;
}

LogFst BuildEmissionLog(const EmissionParams &params, int delay);
StdFst BuildEmissionTropical(const EmissionParams &params, int delay);
// Each arc carries the basis vector of its op id.
ExpectationFst BuildEmissionExpectation(const EmissionParams &params,
                                        int delay);

}  // namespace romdec

#endif  // ROMDEC_CHANNEL_H_
