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

#include "romdec/channel.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include <glog/logging.h>

#include "romdec/corpus.h"
#include "romdec/errors.h"
#include "romdec/random.h"
#include "romdec/text_util.h"

namespace romdec {
namespace {

bool IsDigit(char32_t c) {
  return (c >= U'0' && c <= U'9') || (c >= 0x660 && c <= 0x669) ||
         (c >= 0x6F0 && c <= 0x6F9);
}

constexpr char kParamsMagic[] = "romdec-params";
constexpr char kDeleteToken[] = "DELETE";
constexpr char kInsertToken[] = "INSERT";
constexpr char kNoneToken[] = "NONE";

}  // namespace

Restrictions Restrictions::Default() {
  Restrictions r;
  r.restricted.push_back(U' ');
  for (char32_t c = 0x21; c < 0x7F; ++c) {
    if (IsCanonicalPunctuation(c)) r.restricted.push_back(c);
  }
  r.restricted.push_back(U'،');
  r.restricted.push_back(U'؟');
  std::sort(r.restricted.begin(), r.restricted.end());
  r.specialized = {{U'؟', U'?'}, {U'،', U','}};
  return r;
}

Restrictions Restrictions::None() {
  Restrictions r;
  r.enabled = false;
  return r;
}

bool Restrictions::IsRestrictedSource(char32_t c) const {
  return enabled && (IsDigit(c) || std::binary_search(restricted.begin(),
                                                      restricted.end(), c));
}

bool Restrictions::IsRestrictedTarget(char32_t c) const {
  return enabled && std::binary_search(restricted.begin(), restricted.end(), c);
}

bool Restrictions::Allows(char32_t source, char32_t target) const {
  if (!IsRestrictedSource(source) && !IsRestrictedTarget(target)) return true;
  if (source == target) return true;
  return std::find(specialized.begin(), specialized.end(),
                   std::make_pair(source, target)) != specialized.end();
}

EditOpTable::EditOpTable(std::shared_ptr<const SymbolTable> source,
                         std::shared_ptr<const SymbolTable> latin,
                         Restrictions restrictions)
    : source_(std::move(source)),
      latin_(std::move(latin)),
      restrictions_(std::move(restrictions)) {
  std::sort(restrictions_.restricted.begin(), restrictions_.restricted.end());
  const Label ns = static_cast<Label>(source_->NumSymbols());
  const Label nl = static_cast<Label>(latin_->NumSymbols());
  families_.resize(ns + 1);
  index_.assign(ns + 1, std::vector<int32_t>(nl + 1, -1));
  auto add = [this](EditKind kind, Label s, Label t) {
    const int32_t id = static_cast<int32_t>(ops_.size());
    ops_.push_back({kind, s, t});
    index_[s][t] = id;
    return id;
  };
  for (Label s = 1; s <= ns; ++s) {
    for (Label t = 1; t <= nl; ++t) {
      if (restrictions_.Allows(source_->Symbol(s), latin_->Symbol(t))) {
        families_[s].push_back(add(EditKind::kSubstitution, s, t));
      }
    }
    families_[s].push_back(add(EditKind::kDeletion, s, kEpsilon));
  }
  for (Label t = 1; t <= nl; ++t) {
    insertions_.push_back(add(EditKind::kInsertion, kEpsilon, t));
  }
  insertions_.push_back(add(EditKind::kNoInsertion, kEpsilon, kEpsilon));
}

int32_t EditOpTable::Find(Label source, Label target) const {
  if (source < 0 || target < 0 || source >= static_cast<Label>(index_.size()) ||
      target >= static_cast<Label>(index_[0].size())) {
    return -1;
  }
  return index_[source][target];
}

int32_t EditOpTable::FindChars(char32_t source, char32_t target) const {
  const Label s = source == 0 ? kEpsilon : source_->Find(source);
  const Label t = target == 0 ? kEpsilon : latin_->Find(target);
  if (s == kNoLabel || t == kNoLabel) return -1;
  return Find(s, t);
}

size_t EditOpTable::NumSubstitutions() const {
  return std::count_if(ops_.begin(), ops_.end(), [](const EditOp &op) {
    return op.kind == EditKind::kSubstitution;
  });
}

std::string EditOpTable::Describe(int32_t id) const {
  const EditOp &op = ops_[id];
  std::string s = op.source == kEpsilon ? std::string(kInsertToken)
                                        : SymbolToken(source_->Symbol(op.source));
  s += " -> ";
  if (op.kind == EditKind::kNoInsertion) return s + kNoneToken;
  s += op.target == kEpsilon ? std::string(kDeleteToken)
                             : SymbolToken(latin_->Symbol(op.target));
  return s;
}

EmissionParams::EmissionParams(std::shared_ptr<const EditOpTable> table)
    : table_(std::move(table)),
      prob_(table_->size(), 0.0),
      active_(table_->size(), 1) {}

double EmissionParams::NegLogProb(int32_t id) const {
  return prob_[id] > 0.0 ? -std::log(prob_[id]) : kInfinity;
}

size_t EmissionParams::NumActive() const {
  return std::count(active_.begin(), active_.end(), 1);
}

bool EmissionParams::Usable(int32_t id) const {
  if (!active_[id] || !(prob_[id] > 0.0)) return false;
  const EditKind kind = table_->op(id).kind;
  return insertions_enabled_ ||
         (kind != EditKind::kInsertion && kind != EditKind::kNoInsertion);
}

void EmissionParams::FreezeDeletions(double p) {
  frozen_deletion_ = p;
  Normalize();
}

double EmissionParams::FamilySum(const std::vector<int32_t> &family) const {
  double sum = 0.0;
  for (int32_t id : family) {
    if (active_[id]) sum += prob_[id];
  }
  return sum;
}

void EmissionParams::NormalizeFamily(const std::vector<int32_t> &family,
                                     bool has_deletion) {
  double budget = 1.0;
  size_t end = family.size();
  if (has_deletion && frozen_deletion_) {
    const int32_t del = family.back();
    prob_[del] = *frozen_deletion_;
    active_[del] = 1;
    budget -= *frozen_deletion_;
    --end;
  }
  double sum = 0.0;
  for (size_t i = 0; i < end; ++i) {
    if (active_[family[i]]) sum += prob_[family[i]];
  }
  if (!(sum > 0.0)) return;
  for (size_t i = 0; i < end; ++i) {
    if (active_[family[i]]) prob_[family[i]] *= budget / sum;
  }
}

void EmissionParams::Normalize() {
  const Label ns = static_cast<Label>(table_->source_symbols()->NumSymbols());
  for (Label s = 1; s <= ns; ++s) NormalizeFamily(table_->Family(s), true);
  NormalizeFamily(table_->InsertionFamily(), false);
}

size_t EmissionParams::Prune(double threshold) {
  size_t pruned = 0;
  auto prune = [&](int32_t id) {
    if (active_[id] && NegLogProb(id) > threshold) {
      active_[id] = 0;
      ++pruned;
    }
  };
  const Label ns = static_cast<Label>(table_->source_symbols()->NumSymbols());
  for (Label s = 1; s <= ns; ++s) {
    const auto &family = table_->Family(s);
    int32_t best = -1;
    for (int32_t id : family) {
      if (table_->op(id).kind != EditKind::kSubstitution || !active_[id]) {
        continue;
      }
      if (best < 0 || prob_[id] > prob_[best]) best = id;
    }
    for (int32_t id : family) {
      if (id == best) continue;
      if (table_->op(id).kind == EditKind::kDeletion && frozen_deletion_) {
        continue;
      }
      prune(id);
    }
  }
  if (insertions_enabled_) {
    for (int32_t id : table_->InsertionFamily()) {
      if (id != table_->NoInsertionOp()) prune(id);
    }
  }
  return pruned;
}

namespace {

std::string JoinTokens(std::u32string_view symbols) {
  std::string out;
  for (char32_t c : symbols) {
    if (!out.empty()) out += ' ';
    out += SymbolToken(c);
  }
  return out;
}

std::u32string ParseTokens(std::string_view text, const std::string &source,
                           int line) {
  std::u32string out;
  for (const auto &tok : Split(text, ' ')) {
    if (tok.empty()) continue;
    char32_t c = ParseSymbolToken(tok);
    if (c == 0) throw FormatError(source, line, "bad symbol \"" + tok + "\"");
    out.push_back(c);
  }
  return out;
}

}  // namespace

void EmissionParams::Write(std::ostream &os) const {
  const EditOpTable &t = *table_;
  const Restrictions &r = t.restrictions();
  os << kParamsMagic << "\t1\n";
  os << "source\t" << JoinTokens(t.source_symbols()->Alphabet()) << '\n';
  os << "latin\t" << JoinTokens(t.latin_symbols()->Alphabet()) << '\n';
  os << "restrictions\t" << (r.enabled ? 1 : 0) << '\n';
  os << "restricted\t" << JoinTokens(r.restricted) << '\n';
  for (const auto &[o, l] : r.specialized) {
    os << "specialized\t" << SymbolToken(o) << '\t' << SymbolToken(l) << '\n';
  }
  os << "insertions\t" << (insertions_enabled_ ? 1 : 0) << '\n';
  os << "frozen_deletion\t"
     << (frozen_deletion_ ? FormatDouble(*frozen_deletion_) : "none") << '\n';
  for (int32_t id = 0; id < static_cast<int32_t>(t.size()); ++id) {
    if (!active_[id]) continue;
    const EditOp &op = t.op(id);
    os << (op.source == kEpsilon ? kInsertToken
                                 : SymbolToken(t.source_symbols()->Symbol(op.source)))
       << '\t';
    if (op.kind == EditKind::kNoInsertion) {
      os << kNoneToken;
    } else {
      os << (op.target == kEpsilon ? kDeleteToken
                                   : SymbolToken(t.latin_symbols()->Symbol(op.target)));
    }
    os << '\t' << FormatDouble(prob_[id]) << '\n';
  }
}

EmissionParams EmissionParams::Read(std::istream &is,
                                    const std::string &source) {
  std::string line;
  int lineno = 0;
  auto next = [&](const char *key) -> std::vector<std::string> {
    if (!std::getline(is, line)) {
      throw FormatError(source, lineno + 1,
                        std::string("missing \"") + key + "\" line");
    }
    ++lineno;
    auto fields = Split(line, '\t');
    if (fields[0] != key) {
      throw FormatError(source, lineno,
                        std::string("expected \"") + key + "\" line");
    }
    return fields;
  };
  auto header = next(kParamsMagic);
  if (header.size() != 2 || header[1] != "1") {
    throw FormatError(source, lineno, "unsupported params version");
  }
  auto f = next("source");
  auto source_symbols = std::make_shared<SymbolTable>(
      SymbolTable::FromAlphabet(ParseTokens(f.size() > 1 ? f[1] : "", source, lineno)));
  f = next("latin");
  auto latin_symbols = std::make_shared<SymbolTable>(
      SymbolTable::FromAlphabet(ParseTokens(f.size() > 1 ? f[1] : "", source, lineno)));
  Restrictions r;
  f = next("restrictions");
  r.enabled = f.size() > 1 && f[1] == "1";
  f = next("restricted");
  r.restricted = ParseTokens(f.size() > 1 ? f[1] : "", source, lineno);
  bool insertions = true;
  std::optional<double> frozen;
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = Split(line, '\t');
    if (fields[0] == "specialized" && fields.size() == 3) {
      r.specialized.emplace_back(ParseSymbolToken(fields[1]),
                                 ParseSymbolToken(fields[2]));
    } else if (fields[0] == "insertions" && fields.size() == 2) {
      insertions = fields[1] == "1";
      break;
    } else {
      throw FormatError(source, lineno, "expected specialized or insertions");
    }
  }
  f = next("frozen_deletion");
  if (f.size() != 2) throw FormatError(source, lineno, "bad frozen_deletion");
  if (f[1] != "none") {
    double p = 0.0;
    if (!ParseDouble(f[1], &p)) {
      throw FormatError(source, lineno, "bad frozen_deletion");
    }
    frozen = p;
  }
  auto table = std::make_shared<const EditOpTable>(source_symbols,
                                                   latin_symbols, r);
  EmissionParams params(table);
  std::fill(params.active_.begin(), params.active_.end(), 0);
  params.insertions_enabled_ = insertions;
  params.frozen_deletion_ = frozen;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = Split(line, '\t');
    double p = 0.0;
    if (fields.size() != 3 || !ParseDouble(fields[2], &p) || p < 0.0) {
      throw FormatError(source, lineno, "expected \"source<TAB>target<TAB>prob\"");
    }
    Label s = kEpsilon, t = kEpsilon;
    if (fields[0] != kInsertToken) {
      s = source_symbols->Find(ParseSymbolToken(fields[0]));
    }
    if (fields[1] != kDeleteToken && fields[1] != kNoneToken) {
      t = latin_symbols->Find(ParseSymbolToken(fields[1]));
    }
    int32_t id = (s == kNoLabel || t == kNoLabel) ? -1 : table->Find(s, t);
    // NONE only pairs with INSERT; DELETE never does.
    if ((fields[1] == kNoneToken) != (s == kEpsilon && t == kEpsilon)) id = -1;
    if (id < 0) throw FormatError(source, lineno, "unknown edit operation");
    params.prob_[id] = p;
    params.active_[id] = 1;
  }
  return params;
}

double PriorSpec::Total() const {
  double total = 0.0;
  for (double a : alpha) total += a;
  return total;
}

PriorSpec UniformPrior(const EditOpTable &table) {
  PriorSpec prior;
  prior.alpha.assign(table.size(), 0.0);
  return prior;
}

PriorSpec LoadPrior(const std::vector<std::string> &files,
                    const EditOpTable &table) {
  PriorSpec prior = UniformPrior(table);
  for (const auto &path : files) {
    const MappingFile file = LoadMappingFile(path);
    prior.provenance.push_back(path);
    std::set<int32_t> pairs;
    for (const auto &e : file.entries) {
      for (char32_t o : e.original) {
        for (char32_t l : e.latin) {
          std::string where = path + ":" + std::to_string(e.line) + ": " +
                              SymbolToken(o) + " -> " + SymbolToken(l);
          if (!table.source_symbols()->Contains(o) ||
              !table.latin_symbols()->Contains(l)) {
            prior.skipped.push_back(where + ": outside the alphabets");
            continue;
          }
          const int32_t id = table.FindChars(o, l);
          if (id < 0) {
            prior.skipped.push_back(where + ": not an allowed substitution");
            continue;
          }
          pairs.insert(id);
        }
      }
    }
    for (int32_t id : pairs) prior.alpha[id] += 1.0;
  }
  if (!prior.skipped.empty()) {
    LOG(INFO) << "prior: skipped " << prior.skipped.size()
              << " pairs outside the alphabets or restrictions";
  }
  return prior;
}

EmissionParams InitParams(std::shared_ptr<const EditOpTable> table,
                          const InitOptions &options) {
  EmissionParams params(table);
  Rng rng(options.seed);
  auto fill = [&](const std::vector<int32_t> &family) {
    for (int32_t id : family) {
      params.SetProb(id, 1.0 + options.noise * Uniform01(rng));
    }
  };
  const Label ns = static_cast<Label>(table->source_symbols()->NumSymbols());
  for (Label s = 1; s <= ns; ++s) fill(table->Family(s));
  fill(table->InsertionFamily());
  // Even odds between inserting and not: the no-insertion op gets the mass
  // of all insertions together.
  const auto &ins = table->InsertionFamily();
  double inserted = 0.0;
  for (size_t i = 0; i + 1 < ins.size(); ++i) inserted += params.Prob(ins[i]);
  params.SetProb(table->NoInsertionOp(), inserted > 0.0 ? inserted : 1.0);
  params.set_insertions_enabled(options.insertions_enabled);
  if (options.frozen_deletion) {
    params.FreezeDeletions(*options.frozen_deletion);
  } else {
    params.Normalize();
  }
  return params;
}

EmissionParams ApplyRestrictions(const EmissionParams &params,
                                 const Restrictions &restrictions) {
  const EditOpTable &old = params.table();
  auto table = std::make_shared<const EditOpTable>(
      old.source_symbols(), old.latin_symbols(), restrictions);
  EmissionParams out(table);
  for (int32_t id = 0; id < static_cast<int32_t>(table->size()); ++id) {
    const EditOp &op = table->op(id);
    const int32_t old_id = old.Find(op.source, op.target);
    if (old_id >= 0) {
      out.SetProb(id, params.Prob(old_id));
      if (!params.Active(old_id)) out.Deactivate(id);
    }
  }
  out.set_insertions_enabled(params.insertions_enabled());
  if (params.frozen_deletion()) {
    out.FreezeDeletions(*params.frozen_deletion());
  } else {
    out.Normalize();
  }
  return out;
}

LogFst BuildEmissionLog(const EmissionParams &params, int delay) {
  return BuildEmissionFst<LogWeight>(
      params, delay, [](int32_t, int32_t, double nl) { return LogWeight(nl); });
}

StdFst BuildEmissionTropical(const EmissionParams &params, int delay) {
  return BuildEmissionFst<TropicalWeight>(
      params, delay,
      [](int32_t, int32_t, double nl) { return TropicalWeight(nl); });
}

ExpectationFst BuildEmissionExpectation(const EmissionParams &params,
                                        int delay) {
  return BuildEmissionFst<ExpectationWeight>(
      params, delay,
      [](int32_t id, int32_t extra, double nl) {
        return ArcWeightWithBasis(id, extra, nl);
      });
}

}  // namespace romdec
