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

#include "romdec/ngram.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include "romdec/errors.h"
#include "romdec/text_util.h"

namespace romdec {
namespace {

std::string HistoryToText(std::u32string_view h) {
  std::string out;
  for (size_t i = 0; i < h.size(); ++i) {
    if (i) out += ' ';
    out += h[i] == kBos ? std::string("<s>") : SymbolToken(h[i]);
  }
  return out;
}

std::u32string HistoryFromText(std::string_view text) {
  std::u32string h;
  if (text.empty()) return h;
  for (const auto &tok : Split(text, ' ')) {
    h.push_back(tok == "<s>" ? kBos : ParseSymbolToken(tok));
  }
  return h;
}

std::string NextToText(char32_t c) {
  return c == kEos ? std::string("</s>") : SymbolToken(c);
}

char32_t NextFromText(std::string_view text) {
  return text == "</s>" ? kEos : ParseSymbolToken(text);
}

std::vector<std::u32string> SortedByLength(
    const std::map<std::u32string, NgramModel::History> &histories) {
  std::vector<std::u32string> keys;
  keys.reserve(histories.size());
  for (const auto &[h, unused] : histories) keys.push_back(h);
  std::stable_sort(keys.begin(), keys.end(),
                   [](const auto &a, const auto &b) {
                     return a.size() < b.size();
                   });
  return keys;
}

}  // namespace

int64_t NgramCounts::Count(std::u32string_view context, char32_t next) const {
  auto it = counts.find(std::u32string(context));
  if (it == counts.end()) return 0;
  auto jt = it->second.find(next);
  return jt == it->second.end() ? 0 : jt->second;
}

int64_t NgramCounts::ContextCount(std::u32string_view context) const {
  auto it = counts.find(std::u32string(context));
  if (it == counts.end()) return 0;
  int64_t total = 0;
  for (const auto &[w, c] : it->second) total += c;
  return total;
}

int NgramCounts::Diversity(std::u32string_view context) const {
  auto it = counts.find(std::u32string(context));
  return it == counts.end() ? 0 : static_cast<int>(it->second.size());
}

NgramCounts CountNgrams(const std::vector<std::u32string> &corpus, int order,
                        std::u32string_view alphabet) {
  if (order < kMinNgramOrder || order > kMaxNgramOrder) {
    throw ConfigError("n-gram order must be in [2, 6], got " +
                      std::to_string(order));
  }
  if (corpus.empty()) throw DataError("cannot count n-grams of an empty corpus");
  NgramCounts out;
  out.order = order;
  std::set<char32_t> vocab(alphabet.begin(), alphabet.end());
  const bool declared = !alphabet.empty();
  std::u32string padded;
  for (const auto &sentence : corpus) {
    padded.clear();
    padded.push_back(kBos);
    for (char32_t c : sentence) {
      if (c == kBos || c == kEos) {
        throw DataError("sentence contains a boundary sentinel");
      }
      if (declared && !vocab.count(c)) {
        throw DataError("corpus character outside the declared alphabet");
      }
      if (!declared) vocab.insert(c);
      padded.push_back(c);
    }
    padded.push_back(kEos);
    for (size_t i = 1; i < padded.size(); ++i) {
      for (int len = 0; len < order && static_cast<size_t>(len) <= i; ++len) {
        ++out.counts[padded.substr(i - len, len)][padded[i]];
      }
    }
  }
  out.vocabulary.assign(vocab.begin(), vocab.end());
  return out;
}

std::u32string NgramModel::Truncate(std::u32string_view context) const {
  const size_t keep = static_cast<size_t>(order_ - 1);
  if (context.size() <= keep) return std::u32string(context);
  return std::u32string(context.substr(context.size() - keep));
}

double NgramModel::NegLogProb(std::u32string_view context,
                              char32_t next) const {
  std::u32string h = Truncate(context);
  double acc = 0.0;
  while (true) {
    auto it = histories_.find(h);
    if (it != histories_.end()) {
      auto jt = it->second.neg_log_prob.find(next);
      if (jt != it->second.neg_log_prob.end()) return acc + jt->second;
      if (h.empty()) return kInfinity;
      acc += it->second.backoff;
    } else if (h.empty()) {
      return kInfinity;
    }
    h.erase(0, 1);
  }
}

double NgramModel::Prob(std::u32string_view context, char32_t next) const {
  return std::exp(-NegLogProb(context, next));
}

double NgramModel::Score(std::u32string_view sentence) const {
  std::u32string context(1, kBos);
  double total = 0.0;
  for (char32_t c : sentence) {
    total += NegLogProb(context, c);
    context.push_back(c);
    if (context.size() > static_cast<size_t>(order_)) context.erase(0, 1);
  }
  return total + NegLogProb(context, kEos);
}

double NgramModel::Perplexity(
    const std::vector<std::u32string> &sentences) const {
  double nll = 0.0;
  size_t events = 0;
  for (const auto &s : sentences) {
    nll += Score(s);
    events += s.size() + 1;
  }
  return events == 0 ? 1.0 : std::exp(nll / static_cast<double>(events));
}

double NgramModel::HistoryProb(std::u32string_view history) const {
  size_t start = (!history.empty() && history[0] == kBos) ? 1 : 0;
  double nll = 0.0;
  for (size_t i = start; i < history.size(); ++i) {
    nll += NegLogProb(history.substr(0, i), history[i]);
  }
  return std::exp(-nll);
}

size_t NgramModel::NumEntries() const {
  size_t n = 0;
  for (const auto &[h, hist] : histories_) {
    if (!h.empty()) n += hist.neg_log_prob.size();
  }
  return n;
}

void NgramModel::RecomputeBackoffs() {
  for (const auto &h : SortedByLength(histories_)) {
    if (h.empty()) continue;
    auto it = histories_.find(h);
    if (it->second.neg_log_prob.empty()) {
      histories_.erase(it);
      continue;
    }
    const std::u32string lower = h.substr(1);
    double high_mass = 0.0, low_mass = 0.0;
    for (const auto &[w, nl] : it->second.neg_log_prob) {
      high_mass += std::exp(-nl);
      low_mass += Prob(lower, w);
    }
    const double num = 1.0 - high_mass;
    const double den = 1.0 - low_mass;
    double backoff = 0.0;
    if (num > 0.0 && den > 1e-12) {
      backoff = -std::log(num / den);
    } else if (num <= 0.0 && den > 1e-12) {
      backoff = kInfinity;
    }
    it->second.backoff = backoff;
  }
}

NgramModel NgramModel::WithoutEntry(std::u32string_view context,
                                    char32_t next) const {
  NgramModel copy = *this;
  auto it = copy.histories_.find(std::u32string(context));
  if (it == copy.histories_.end() || !it->second.neg_log_prob.erase(next)) {
    throw DataError("no such n-gram entry");
  }
  copy.RecomputeBackoffs();
  return copy;
}

NgramModel WittenBell(const NgramCounts &counts, double k) {
  if (!(k > 0.0)) throw ConfigError("Witten-Bell k must be positive");
  NgramModel model;
  model.order_ = counts.order;
  model.vocabulary_ = counts.vocabulary;
  const double uniform =
      1.0 / static_cast<double>(counts.vocabulary.size() + 1);

  std::vector<std::u32string> contexts;
  for (const auto &[h, unused] : counts.counts) contexts.push_back(h);
  std::stable_sort(contexts.begin(), contexts.end(),
                   [](const auto &a, const auto &b) {
                     return a.size() < b.size();
                   });

  for (const auto &h : contexts) {
    const auto &next_counts = counts.counts.at(h);
    const double c = static_cast<double>(counts.ContextCount(h));
    const double d = static_cast<double>(next_counts.size());
    const double denom = c + k * d;
    NgramModel::History hist;
    if (h.empty()) {
      std::u32string support = counts.vocabulary;
      support.push_back(kEos);
      for (char32_t w : support) {
        auto it = next_counts.find(w);
        const double cw = it == next_counts.end() ? 0.0 : it->second;
        hist.neg_log_prob[w] = -std::log((cw + k * d * uniform) / denom);
      }
    } else {
      const std::u32string lower = h.substr(1);
      for (const auto &[w, cw] : next_counts) {
        const double p_lower = model.Prob(lower, w);
        hist.neg_log_prob[w] =
            -std::log((static_cast<double>(cw) + k * d * p_lower) / denom);
      }
    }
    hist.backoff = -std::log(k * d / denom);
    model.histories_.emplace(h, std::move(hist));
  }
  return model;
}

double RelativeEntropyDelta(const NgramModel &model,
                            std::u32string_view context, char32_t next) {
  const auto &histories = model.histories();
  auto it = histories.find(std::u32string(context));
  if (it == histories.end() || !it->second.neg_log_prob.count(next)) {
    throw DataError("no such n-gram entry");
  }
  if (context.empty()) throw DataError("unigram entries are not prunable");
  const std::u32string lower(context.substr(1));
  double high_mass = 0.0, low_mass = 0.0;
  for (const auto &[w, nl] : it->second.neg_log_prob) {
    high_mass += std::exp(-nl);
    low_mass += model.Prob(lower, w);
  }
  const double p = std::exp(-it->second.neg_log_prob.at(next));
  const double p_low = model.Prob(lower, next);
  const double num = std::max(1.0 - high_mass, 0.0);
  const double den = std::max(1.0 - low_mass, 0.0);
  const double new_num = num + p;
  const double new_den = den + p_low;
  const double log_new_alpha = std::log(new_num) - std::log(new_den);
  double delta = p * (std::log(p_low) + log_new_alpha - std::log(p));
  if (num > 1e-15 && den > 1e-15) {
    const double log_alpha = std::log(num) - std::log(den);
    delta += num * (log_new_alpha - log_alpha);
  }
  return -model.HistoryProb(context) * delta;
}

NgramModel EntropyPrune(const NgramModel &model, double theta) {
  if (model.order() < 3) {
    throw ConfigError("relative entropy pruning needs order >= 3");
  }
  if (!(theta >= 0.0)) throw ConfigError("pruning threshold must be >= 0");
  NgramModel pruned = model;
  if (theta == 0.0) return pruned;
  for (int len = model.order() - 1; len >= 1; --len) {
    std::vector<std::pair<std::u32string, char32_t>> doomed;
    for (const auto &[h, hist] : pruned.histories_) {
      if (static_cast<int>(h.size()) != len) continue;
      for (const auto &[w, nl] : hist.neg_log_prob) {
        if (w != kEos && len + 1 <= model.order() - 1) {
          std::u32string extended = h;
          extended.push_back(w);
          auto ext = pruned.histories_.find(extended);
          if (ext != pruned.histories_.end() &&
              !ext->second.neg_log_prob.empty()) {
            continue;
          }
        }
        if (RelativeEntropyDelta(pruned, h, w) < theta) {
          doomed.emplace_back(h, w);
        }
      }
    }
    for (const auto &[h, w] : doomed) pruned.histories_[h].neg_log_prob.erase(w);
    pruned.RecomputeBackoffs();
  }
  return pruned;
}

LogFst ToWfsa(const NgramModel &model,
              std::shared_ptr<const SymbolTable> table) {
  for (char32_t c : model.vocabulary()) {
    if (!table->Contains(c)) {
      throw DataError("language model vocabulary not covered by symbol table");
    }
  }
  std::set<std::u32string> states = {std::u32string(),
                                     std::u32string(1, kBos)};
  for (const auto &[h, hist] : model.histories()) {
    if (hist.neg_log_prob.empty()) continue;
    for (size_t i = 0; i <= h.size(); ++i) states.insert(h.substr(i));
  }
  std::map<std::u32string, StateId> ids;
  LogFst fst;
  for (const auto &h : states) ids.emplace(h, fst.AddState());

  auto longest_state_suffix = [&](std::u32string h) {
    if (h.size() > static_cast<size_t>(model.order() - 1)) {
      h.erase(0, h.size() - (model.order() - 1));
    }
    while (!states.count(h)) h.erase(0, 1);
    return ids.at(h);
  };

  const Label failure = table->Size();
  for (const auto &h : states) {
    const StateId s = ids.at(h);
    fst.SetFinal(s, LogWeight(model.NegLogProb(h, kEos)));
    auto it = model.histories().find(h);
    if (!h.empty()) {
      const double backoff =
          it == model.histories().end() ? 0.0 : it->second.backoff;
      fst.AddArc(s, {failure, failure, LogWeight(backoff),
                     longest_state_suffix(h.substr(1))});
    }
    if (it == model.histories().end()) continue;
    for (const auto &[w, nl] : it->second.neg_log_prob) {
      if (w == kEos) continue;
      const Label label = table->Find(w);
      std::u32string extended = h;
      extended.push_back(w);
      fst.AddArc(s, {label, label, LogWeight(nl),
                     longest_state_suffix(std::move(extended))});
    }
  }
  fst.SetStart(ids.at(std::u32string(1, kBos)));
  fst.SortArcsByInput();
  fst.SetInputSymbols(table);
  fst.SetOutputSymbols(table);
  fst.SetFailureLabel(failure);
  return fst;
}

void NgramModel::Write(std::ostream &os) const {
  os << "romdec-ngram\t1\n";
  os << "order\t" << order_ << '\n';
  os << "vocab\t" << HistoryToText(vocabulary_) << '\n';
  for (const auto &[h, hist] : histories_) {
    for (const auto &[w, nl] : hist.neg_log_prob) {
      os << "p\t" << HistoryToText(h) << '\t' << NextToText(w) << '\t'
         << FormatDouble(nl) << '\n';
    }
  }
  for (const auto &[h, hist] : histories_) {
    os << "b\t" << HistoryToText(h) << '\t' << FormatDouble(hist.backoff)
       << '\n';
  }
}

NgramModel NgramModel::Read(std::istream &is, const std::string &source) {
  NgramModel model;
  std::string line;
  int lineno = 0;
  bool saw_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = Split(line, '\t');
    try {
      if (!saw_header) {
        if (fields.size() != 2 || fields[0] != "romdec-ngram") {
          throw FormatError(source, lineno, "missing romdec-ngram header");
        }
        saw_header = true;
      } else if (fields[0] == "order" && fields.size() == 2) {
        long long order = 0;
        if (!ParseInt(fields[1], &order) || order < 1 || order > 16) {
          throw FormatError(source, lineno, "bad order");
        }
        model.order_ = static_cast<int>(order);
      } else if (fields[0] == "vocab" && fields.size() == 2) {
        model.vocabulary_ = HistoryFromText(fields[1]);
      } else if (fields[0] == "p" && fields.size() == 4) {
        double nl = 0;
        if (!ParseDouble(fields[3], &nl)) {
          throw FormatError(source, lineno, "bad probability");
        }
        model.histories_[HistoryFromText(fields[1])]
            .neg_log_prob[NextFromText(fields[2])] = nl;
      } else if (fields[0] == "b" && fields.size() == 3) {
        double nl = 0;
        if (!ParseDouble(fields[2], &nl)) {
          throw FormatError(source, lineno, "bad backoff");
        }
        model.histories_[HistoryFromText(fields[1])].backoff = nl;
      } else {
        throw FormatError(source, lineno, "unrecognized line");
      }
    } catch (const FormatError &) {
      throw;
    } catch (const DataError &e) {
      throw FormatError(source, lineno, e.what());
    }
  }
  if (!saw_header || model.order_ == 0) {
    throw FormatError(source, lineno, "incomplete n-gram model");
  }
  return model;
}

}  // namespace romdec
