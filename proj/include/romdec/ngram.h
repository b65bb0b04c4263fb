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
// Character n-gram language model: counting, interpolated Witten-Bell
// smoothing, relative-entropy pruning, and export as a weighted acceptor
// with failure (backoff) transitions.

#ifndef ROMDEC_NGRAM_H_
#define ROMDEC_NGRAM_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "romdec/fst.h"
#include "romdec/symbol_table.h"

namespace romdec {

// Sentence-boundary sentinels. Both are control characters that never
// survive corpus preprocessing.
inline constexpr char32_t kBos = U'\x02';
inline constexpr char32_t kEos = U'\x03';

inline constexpr int kMinNgramOrder = 2;
inline constexpr int kMaxNgramOrder = 6;

struct NgramCounts {
  int order = 0;
  // Declared alphabet, sorted and unique; excludes the sentinels.
  std::u32string vocabulary;
  // context (shorter than `order`, possibly starting with kBos) ->
  // next symbol (a character or kEos) -> count.
  std::map<std::u32string, std::map<char32_t, int64_t>> counts;

  int64_t Count(std::u32string_view context, char32_t next) const;
  // Number of times `context` was followed by anything.
  int64_t ContextCount(std::u32string_view context) const;
  // Number of distinct symbols observed after `context`.
  int Diversity(std::u32string_view context) const;
};

// Counts every n-gram up to `order` over sentences padded with kBos/kEos.
// When `alphabet` is non-empty it is the declared vocabulary and every
// corpus character must belong to it; otherwise the vocabulary is the set
// of corpus characters.
NgramCounts CountNgrams(const std::vector<std::u32string> &corpus, int order,
                        std::u32string_view alphabet = {});

class NgramModel {
 public:
  struct History {
    std::map<char32_t, double> neg_log_prob;  // explicit entries
    double backoff = 0.0;                     // -ln backoff weight
  };

  int order() const { return order_; }
  const std::u32string &vocabulary() const { return vocabulary_; }
  const std::map<std::u32string, History> &histories() const {
    return histories_;
  }

  // -ln p(next | context). Only the last order-1 symbols of `context` are
  // used; unseen histories back off with unit weight. Returns +inf for a
  // symbol outside the vocabulary.
  double NegLogProb(std::u32string_view context, char32_t next) const;
  double Prob(std::u32string_view context, char32_t next) const;

  // -ln p(sentence), including the end sentinel.
  double Score(std::u32string_view sentence) const;
  double Perplexity(const std::vector<std::u32string> &sentences) const;

  // Probability of a history string under the model's chain rule; kBos at
  // the front has probability one.
  double HistoryProb(std::u32string_view history) const;

  // Explicit entries above the unigram level.
  size_t NumEntries() const;

  // Copy without the explicit entry (context, next), backoff weights
  // renormalized.
  NgramModel WithoutEntry(std::u32string_view context, char32_t next) const;

  // Text format; see README. Ordering is lexicographic so output is stable.
  void Write(std::ostream &os) const;
  static NgramModel Read(std::istream &is, const std::string &source);

 private:
  friend NgramModel WittenBell(const NgramCounts &counts, double k);
  friend NgramModel EntropyPrune(const NgramModel &model, double theta);

  std::u32string Truncate(std::u32string_view context) const;
  // Recomputes every backoff weight so each history is normalized over
  // vocabulary + kEos, shortest histories first. Drops empty histories.
  void RecomputeBackoffs();

  int order_ = 0;
  std::u32string vocabulary_;
  std::map<std::u32string, History> histories_;
};

// Interpolated Witten-Bell with diversity scaling k:
//   p(w|h) = (c(hw) + k d(h) p(w|h')) / (c(h) + k d(h)),
// bottoming out at the uniform distribution over vocabulary + kEos.
NgramModel WittenBell(const NgramCounts &counts, double k = 10.0);

// Increase in relative entropy caused by removing the explicit entry
// (context, next) and renormalizing the backoff weight of `context`.
double RelativeEntropyDelta(const NgramModel &model,
                            std::u32string_view context, char32_t next);

// Removes entries whose relative-entropy delta is below theta, one order at
// a time from the highest, renormalizing backoffs after each order. Entries
// that prefix a retained longer history are kept. Requires order >= 3.
NgramModel EntropyPrune(const NgramModel &model, double theta);

// Acceptor with one state per retained history. Character arcs carry
// -ln p(w|h); each non-empty history has one failure arc (label
// `table->Size()`) to its backoff state; final weights are -ln p(</s>|h).
// The start state is the kBos history.
LogFst ToWfsa(const NgramModel &model, std::shared_ptr<const SymbolTable> table);

}  // namespace romdec

#endif  // ROMDEC_NGRAM_H_
