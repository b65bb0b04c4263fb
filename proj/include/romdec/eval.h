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

// Character error rate and edit-alignment confusion counts.

#ifndef ROMDEC_EVAL_H_
#define ROMDEC_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string_view>
#include <string>
#include <utility>
#include <vector>

namespace romdec {

// Marks the empty side of an insertion or deletion in alignments.
inline constexpr char32_t kGap = 0;

// Unit-cost Levenshtein distance.
size_t EditDistance(std::u32string_view a, std::u32string_view b);

// EditDistance / |ref|. Throws DataError for an empty reference.
double Cer(std::u32string_view hyp, std::u32string_view ref);

// One minimum-cost alignment as (hyp, ref) pairs with kGap for indels.
// Ties prefer substitution (or match), then deletion (hyp char against a
// gap), then insertion.
std::vector<std::pair<char32_t, char32_t>> Align(std::u32string_view hyp,
                                                 std::u32string_view ref);

class ConfusionMatrix {
 public:
  void Add(std::u32string_view hyp, std::u32string_view ref);
  int64_t Count(char32_t predicted, char32_t gold) const;
  int64_t Total() const;
  const std::map<std::pair<char32_t, char32_t>, int64_t> &counts() const {
    return counts_;
  }
  // Matrix TSV: rows are predictions, columns gold symbols, "<eps>" for
  // the gap.
  void Write(std::ostream &os) const;

 private:
  std::map<std::pair<char32_t, char32_t>, int64_t> counts_;
};

ConfusionMatrix Confusion(const std::vector<std::u32string> &hyps,
                          const std::vector<std::u32string> &refs);

struct EvalRow {
  std::string id;
  std::u32string hyp;
  std::u32string ref;
  size_t distance = 0;
  double cer = 0.0;
  bool failed = false;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  size_t total_distance = 0;
  size_t total_ref_length = 0;
  size_t excluded = 0;  // empty references
  size_t failures = 0;  // decoding failures, scored as |ref| errors
  double corpus_cer = 0.0;
};

// `failed[i]` marks a decoding failure; its hypothesis is ignored and the
// whole reference counts as errors. `failed` may be empty.
EvalReport Evaluate(const std::vector<std::u32string> &hyps,
                    const std::vector<std::u32string> &refs,
                    const std::vector<bool> &failed = {});

// "id<TAB>hyp<TAB>ref<TAB>distance<TAB>cer" rows then a "#corpus" summary.
void WriteReport(std::ostream &os, const EvalReport &report);

}  // namespace romdec

#endif  // ROMDEC_EVAL_H_
