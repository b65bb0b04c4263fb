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

#include "romdec/eval.h"

#include <algorithm>
#include <ostream>
#include <set>

#include "romdec/errors.h"
#include "romdec/symbol_table.h"
#include "romdec/text_util.h"
#include "romdec/utf8.h"

namespace romdec {
namespace {

// Full (|a|+1) x (|b|+1) distance table, row-major.
std::vector<size_t> DistanceTable(std::u32string_view a, std::u32string_view b) {
  const size_t w = b.size() + 1;
  std::vector<size_t> d((a.size() + 1) * w);
  for (size_t j = 0; j < w; ++j) d[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    d[i * w] = i;
    for (size_t j = 1; j < w; ++j) {
      const size_t sub = d[(i - 1) * w + j - 1] + (a[i - 1] != b[j - 1]);
      d[i * w + j] = std::min({sub, d[(i - 1) * w + j] + 1, d[i * w + j - 1] + 1});
    }
  }
  return d;
}

std::string GapToken(char32_t c) {
  return c == kGap ? std::string("<eps>") : SymbolToken(c);
}

}  // namespace

size_t EditDistance(std::u32string_view a, std::u32string_view b) {
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j < row.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      const size_t up = row[j];
      row[j] = std::min({diag + (a[i - 1] != b[j - 1]), up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

double Cer(std::u32string_view hyp, std::u32string_view ref) {
  if (ref.empty()) throw DataError("character error rate needs a reference");
  return static_cast<double>(EditDistance(hyp, ref)) /
         static_cast<double>(ref.size());
}

std::vector<std::pair<char32_t, char32_t>> Align(std::u32string_view hyp,
                                                 std::u32string_view ref) {
  const auto d = DistanceTable(hyp, ref);
  const size_t w = ref.size() + 1;
  std::vector<std::pair<char32_t, char32_t>> out;
  size_t i = hyp.size(), j = ref.size();
  while (i > 0 || j > 0) {
    const size_t here = d[i * w + j];
    if (i > 0 && j > 0 &&
        here == d[(i - 1) * w + j - 1] + (hyp[i - 1] != ref[j - 1])) {
      out.emplace_back(hyp[i - 1], ref[j - 1]);
      --i;
      --j;
    } else if (i > 0 && here == d[(i - 1) * w + j] + 1) {
      out.emplace_back(hyp[i - 1], kGap);
      --i;
    } else {
      out.emplace_back(kGap, ref[j - 1]);
      --j;
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

void ConfusionMatrix::Add(std::u32string_view hyp, std::u32string_view ref) {
  for (const auto &p : Align(hyp, ref)) ++counts_[p];
}

int64_t ConfusionMatrix::Count(char32_t predicted, char32_t gold) const {
  auto it = counts_.find({predicted, gold});
  return it == counts_.end() ? 0 : it->second;
}

int64_t ConfusionMatrix::Total() const {
  int64_t total = 0;
  for (const auto &[key, n] : counts_) total += n;
  return total;
}

void ConfusionMatrix::Write(std::ostream &os) const {
  std::set<char32_t> rows, cols;
  for (const auto &[key, n] : counts_) {
    rows.insert(key.first);
    cols.insert(key.second);
  }
  os << "pred\\gold";
  for (char32_t c : cols) os << '\t' << GapToken(c);
  os << '\n';
  for (char32_t r : rows) {
    os << GapToken(r);
    for (char32_t c : cols) os << '\t' << Count(r, c);
    os << '\n';
  }
}

ConfusionMatrix Confusion(const std::vector<std::u32string> &hyps,
                          const std::vector<std::u32string> &refs) {
  if (hyps.size() != refs.size()) {
    throw DataError("hypothesis and reference counts differ");
  }
  ConfusionMatrix m;
  for (size_t i = 0; i < hyps.size(); ++i) m.Add(hyps[i], refs[i]);
  return m;
}

EvalReport Evaluate(const std::vector<std::u32string> &hyps,
                    const std::vector<std::u32string> &refs,
                    const std::vector<bool> &failed) {
  if (hyps.size() != refs.size()) {
    throw DataError("hypothesis and reference counts differ (" +
                    std::to_string(hyps.size()) + " vs " +
                    std::to_string(refs.size()) + ")");
  }
  EvalReport report;
  for (size_t i = 0; i < hyps.size(); ++i) {
    EvalRow row;
    row.id = std::to_string(i + 1);
    row.hyp = hyps[i];
    row.ref = refs[i];
    row.failed = i < failed.size() && failed[i];
    if (row.ref.empty()) {
      ++report.excluded;
      continue;
    }
    row.distance = row.failed ? row.ref.size() : EditDistance(row.hyp, row.ref);
    row.cer = static_cast<double>(row.distance) / row.ref.size();
    if (row.failed) ++report.failures;
    report.total_distance += row.distance;
    report.total_ref_length += row.ref.size();
    report.rows.push_back(std::move(row));
  }
  report.corpus_cer = report.total_ref_length == 0
                          ? 0.0
                          : static_cast<double>(report.total_distance) /
                                report.total_ref_length;
  return report;
}

void WriteReport(std::ostream &os, const EvalReport &report) {
  os << "id\thyp\tref\tdistance\tcer\n";
  for (const auto &row : report.rows) {
    os << row.id << '\t' << EncodeUtf8(row.hyp) << '\t' << EncodeUtf8(row.ref)
       << '\t' << row.distance << '\t' << FormatDouble(row.cer) << '\n';
  }
  os << "#corpus\tsentences=" << report.rows.size()
     << "\tdistance=" << report.total_distance
     << "\tref_length=" << report.total_ref_length
     << "\tcer=" << FormatDouble(report.corpus_cer)
     << "\texcluded_empty_refs=" << report.excluded
     << "\tdecode_failures=" << report.failures << '\n';
}

}  // namespace romdec
