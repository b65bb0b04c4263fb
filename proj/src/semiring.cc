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

#include "romdec/semiring.h"

#include <algorithm>

namespace romdec {

void SparseVector::Reserve(size_t n) {
  if (n > kInline) heap_.reserve(n);
}

void SparseVector::Push(int32_t id, double value) {
  if (value == 0.0) return;
  if (size_ < kInline) {
    inline_[size_++] = {id, value};
    return;
  }
  if (size_ == kInline) heap_.assign(inline_.begin(), inline_.end());
  heap_.emplace_back(id, value);
  ++size_;
}

SparseVector SparseVector::Basis(int32_t id, double value) {
  SparseVector v;
  v.Push(id, value);
  return v;
}

double SparseVector::Get(int32_t id) const {
  const auto e = entries();
  auto it = std::lower_bound(
      e.begin(), e.end(), id,
      [](const Entry &entry, int32_t key) { return entry.first < key; });
  return (it != e.end() && it->first == id) ? it->second : 0.0;
}

SparseVector SparseVector::Add(const SparseVector &other) const {
  return Combine(1.0, *this, 1.0, other);
}

SparseVector SparseVector::Scale(double scale) const {
  SparseVector out;
  if (scale == 0.0) return out;
  out.Reserve(size_);
  for (const auto &[id, value] : entries()) out.Push(id, scale * value);
  return out;
}

SparseVector SparseVector::Combine(double a, const SparseVector &x, double b,
                                   const SparseVector &y) {
  if (x.empty()) return y.Scale(b);
  if (y.empty()) return x.Scale(a);
  SparseVector out;
  out.Reserve(x.size_ + y.size_);
  const auto xe = x.entries(), ye = y.entries();
  auto xi = xe.begin();
  auto yi = ye.begin();
  while (xi != xe.end() || yi != ye.end()) {
    if (yi == ye.end() || (xi != xe.end() && xi->first < yi->first)) {
      out.Push(xi->first, a * xi->second);
      ++xi;
    } else if (xi == xe.end() || yi->first < xi->first) {
      out.Push(yi->first, b * yi->second);
      ++yi;
    } else {
      out.Push(xi->first, a * xi->second + b * yi->second);
      ++xi;
      ++yi;
    }
  }
  return out;
}

ExpectationWeight Plus(const ExpectationWeight &a,
                       const ExpectationWeight &b) {
  if (a.IsZero()) return b;
  if (b.IsZero()) return a;
  return ExpectationWeight(Plus(a.p(), b.p()), a.v().Add(b.v()));
}

ExpectationWeight Times(const ExpectationWeight &a,
                        const ExpectationWeight &b) {
  if (a.IsZero() || b.IsZero()) return ExpectationWeight::Zero();
  // (p1 p2, p1 v2 + p2 v1)
  return ExpectationWeight(
      Times(a.p(), b.p()),
      SparseVector::Combine(b.p().Probability(), a.v(), a.p().Probability(),
                            b.v()));
}

ExpectationWeight ArcWeightWithBasis(int32_t op_id, double neg_log_p) {
  if (neg_log_p == kInfinity) return ExpectationWeight::Zero();
  return ExpectationWeight(LogWeight(neg_log_p),
                           SparseVector::Basis(op_id, std::exp(-neg_log_p)));
}

ExpectationWeight ArcWeightWithBasis(int32_t op_id, int32_t extra_id,
                                     double neg_log_p) {
  if (extra_id < 0) return ArcWeightWithBasis(op_id, neg_log_p);
  if (neg_log_p == kInfinity) return ExpectationWeight::Zero();
  const double p = std::exp(-neg_log_p);
  return ExpectationWeight(LogWeight(neg_log_p),
                           SparseVector::Basis(op_id, p).Add(
                               SparseVector::Basis(extra_id, p)));
}

}  // namespace romdec
