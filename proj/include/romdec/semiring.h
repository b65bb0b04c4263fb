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
// Weight types for lattice computations. Tropical and log weights hold
// negative log probabilities; the expectation weight pairs a log-domain
// path mass with a sparse vector of (unnormalized) expected edit-operation
// counts.

#ifndef ROMDEC_SEMIRING_H_
#define ROMDEC_SEMIRING_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace romdec {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// -ln(e^-a + e^-b) without overflow; total on [-745, +inf].
inline double NegLogSumExp(double a, double b) {
  if (a == kInfinity) return b;
  if (b == kInfinity) return a;
  if (a > b) std::swap(a, b);
  return a - std::log1p(std::exp(a - b));
}

class TropicalWeight {
 public:
  constexpr TropicalWeight() = default;
  constexpr explicit TropicalWeight(double value) : value_(value) {}

  static constexpr TropicalWeight Zero() { return TropicalWeight(kInfinity); }
  static constexpr TropicalWeight One() { return TropicalWeight(0.0); }
  static constexpr const char *Type() { return "tropical"; }

  constexpr double Value() const { return value_; }
  bool IsZero() const { return value_ == kInfinity; }

  friend bool operator==(TropicalWeight a, TropicalWeight b) {
    return a.value_ == b.value_;
  }

 private:
  double value_ = kInfinity;
};

inline TropicalWeight Plus(TropicalWeight a, TropicalWeight b) {
  return a.Value() <= b.Value() ? a : b;
}

inline TropicalWeight Times(TropicalWeight a, TropicalWeight b) {
  if (a.IsZero() || b.IsZero()) return TropicalWeight::Zero();
  return TropicalWeight(a.Value() + b.Value());
}

class LogWeight {
 public:
  constexpr LogWeight() = default;
  constexpr explicit LogWeight(double value) : value_(value) {}

  static constexpr LogWeight Zero() { return LogWeight(kInfinity); }
  static constexpr LogWeight One() { return LogWeight(0.0); }
  static constexpr const char *Type() { return "log"; }
  static LogWeight FromProbability(double p) { return LogWeight(-std::log(p)); }

  constexpr double Value() const { return value_; }
  double Probability() const { return std::exp(-value_); }
  bool IsZero() const { return value_ == kInfinity; }

  friend bool operator==(LogWeight a, LogWeight b) {
    return a.value_ == b.value_;
  }

 private:
  double value_ = kInfinity;
};

inline LogWeight Plus(LogWeight a, LogWeight b) {
  return LogWeight(NegLogSumExp(a.Value(), b.Value()));
}

inline LogWeight Times(LogWeight a, LogWeight b) {
  if (a.IsZero() || b.IsZero()) return LogWeight::Zero();
  return LogWeight(a.Value() + b.Value());
}

// Sparse real vector keyed by edit-op id, entries sorted by id. Zero
// entries are never stored.
class SparseVector {
 public:
  using Entry = std::pair<int32_t, double>;

  SparseVector() = default;
  static SparseVector Basis(int32_t id, double value);

  // Entries sorted by id, zeros omitted.
  std::span<const Entry> entries() const {
    return size_ <= kInline ? std::span<const Entry>(inline_.data(), size_)
                            : std::span<const Entry>(heap_);
  }
  bool empty() const { return size_ == 0; }
  size_t size() const { return size_; }
  double Get(int32_t id) const;

  // this + other.
  SparseVector Add(const SparseVector &other) const;
  // scale * this.
  SparseVector Scale(double scale) const;
  // a * x + b * y, the bilinear term of the expectation product.
  static SparseVector Combine(double a, const SparseVector &x, double b,
                              const SparseVector &y);

  friend bool operator==(const SparseVector &a, const SparseVector &b) {
    const auto x = a.entries(), y = b.entries();
    return std::equal(x.begin(), x.end(), y.begin(), y.end());
  }

 private:
  // Lattice arcs carry one or two ids; those stay off the heap.
  static constexpr uint32_t kInline = 2;

  void Push(int32_t id, double value);
  void Reserve(size_t n);

  std::array<Entry, kInline> inline_{};
  uint32_t size_ = 0;
  std::vector<Entry> heap_;  // all entries once size_ > kInline
};

class ExpectationWeight {
 public:
  ExpectationWeight() = default;
  ExpectationWeight(LogWeight p, SparseVector v)
      : p_(p), v_(p.IsZero() ? SparseVector() : std::move(v)) {}

  static ExpectationWeight Zero() { return ExpectationWeight(); }
  static ExpectationWeight One() {
    return ExpectationWeight(LogWeight::One(), SparseVector());
  }
  static constexpr const char *Type() { return "expectation"; }

  LogWeight p() const { return p_; }
  const SparseVector &v() const { return v_; }
  double Value() const { return p_.Value(); }
  bool IsZero() const { return p_.IsZero(); }

  friend bool operator==(const ExpectationWeight &a,
                         const ExpectationWeight &b) {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }

 private:
  LogWeight p_ = LogWeight::Zero();
  SparseVector v_;
};

ExpectationWeight Plus(const ExpectationWeight &a, const ExpectationWeight &b);
ExpectationWeight Times(const ExpectationWeight &a, const ExpectationWeight &b);

// (neg_log_p, {op_id: e^-neg_log_p}): the arc weight whose shortest-distance
// vector component counts traversals of edit op `op_id`.
ExpectationWeight ArcWeightWithBasis(int32_t op_id, double neg_log_p);
// As above with a second op traversed on the same arc (ignored when < 0).
ExpectationWeight ArcWeightWithBasis(int32_t op_id, int32_t extra_id,
                                     double neg_log_p);

template <class W>
struct WeightTraits;

template <>
struct WeightTraits<TropicalWeight> {
  static TropicalWeight FromValue(double v) { return TropicalWeight(v); }
};

template <>
struct WeightTraits<LogWeight> {
  static LogWeight FromValue(double v) { return LogWeight(v); }
};

template <>
struct WeightTraits<ExpectationWeight> {
  static ExpectationWeight FromValue(double v) {
    return ExpectationWeight(LogWeight(v), SparseVector());
  }
};

}  // namespace romdec

#endif  // ROMDEC_SEMIRING_H_
