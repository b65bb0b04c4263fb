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
// Expected edit-operation counts from an expectation-semiring lattice.

#ifndef ROMDEC_EXPECTATION_H_
#define ROMDEC_EXPECTATION_H_

#include <cstddef>
#include <vector>

#include "romdec/fst.h"

namespace romdec {

struct ExpectedCounts {
  double neg_log_mass = kInfinity;  // -ln of the total path mass
  std::vector<double> counts;       // per op id, normalized by the mass
};

// Computes the expectation-semiring total by forward-backward over the
// p-components: vector total = sum over arcs of alpha(src) * v(arc) *
// beta(dst), evaluated in scaled form so long lattices do not underflow.
ExpectedCounts ExpectedCountsForwardBackward(const ExpectationFst &lattice,
                                             size_t num_ops);

// Same quantity from the generic forward shortest distance over
// ExpectationWeight. Stores linear-domain vectors, so it is meant for
// lattices whose total mass stays above the double range floor.
ExpectedCounts ExpectedCountsShortestDistance(const ExpectationFst &lattice,
                                              size_t num_ops);

// Compensated accumulation of a dense count vector.
class KahanVector {
 public:
  explicit KahanVector(size_t n = 0) : sum_(n, 0.0), comp_(n, 0.0) {}
  void Add(size_t i, double x) {
    const double y = x - comp_[i];
    const double t = sum_[i] + y;
    comp_[i] = (t - sum_[i]) - y;
    sum_[i] = t;
  }
  const std::vector<double> &values() const { return sum_; }
  size_t size() const { return sum_.size(); }

 private:
  std::vector<double> sum_;
  std::vector<double> comp_;
};

}  // namespace romdec

#endif  // ROMDEC_EXPECTATION_H_
