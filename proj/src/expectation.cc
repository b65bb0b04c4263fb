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

#include "romdec/expectation.h"

#include <cmath>

#include "romdec/fst_algorithms.h"

namespace romdec {

ExpectedCounts ExpectedCountsForwardBackward(const ExpectationFst &lattice,
                                             size_t num_ops) {
  ExpectedCounts result;
  result.counts.assign(num_ops, 0.0);
  if (lattice.Start() == kNoState) return result;
  const auto order = RequireTopologicalOrder(lattice);
  const StateId n = lattice.NumStates();

  std::vector<double> alpha(n, kInfinity), beta(n, kInfinity);
  alpha[lattice.Start()] = 0.0;
  for (StateId s : order) {
    if (alpha[s] == kInfinity) continue;
    for (const auto &arc : lattice.Arcs(s)) {
      double &a = alpha[arc.nextstate];
      a = NegLogSumExp(a, alpha[s] + arc.weight.Value());
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const StateId s = *it;
    double b = lattice.Final(s).Value();
    for (const auto &arc : lattice.Arcs(s)) {
      b = NegLogSumExp(b, arc.weight.Value() + beta[arc.nextstate]);
    }
    beta[s] = b;
  }
  const double z = beta[lattice.Start()];
  result.neg_log_mass = z;
  if (z == kInfinity) return result;

  KahanVector acc(num_ops);
  for (StateId s = 0; s < n; ++s) {
    if (alpha[s] == kInfinity) continue;
    for (const auto &arc : lattice.Arcs(s)) {
      const double b = beta[arc.nextstate];
      if (b == kInfinity || arc.weight.v().empty()) continue;
      const double scale = std::exp(z - alpha[s] - b);
      for (const auto &[id, value] : arc.weight.v().entries()) {
        acc.Add(static_cast<size_t>(id), value * scale);
      }
    }
    const auto &final = lattice.Final(s);
    if (!final.IsZero() && !final.v().empty()) {
      const double scale = std::exp(z - alpha[s]);
      for (const auto &[id, value] : final.v().entries()) {
        acc.Add(static_cast<size_t>(id), value * scale);
      }
    }
  }
  result.counts = acc.values();
  return result;
}

ExpectedCounts ExpectedCountsShortestDistance(const ExpectationFst &lattice,
                                              size_t num_ops) {
  ExpectedCounts result;
  result.counts.assign(num_ops, 0.0);
  const auto sd = ShortestDistance(lattice);
  result.neg_log_mass = sd.total.Value();
  if (sd.total.IsZero()) return result;
  const double inv_mass = std::exp(sd.total.Value());
  for (const auto &[id, value] : sd.total.v().entries()) {
    result.counts[static_cast<size_t>(id)] = value * inv_mass;
  }
  return result;
}

}  // namespace romdec
