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

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "romdec/expectation.h"
#include "romdec/fst_algorithms.h"
#include "romdec/semiring.h"

namespace romdec {
namespace {

TEST(SemiringTest, TropicalAxioms) {
  const TropicalWeight a(1.5), b(0.25);
  EXPECT_EQ(Plus(a, b), b);
  EXPECT_EQ(Times(a, b), TropicalWeight(1.75));
  EXPECT_EQ(Plus(a, TropicalWeight::Zero()), a);
  EXPECT_EQ(Times(a, TropicalWeight::One()), a);
  EXPECT_TRUE(Times(a, TropicalWeight::Zero()).IsZero());
}

TEST(SemiringTest, LogPlusIsStableSum) {
  const LogWeight a = LogWeight::FromProbability(0.3);
  const LogWeight b = LogWeight::FromProbability(0.2);
  EXPECT_NEAR(Plus(a, b).Probability(), 0.5, 1e-15);
  EXPECT_EQ(Plus(a, LogWeight::Zero()), a);
  // Far below the double range in the linear domain.
  const LogWeight tiny(2000.0);
  EXPECT_NEAR(Plus(tiny, tiny).Value(), 2000.0 - std::log(2.0), 1e-12);
  EXPECT_NEAR(Times(a, b).Probability(), 0.06, 1e-15);
}

TEST(SemiringTest, SparseVectorAlgebra) {
  SparseVector x = SparseVector::Basis(3, 2.0).Add(SparseVector::Basis(1, 1.0));
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x.entries()[0].first, 1);
  EXPECT_DOUBLE_EQ(x.Get(3), 2.0);
  EXPECT_DOUBLE_EQ(x.Get(7), 0.0);
  const SparseVector y = SparseVector::Basis(3, -2.0);
  EXPECT_EQ(x.Add(y).size(), 1u);  // cancelled entries are dropped
  const SparseVector z = SparseVector::Combine(2.0, x, 3.0, y);
  EXPECT_DOUBLE_EQ(z.Get(1), 2.0);
  EXPECT_DOUBLE_EQ(z.Get(3), -2.0);
  EXPECT_TRUE(x.Scale(0.0).empty());
}

TEST(SemiringTest, ExpectationProductRule) {
  // (p1, v1) ⊗ (p2, v2) = (p1 p2, p2 v1 + p1 v2).
  const ExpectationWeight a(LogWeight::FromProbability(0.5),
                            SparseVector::Basis(0, 0.5));
  const ExpectationWeight b(LogWeight::FromProbability(0.25),
                            SparseVector::Basis(1, 0.25));
  const ExpectationWeight ab = Times(a, b);
  EXPECT_NEAR(ab.p().Probability(), 0.125, 1e-15);
  EXPECT_NEAR(ab.v().Get(0), 0.125, 1e-15);
  EXPECT_NEAR(ab.v().Get(1), 0.125, 1e-15);
  const ExpectationWeight sum = Plus(a, b);
  EXPECT_NEAR(sum.p().Probability(), 0.75, 1e-15);
  EXPECT_NEAR(sum.v().Get(0), 0.5, 1e-15);
  EXPECT_EQ(Times(a, ExpectationWeight::One()), a);
  EXPECT_EQ(Plus(a, ExpectationWeight::Zero()), a);
  EXPECT_TRUE(Times(a, ExpectationWeight::Zero()).IsZero());
}

TEST(SemiringTest, ArcWeightWithBasisCountsTraversals) {
  const ExpectationWeight w = ArcWeightWithBasis(4, 0.7);
  EXPECT_DOUBLE_EQ(w.Value(), 0.7);
  EXPECT_DOUBLE_EQ(w.v().Get(4), std::exp(-0.7));
  EXPECT_TRUE(ArcWeightWithBasis(4, kInfinity).IsZero());
  // Two traversals of op 4 along one path: count 2 after normalizing.
  const ExpectationWeight path = Times(w, w);
  EXPECT_NEAR(path.v().Get(4) / path.p().Probability(), 2.0, 1e-14);
}

ExpectationFst RandomExpectationDag(Rng &rng) {
  auto weight = [&rng]() {
    const double p = 0.05 + 0.9 * Uniform01(rng);
    SparseVector v;
    const int entries = static_cast<int>(UniformIndex(rng, 3));
    for (int i = 0; i < entries; ++i) {
      v = v.Add(SparseVector::Basis(static_cast<int32_t>(UniformIndex(rng, 6)),
                                    Uniform01(rng) * p));
    }
    return ExpectationWeight(LogWeight::FromProbability(p), v);
  };
  const int n = 3 + static_cast<int>(UniformIndex(rng, 6));
  return oracle::RandomDag<ExpectationWeight>(rng, n, 3, 0.5, false, weight);
}

TEST(SemiringTest, ShortestDistanceMatchesPathEnumeration) {
  Rng rng(7);
  int checked = 0;
  while (checked < 40) {
    const ExpectationFst fst = RandomExpectationDag(rng);
    if (oracle::CountPathsForward(fst) > 200) continue;
    ++checked;
    const auto oracle = oracle::EnumerateExpectation(fst);
    const auto sd = ShortestDistance(fst);
    EXPECT_NEAR(sd.total.p().Probability(), oracle.mass,
                1e-10 * std::max(1.0, oracle.mass));
    for (const auto &[id, v] : oracle.vector) {
      EXPECT_NEAR(sd.total.v().Get(id), v, 1e-9 * std::max(1.0, std::fabs(v)));
    }
    EXPECT_EQ(sd.total.v().size(), oracle.vector.size());
    if (oracle.mass > 0) {
      const auto fb = ExpectedCountsForwardBackward(fst, 6);
      for (const auto &[id, v] : oracle.vector) {
        EXPECT_NEAR(fb.counts[id], v / oracle.mass,
                    1e-9 * std::max(1.0, std::fabs(v / oracle.mass)));
      }
    }
  }
}

TEST(SemiringTest, ForwardBackwardSurvivesUnderflow) {
  // A 400-arc chain with per-arc probability 0.01: mass 1e-800 underflows
  // the linear domain, the scaled computation does not.
  auto table = std::make_shared<SymbolTable>(SymbolTable::FromAlphabet(U"a"));
  ExpectationFst fst;
  fst.AddState();
  fst.SetStart(0);
  for (int i = 0; i < 400; ++i) {
    fst.AddState();
    fst.AddArc(i, {1, 1, ArcWeightWithBasis(0, -std::log(0.01)), i + 1});
  }
  fst.SetFinal(400, ExpectationWeight::One());
  const auto ec = ExpectedCountsForwardBackward(fst, 1);
  EXPECT_NEAR(ec.neg_log_mass, 400 * -std::log(0.01), 1e-9);
  EXPECT_NEAR(ec.counts[0], 400.0, 1e-9);
}

}  // namespace
}  // namespace romdec
