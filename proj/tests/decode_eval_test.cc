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
#include <functional>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"
#include "romdec/decode.h"
#include "romdec/errors.h"
#include "romdec/eval.h"
#include "romdec/fst_algorithms.h"

namespace romdec {
namespace {

std::shared_ptr<const SymbolTable> Symbols(std::u32string_view alphabet) {
  return std::make_shared<const SymbolTable>(SymbolTable::FromAlphabet(alphabet));
}

std::shared_ptr<const EditOpTable> Ops(std::u32string_view source,
                                       std::u32string_view latin) {
  return std::make_shared<const EditOpTable>(Symbols(source), Symbols(latin),
                                             Restrictions::None());
}

// Puts `keep` of each source family on its mapped target and of the
// insertion family on not inserting, spreading the rest evenly.
EmissionParams Peaked(std::shared_ptr<const EditOpTable> table,
                      const std::map<char32_t, char32_t> &mapping, double keep) {
  EmissionParams params = InitParams(table, {1, 0.0, true, std::nullopt});
  const Label ns = static_cast<Label>(table->source_symbols()->NumSymbols());
  for (Label s = 1; s <= ns; ++s) {
    const auto &family = table->Family(s);
    const char32_t c = table->source_symbols()->Symbol(s);
    const int32_t best = table->FindChars(c, mapping.at(c));
    for (int32_t id : family) {
      params.SetProb(id, id == best ? keep : (1.0 - keep) / (family.size() - 1));
    }
  }
  const auto &ins = table->InsertionFamily();
  for (int32_t id : ins) {
    params.SetProb(id, id == table->NoInsertionOp() ? keep
                                                    : (1.0 - keep) / (ins.size() - 1));
  }
  return params;
}

TEST(DecodeTest, IdentityChannelReturnsInput) {
  const std::u32string alphabet = U"abcd";
  const auto table = Ops(alphabet, alphabet);
  const EmissionParams params =
      Peaked(table, {{U'a', U'a'}, {U'b', U'b'}, {U'c', U'c'}, {U'd', U'd'}},
             1.0 - 1e-6);
  Rng rng(3);
  const auto corpus = oracle::SampleCorpus(rng, alphabet, 300, 1, 8);
  const Decoder decoder(WittenBell(CountNgrams(corpus, 3, alphabet)), params, 2);
  for (std::u32string l : {U"a", U"abcd", U"ddcba", U"cab"}) {
    const Decoded d = decoder(l);
    ASSERT_TRUE(d.ok) << d.error;
    EXPECT_EQ(d.source, l);
  }
}

TEST(DecodeTest, ToyCipherWithUniformLm) {
  const auto table = Ops(U"ab", U"xy");
  const EmissionParams params = Peaked(table, {{U'a', U'x'}, {U'b', U'y'}}, 0.9);
  // Every bigram equally often: the LM is uniform.
  const NgramModel lm = WittenBell(CountNgrams({U"aa", U"ab", U"ba", U"bb"}, 2, U"ab"));
  const Decoded d = Decoder(lm, params, 1)(U"xy");
  ASSERT_TRUE(d.ok);
  EXPECT_EQ(d.source, U"ab");
  std::u32string latin;
  ASSERT_TRUE(ApplyEdits(d.source, d.ops, *table, &latin));
  EXPECT_EQ(latin, U"xy");
}

TEST(DecodeTest, LanguageModelBreaksChannelTies) {
  // b and a both emit x with equal probability; the LM prefers "ab".
  const auto table = Ops(U"ab", U"x");
  const EmissionParams params = Peaked(table, {{U'a', U'x'}, {U'b', U'x'}}, 0.9);
  const NgramModel lm =
      WittenBell(CountNgrams(std::vector<std::u32string>(20, U"ab"), 2, U"ab"));
  const Decoded d = Decoder(lm, params, 1)(U"xx");
  ASSERT_TRUE(d.ok);
  EXPECT_EQ(d.source, U"ab");
}

TEST(DecodeTest, SearchMatchesFullLattice) {
  Rng rng(31);
  const std::u32string src = U"abcd ", lat = U"wxyz ";
  const auto table = std::make_shared<const EditOpTable>(Symbols(src), Symbols(lat),
                                                         Restrictions::Default());
  const auto corpus = oracle::SampleWordCorpus(rng, U"abcd", 20, 300, 4);
  for (int trial = 0; trial < 6; ++trial) {
    const EmissionParams params =
        InitParams(table, {rng(), 2.0, trial % 2 == 0, std::nullopt});
    const NgramModel lm = WittenBell(CountNgrams(corpus, 2 + trial % 5, src));
    const Decoder decoder(lm, params, 1 + trial % 3);
    for (int k = 0; k < 10; ++k) {
      std::u32string l;
      for (size_t i = 1 + UniformIndex(rng, 12); i > 0; --i) {
        l.push_back(lat[UniformIndex(rng, lat.size())]);
      }
      const Decoded fast = decoder(l);
      const Decoded full = decoder.Exhaustive(l);
      ASSERT_EQ(fast.ok, full.ok);
      if (!fast.ok) continue;
      EXPECT_NEAR(fast.score, full.score, 1e-9);
      std::u32string latin;
      ASSERT_TRUE(ApplyEdits(fast.source, fast.ops, *table, &latin));
      EXPECT_EQ(latin, l);
    }
  }
}

TEST(DecodeTest, MatchesBruteForceArgmax) {
  Rng rng(29);
  const std::u32string src = U"abc", lat = U"xyz";
  const auto table = Ops(src, lat);
  const auto corpus = oracle::SampleCorpus(rng, src, 100, 1, 5);
  for (int trial = 0; trial < 8; ++trial) {
    const EmissionParams params = InitParams(table, {rng(), 3.0, true, std::nullopt});
    const NgramModel lm = WittenBell(CountNgrams(corpus, 2 + trial % 3, src));
    const int delay = 1 + trial % 2;
    const Decoder decoder(lm, params, delay);
    for (int k = 0; k < 4; ++k) {
      std::u32string l;
      const size_t len = 1 + UniformIndex(rng, 3);
      for (size_t i = 0; i < len; ++i) l.push_back(lat[UniformIndex(rng, 3)]);
      double best = kInfinity;
      for (const auto &o : oracle::AllStrings(src, l.size() + delay)) {
        best = std::min(best, lm.Score(o) + oracle::ChannelViterbi(params, delay, o, l));
      }
      const Decoded d = decoder(l);
      ASSERT_TRUE(d.ok);
      EXPECT_NEAR(d.score, best, 1e-9);
      // Self-consistency: the decoded source rescored through both models.
      EXPECT_NEAR(d.score,
                  lm.Score(d.source) + oracle::ChannelViterbi(params, delay, d.source, l),
                  1e-8);
      double path_cost = lm.Score(d.source) +
                         params.NegLogProb(table->NoInsertionOp());
      for (int32_t id : d.ops) {
        path_cost += params.NegLogProb(id);
        if (table->op(id).source != kEpsilon) {
          path_cost += params.NegLogProb(table->NoInsertionOp());
        }
      }
      EXPECT_NEAR(d.score, path_cost, 1e-8);
      std::u32string latin;
      ASSERT_TRUE(ApplyEdits(d.source, d.ops, *table, &latin));
      EXPECT_EQ(latin, l);
    }
  }
}

TEST(DecodeTest, FailuresAreReported) {
  const auto table = Ops(U"ab", U"xyz");
  EmissionParams params = InitParams(table, {1, 0.0, false, std::nullopt});
  params.Deactivate(table->FindChars(U'a', U'z'));
  params.Deactivate(table->FindChars(U'b', U'z'));
  const NgramModel lm = WittenBell(CountNgrams({U"ab"}, 2, U"ab"));
  const Decoder decoder(lm, params, 1);
  const Decoded none = decoder(U"xz");
  EXPECT_FALSE(none.ok);
  EXPECT_FALSE(none.error.empty());
  const Decoded unknown = decoder(U"xq");
  EXPECT_FALSE(unknown.ok);
  EXPECT_NE(unknown.error.find("q"), std::string::npos);
  EXPECT_TRUE(decoder(U"xy").ok);
}

TEST(DecodeTest, ParallelDecodingKeepsOrder) {
  const auto table = Ops(U"abc", U"xyz");
  const EmissionParams params = InitParams(table, {8, 1.0, true, std::nullopt});
  Rng rng(4);
  const auto corpus = oracle::SampleCorpus(rng, U"abc", 100, 1, 6);
  const Decoder decoder(WittenBell(CountNgrams(corpus, 3, U"abc")), params, 2);
  std::vector<std::u32string> latin;
  for (const auto &s : corpus) {
    std::u32string l;
    for (char32_t c : s) l.push_back(U'x' + (c - U'a'));
    latin.push_back(l);
  }
  latin.resize(30);
  const auto serial = decoder.DecodeAll(latin, 1);
  const auto parallel = decoder.DecodeAll(latin, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].source, parallel[i].source);
    EXPECT_EQ(serial[i].score, parallel[i].score);
  }
}

// Memoized recursion on suffixes, independent of the library's table DP.
size_t DistanceOracle(std::u32string_view a, std::u32string_view b) {
  std::map<std::pair<size_t, size_t>, size_t> memo;
  std::function<size_t(size_t, size_t)> go = [&](size_t i, size_t j) -> size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    auto it = memo.find({i, j});
    if (it != memo.end()) return it->second;
    size_t best = go(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
    best = std::min({best, go(i + 1, j) + 1, go(i, j + 1) + 1});
    return memo[{i, j}] = best;
  };
  return go(0, 0);
}

TEST(EvalTest, CerExamples) {
  EXPECT_EQ(Cer(U"хорошо", U"хорошо"), 0.0);
  EXPECT_NEAR(Cer(U"хороша", U"хорошо"), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(Cer(U"", U"abc"), 1.0, 1e-15);
  EXPECT_THROW(Cer(U"abc", U""), DataError);
}

TEST(EvalTest, DistanceMatchesOracleAndIsSymmetric) {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::u32string a, b;
    for (size_t i = UniformIndex(rng, 9); i > 0; --i) a.push_back(U'a' + UniformIndex(rng, 3));
    for (size_t i = UniformIndex(rng, 9); i > 0; --i) b.push_back(U'a' + UniformIndex(rng, 3));
    EXPECT_EQ(EditDistance(a, b), DistanceOracle(a, b));
    EXPECT_EQ(EditDistance(a, b), EditDistance(b, a));
    if (!a.empty() && !b.empty()) {
      EXPECT_NEAR(Cer(a, b) * b.size(), Cer(b, a) * a.size(), 1e-12);
    }
    // The alignment realizes the distance.
    const auto alignment = Align(a, b);
    size_t cost = 0;
    std::u32string ha, rb;
    for (const auto &[h, r] : alignment) {
      cost += h != r;
      if (h != kGap) ha.push_back(h);
      if (r != kGap) rb.push_back(r);
    }
    EXPECT_EQ(cost, EditDistance(a, b));
    EXPECT_EQ(ha, a);
    EXPECT_EQ(rb, b);
  }
}

TEST(EvalTest, ConfusionExamples) {
  ConfusionMatrix same;
  same.Add(U"ab", U"ab");
  EXPECT_EQ(same.Count(U'a', U'a'), 1);
  EXPECT_EQ(same.Count(U'b', U'b'), 1);
  EXPECT_EQ(same.Total(), 2);

  ConfusionMatrix forced;
  forced.Add(U"ab", U"b");
  EXPECT_EQ(forced.Count(U'a', kGap), 1);
  EXPECT_EQ(forced.Count(U'b', U'b'), 1);
  EXPECT_EQ(forced.Total(), 2);

  // Ties go to substitution.
  ConfusionMatrix tie;
  tie.Add(U"a", U"b");
  EXPECT_EQ(tie.Count(U'a', U'b'), 1);
  EXPECT_EQ(tie.Total(), 1);
}

TEST(EvalTest, ConfusionTotalsMatchAlignments) {
  Rng rng(12);
  std::vector<std::u32string> hyps, refs;
  size_t total = 0;
  std::map<char32_t, int64_t> hyp_chars;
  for (int i = 0; i < 50; ++i) {
    std::u32string h, r;
    for (size_t k = 1 + UniformIndex(rng, 7); k > 0; --k) h.push_back(U'a' + UniformIndex(rng, 4));
    for (size_t k = 1 + UniformIndex(rng, 7); k > 0; --k) r.push_back(U'a' + UniformIndex(rng, 4));
    total += Align(h, r).size();
    for (char32_t c : h) ++hyp_chars[c];
    hyps.push_back(h);
    refs.push_back(r);
  }
  const ConfusionMatrix m = Confusion(hyps, refs);
  EXPECT_EQ(m.Total(), static_cast<int64_t>(total));
  // Every hypothesis character appears in exactly one row entry.
  for (const auto &[c, n] : hyp_chars) {
    int64_t row = 0;
    for (const auto &[key, count] : m.counts()) {
      if (key.first == c) row += count;
    }
    EXPECT_EQ(row, n);
  }
  std::ostringstream os;
  m.Write(os);
  EXPECT_EQ(os.str().rfind("pred\\gold", 0), 0u);
  EXPECT_NE(os.str().find("<eps>"), std::string::npos);
}

TEST(EvalTest, ReportCountsFailuresAsFullErrors) {
  const EvalReport r = Evaluate({U"abc", U"zzz", U"x", U"q"},
                                {U"abd", U"hello", U"", U"ab"},
                                {false, false, false, true});
  EXPECT_EQ(r.excluded, 1u);
  EXPECT_EQ(r.failures, 1u);
  EXPECT_EQ(r.total_ref_length, 3u + 5u + 2u);
  EXPECT_EQ(r.total_distance, 1u + 5u + 2u);
  EXPECT_NEAR(r.corpus_cer, 8.0 / 10.0, 1e-15);
  std::ostringstream os;
  WriteReport(os, r);
  EXPECT_EQ(os.str().rfind("id\thyp\tref\tdistance\tcer\n", 0), 0u);
  EXPECT_NE(os.str().find("#corpus\tsentences="), std::string::npos);
  EXPECT_NE(os.str().find("decode_failures=1"), std::string::npos);
}

}  // namespace
}  // namespace romdec
