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
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.h"
#include "romdec/corpus.h"
#include "romdec/errors.h"

namespace romdec {
namespace {

std::u32string Latin(std::u32string_view s) { return PreprocessText(s, Side::kLatin); }
std::u32string Original(std::u32string_view s) {
  return PreprocessText(s, Side::kOriginal);
}

TEST(PreprocessTest, Examples) {
  EXPECT_EQ(Latin(U"ahhhhh"), U"ahh");
  EXPECT_EQ(Latin(U"aa"), U"aa");
  EXPECT_EQ(Latin(U"A  B"), U"a b");
  EXPECT_EQ(Original(U"ПРИВЕЕЕЕТ!!!"), U"привеет!!");
  EXPECT_EQ(Original(U"Ёлка"), U"ёлка");
  EXPECT_EQ(Latin(U"  tab\there   nbsp  "), U"tab here nbsp");
}

TEST(PreprocessTest, PunctuationFolding) {
  // The folded ellipsis is itself a run of three and gets squashed.
  EXPECT_EQ(Latin(U"“quoted” — it’s…"), U"\"quoted\" - it's..");
  EXPECT_EQ(Original(U"كيف؟"), U"كيف؟");
  EXPECT_EQ(Original(U"؛"), U";");
  EXPECT_EQ(Latin(U"！"), U"!");
  EXPECT_TRUE(IsCanonicalPunctuation(U'،'));
  EXPECT_FALSE(IsCanonicalPunctuation(U'a'));
}

TEST(PreprocessTest, LatinSideDropsNonAscii) {
  EXPECT_EQ(Latin(U"privet \U0001F600 :)"), U"privet :)");
  EXPECT_EQ(Latin(U"café"), U"caf");
  // The original side keeps its script and digits.
  EXPECT_EQ(Original(U"١٢ а"), U"١٢ а");
}

TEST(PreprocessTest, EmptyResultIsDropped) {
  EXPECT_FALSE(Preprocess("\xF0\x9F\x98\x80   ", Side::kLatin).has_value());
  const auto s = Preprocess("Hi", Side::kLatin, "doc:1");
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->text, U"hi");
  EXPECT_EQ(s->source_id, "doc:1");
}

TEST(PreprocessTest, IsIdempotent) {
  Rng rng(21);
  const std::u32string pool =
      U"aAbB  \t !!!...—“…АаЁ١؟،\U0001F600zzz";
  for (int trial = 0; trial < 500; ++trial) {
    std::u32string s;
    for (size_t i = UniformIndex(rng, 20); i > 0; --i) s.push_back(pool[UniformIndex(rng, pool.size())]);
    for (Side side : {Side::kLatin, Side::kOriginal}) {
      const std::u32string once = PreprocessText(s, side);
      EXPECT_EQ(PreprocessText(once, side), once);
    }
  }
}

TEST(PreprocessTest, SquashRepeats) {
  EXPECT_EQ(SquashRepeats(U"aaabbbbc", 2), U"aabbc");
  EXPECT_EQ(SquashRepeats(U"aaab", 1), U"ab");
  EXPECT_EQ(SquashRepeats(U"", 2), U"");
}

TEST(PreprocessTest, AlphabetIsWhatSurvives) {
  std::istringstream in("Hello  World\n\n\xF0\x9F\x98\x80\nabc!!!!\n");
  const auto corpus = ReadMonolingual(in, Side::kLatin, "mem");
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[0], U"hello world");
  EXPECT_EQ(ExtractAlphabet(corpus), U" !abcdehlorw");
  size_t removed = 0;
  EXPECT_EQ(FilterToAlphabet(U"hello, world", U" dehlorw", &removed), U"hello world");
  EXPECT_EQ(removed, 1u);
}

class TempFile : public ::testing::Test {
 protected:
  std::string Write(const std::string &name, const std::string &text) {
    const std::string path = ::testing::TempDir() + "/corpus_" + name;
    std::ofstream(path) << text;
    return path;
  }
};

TEST_F(TempFile, ParallelLoadAndColumnErrors) {
  const auto pairs = LoadParallel(Write("ok.tsv", "Privet\tПривет\nkak dela\tкак дела\n"));
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].latin, U"privet");
  EXPECT_EQ(pairs[0].original, U"привет");
  EXPECT_EQ(pairs[1].original, U"как дела");
  try {
    LoadParallel(Write("bad.tsv", "a\tб\nb\tв\textra\n"));
    FAIL() << "expected FormatError";
  } catch (const FormatError &e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(LoadParallel(::testing::TempDir() + "/does_not_exist.tsv"), DataError);
}

TEST_F(TempFile, ParallelRoundTrip) {
  const auto pairs = LoadParallel(Write("rt.tsv", "Ahhhh  OK\tАААА ок\nx\tх\n"));
  std::ostringstream out;
  WriteParallel(out, pairs);
  std::istringstream in(out.str());
  const auto back = ReadParallel(in, "round trip");
  ASSERT_EQ(back.size(), pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_EQ(back[i].latin, pairs[i].latin);
    EXPECT_EQ(back[i].original, pairs[i].original);
  }
}

TEST(MappingFileTest, EntriesDirectivesAndErrors) {
  std::istringstream in("# header\n@insertion_rate\t0.1\n\nА\tA\nб\tb\t2.5\n");
  const MappingFile f = ReadMappingFile(in, "mem");
  ASSERT_EQ(f.entries.size(), 2u);
  EXPECT_EQ(f.entries[0].original, U"а");
  EXPECT_EQ(f.entries[0].latin, U"a");
  EXPECT_EQ(f.entries[1].weight, 2.5);
  EXPECT_EQ(f.entries[1].line, 5);
  EXPECT_EQ(f.directives.at("insertion_rate"), 0.1);
  std::istringstream bad("а\ta\nб\n");
  EXPECT_THROW(ReadMappingFile(bad, "mem"), FormatError);
}

std::vector<std::u32string> SourceCorpus() {
  Rng rng(5);
  return oracle::SampleCorpus(rng, U"abcd", 200, 3, 12);
}

TEST(SyntheticTest, IdentityChannelCopies) {
  SyntheticChannel channel;
  channel.seed = 3;
  const auto corpus = SourceCorpus();
  const SyntheticData data = GenerateSynthetic(corpus, channel, 50);
  ASSERT_EQ(data.latin.size(), 50u);
  EXPECT_EQ(data.latin, data.original);
}

TEST(SyntheticTest, DeterministicCipher) {
  SyntheticChannel channel;
  channel.table = {{U'a', {{U'w', 1.0}}}, {U'b', {{U'x', 1.0}}},
                   {U'c', {{U'y', 1.0}}}, {U'd', {{U'z', 1.0}}}};
  channel.Validate();
  const SyntheticData data = GenerateSynthetic(SourceCorpus(), channel, 80);
  for (size_t i = 0; i < data.latin.size(); ++i) {
    std::u32string expected;
    for (char32_t c : data.original[i]) expected.push_back(U'w' + (c - U'a'));
    EXPECT_EQ(data.latin[i], expected);
  }
}

TEST(SyntheticTest, FrequenciesMatchTheTable) {
  SyntheticChannel channel;
  channel.seed = 99;
  channel.table = {{U'a', {{U'x', 0.7}, {U'y', 0.2}, {U'z', 0.1}}}};
  channel.Validate();
  const std::vector<std::u32string> corpus{std::u32string(100, U'a')};
  const SyntheticData data = GenerateSynthetic(corpus, channel, 100);
  std::map<char32_t, double> seen;
  double n = 0;
  for (const auto &l : data.latin) {
    for (char32_t c : l) {
      ++seen[c];
      ++n;
    }
  }
  ASSERT_EQ(n, 10000.0);
  for (const auto &[c, p] : channel.table.at(U'a')) {
    const double sigma = std::sqrt(n * p * (1 - p));
    EXPECT_NEAR(seen[c], n * p, 3 * sigma) << static_cast<int>(c);
  }
}

TEST(SyntheticTest, RatesShapeLengths) {
  SyntheticChannel channel;
  channel.seed = 7;
  channel.insertion_rate = 0.2;
  channel.deletion_rate = 0.1;
  channel.table = {{U'a', {{U'x', 1.0}}}};
  channel.Validate();
  const std::vector<std::u32string> corpus{std::u32string(1000, U'a')};
  const SyntheticData data = GenerateSynthetic(corpus, channel, 10);
  // Per source char: keep with 0.9, then a geometric number of insertions
  // with mean 0.2 / 0.8 = 0.25.
  double len = 0;
  for (const auto &l : data.latin) len += l.size();
  const double expected = 10000 * (0.9 + 0.25);
  EXPECT_NEAR(len, expected, 0.03 * expected);
}

TEST(SyntheticTest, ReproducibleAndValidated) {
  SyntheticChannel channel;
  channel.seed = 12;
  channel.insertion_rate = 0.1;
  channel.table = {{U'a', {{U'x', 2.0}, {U'y', 2.0}}}};
  channel.Validate();
  EXPECT_DOUBLE_EQ(channel.table.at(U'a')[0].second, 0.5);
  const auto corpus = SourceCorpus();
  const SyntheticData a = GenerateSynthetic(corpus, channel, 40);
  const SyntheticData b = GenerateSynthetic(corpus, channel, 40);
  EXPECT_EQ(a.latin, b.latin);
  EXPECT_EQ(a.original, b.original);
  SyntheticChannel bad;
  bad.deletion_rate = 1.0;
  EXPECT_THROW(bad.Validate(), ConfigError);
}

TEST(SyntheticTest, FromMappingFile) {
  std::istringstream in("@insertion_rate\t0.05\n@deletion_rate\t0.02\nю\tlo\nа\ta\t3\nа\to\n");
  const SyntheticChannel c = SyntheticChannel::FromMappingFile(ReadMappingFile(in, "mem"), 4);
  EXPECT_EQ(c.insertion_rate, 0.05);
  EXPECT_EQ(c.deletion_rate, 0.02);
  ASSERT_EQ(c.table.at(U'ю').size(), 2u);
  EXPECT_DOUBLE_EQ(c.table.at(U'ю')[0].second, 0.5);
  EXPECT_DOUBLE_EQ(c.table.at(U'а')[0].second, 0.75);
  EXPECT_EQ(c.Targets(), U"alo");
}

}  // namespace
}  // namespace romdec
