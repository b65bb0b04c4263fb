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

// Corpus ingestion: preprocessing, readers and writers for monolingual and
// parallel text, alphabet extraction, and a synthetic noisy-channel
// generator.

#ifndef ROMDEC_CORPUS_H_
#define ROMDEC_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace romdec {

enum class Side { kLatin, kOriginal };

struct Sentence {
  std::u32string text;
  Side side = Side::kOriginal;
  std::string source_id;
};

// Lowercases ASCII, Latin-1, Greek and Cyrillic capitals.
char32_t FoldCase(char32_t c);

// Canonical punctuation: ASCII punctuation plus the Arabic question mark
// and comma.
bool IsCanonicalPunctuation(char32_t c);

// Maps a Unicode quote, dash, ellipsis or space variant to its ASCII form.
// Returns the input unchanged when no folding applies.
std::u32string FoldPunctuation(char32_t c);

// Collapses runs of the same character longer than `max_run`.
std::u32string SquashRepeats(std::u32string_view text, int max_run = 2);

// Full normalization: casefold, punctuation fold, (Latin side) drop
// non-ASCII, collapse whitespace, squash repeats. Idempotent.
std::u32string PreprocessText(std::u32string_view text, Side side);

// Decodes and normalizes one line. Returns nullopt when nothing survives.
std::optional<Sentence> Preprocess(std::string_view utf8, Side side,
                                   std::string source_id = {});

// Drops characters outside `alphabet` (sorted). Returns the number removed
// through `removed` when non-null.
std::u32string FilterToAlphabet(std::u32string_view text,
                                std::u32string_view alphabet,
                                size_t *removed = nullptr);

// Sorted set of characters occurring in `corpus`.
std::u32string ExtractAlphabet(const std::vector<std::u32string> &corpus);

// One sentence per line; empty results are dropped and logged.
std::vector<std::u32string> ReadMonolingual(std::istream &is, Side side,
                                            const std::string &source);
std::vector<std::u32string> LoadMonolingual(const std::string &path,
                                            Side side);
void WriteMonolingual(std::ostream &os,
                      const std::vector<std::u32string> &sentences);

struct ParallelPair {
  std::u32string latin;
  std::u32string original;
};

// "latin<TAB>original" per line. Pairs with an empty side after
// preprocessing are dropped and logged.
std::vector<ParallelPair> ReadParallel(std::istream &is,
                                       const std::string &source);
std::vector<ParallelPair> LoadParallel(const std::string &path);
void WriteParallel(std::ostream &os, const std::vector<ParallelPair> &pairs);

// One entry of a mapping file: "original<TAB>latin-string[<TAB>weight]".
struct MappingEntry {
  std::u32string original;
  std::u32string latin;
  double weight = 1.0;
  int line = 0;
};

struct MappingFile {
  std::vector<MappingEntry> entries;
  // "@key<TAB>value" directive lines.
  std::map<std::string, double> directives;
};

// Both sides are casefolded. Lines starting with '#' and blank lines are
// skipped; anything else malformed raises FormatError with its line.
MappingFile ReadMappingFile(std::istream &is, const std::string &source);
MappingFile LoadMappingFile(const std::string &path);

// p(c_l | c_o) substitution table with geometric insertions and a per-
// character deletion rate. Characters without a row copy through.
struct SyntheticChannel {
  std::map<char32_t, std::vector<std::pair<char32_t, double>>> table;
  double insertion_rate = 0.0;
  double deletion_rate = 0.0;
  uint64_t seed = 1;

  // Normalizes rows and checks rates; throws ConfigError.
  void Validate();
  // Sorted union of all targets; the insertion alphabet.
  std::u32string Targets() const;

  // Mapping-file format with "@insertion_rate" and "@deletion_rate"
  // directives. Multi-character targets split their weight evenly.
  static SyntheticChannel FromMappingFile(const MappingFile &file,
                                          uint64_t seed);
};

struct SyntheticData {
  std::vector<std::u32string> latin;
  std::vector<std::u32string> original;
};

// Samples `n` sentences uniformly (with replacement) from `corpus` and
// passes each through the channel.
SyntheticData GenerateSynthetic(const std::vector<std::u32string> &corpus,
                                const SyntheticChannel &channel, size_t n);

}  // namespace romdec

#endif  // ROMDEC_CORPUS_H_
