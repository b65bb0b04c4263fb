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

#include "romdec/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <glog/logging.h>

#include "romdec/errors.h"
#include "romdec/random.h"
#include "romdec/text_util.h"
#include "romdec/utf8.h"

namespace romdec {

char32_t FoldCase(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 0x50;
  return c;
}

bool IsCanonicalPunctuation(char32_t c) {
  if (c < 0x80) return c > 0x20 && c < 0x7F && !std::isalnum(static_cast<int>(c));
  return c == U'؟' || c == U'،';
}

std::u32string FoldPunctuation(char32_t c) {
  switch (c) {
    case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0xA0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return U" ";
    case 0xAD: case 0x200B: case 0x200C: case 0x200D: case 0x2060:
    case 0xFEFF:
      return U"";
    case 0xAB: case 0xBB: case 0x201C: case 0x201D: case 0x201E:
    case 0x201F: case 0x2033: case 0x301D: case 0x301E:
      return U"\"";
    case 0xB4: case 0x2BC: case 0x2018: case 0x2019: case 0x201A:
    case 0x201B: case 0x2032: case 0x2039: case 0x203A:
      return U"'";
    case 0x2212: case 0xFE58: case 0xFE63:
      return U"-";
    case 0x2026:
      return U"...";
    case 0x061B:
      return U";";
    default:
      break;
  }
  if (c >= 0x2000 && c <= 0x200A) return U" ";
  if (c >= 0x2010 && c <= 0x2015) return U"-";
  if (c >= 0xFF01 && c <= 0xFF5E) return std::u32string(1, c - 0xFEE0);
  return std::u32string(1, c);
}

std::u32string SquashRepeats(std::u32string_view text, int max_run) {
  std::u32string out;
  out.reserve(text.size());
  int run = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    run = (i > 0 && text[i] == text[i - 1]) ? run + 1 : 1;
    if (run <= max_run) out.push_back(text[i]);
  }
  return out;
}

std::u32string PreprocessText(std::u32string_view text, Side side) {
  std::u32string folded;
  folded.reserve(text.size());
  for (char32_t c : text) {
    for (char32_t f : FoldPunctuation(c)) {
      f = FoldCase(f);
      if (f < 0x20 || (f >= 0x7F && f < 0xA0)) continue;
      if (side == Side::kLatin && f > 0x7F) continue;
      folded.push_back(f);
    }
  }
  std::u32string collapsed;
  collapsed.reserve(folded.size());
  for (char32_t c : folded) {
    if (c == U' ' && (collapsed.empty() || collapsed.back() == U' ')) continue;
    collapsed.push_back(c);
  }
  if (!collapsed.empty() && collapsed.back() == U' ') collapsed.pop_back();
  return SquashRepeats(collapsed);
}

std::optional<Sentence> Preprocess(std::string_view utf8, Side side,
                                   std::string source_id) {
  std::u32string text = PreprocessText(DecodeUtf8(utf8), side);
  if (text.empty()) return std::nullopt;
  return Sentence{std::move(text), side, std::move(source_id)};
}

std::u32string FilterToAlphabet(std::u32string_view text,
                                std::u32string_view alphabet,
                                size_t *removed) {
  std::u32string out;
  size_t dropped = 0;
  for (char32_t c : text) {
    if (std::binary_search(alphabet.begin(), alphabet.end(), c)) {
      out.push_back(c);
    } else {
      ++dropped;
    }
  }
  if (removed != nullptr) *removed = dropped;
  return out;
}

std::u32string ExtractAlphabet(const std::vector<std::u32string> &corpus) {
  std::set<char32_t> seen;
  for (const auto &s : corpus) seen.insert(s.begin(), s.end());
  return std::u32string(seen.begin(), seen.end());
}

namespace {

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

void StripCarriageReturn(std::string *line) {
  if (!line->empty() && line->back() == '\r') line->pop_back();
}

}  // namespace

std::vector<std::u32string> ReadMonolingual(std::istream &is, Side side,
                                            const std::string &source) {
  std::vector<std::u32string> out;
  std::string line;
  size_t dropped = 0;
  while (std::getline(is, line)) {
    auto s = Preprocess(line, side);
    if (s) {
      out.push_back(std::move(s->text));
    } else {
      ++dropped;
    }
  }
  if (dropped > 0) {
    LOG(INFO) << source << ": dropped " << dropped
              << " lines empty after preprocessing";
  }
  return out;
}

std::vector<std::u32string> LoadMonolingual(const std::string &path,
                                            Side side) {
  std::ifstream in = OpenInput(path);
  return ReadMonolingual(in, side, path);
}

void WriteMonolingual(std::ostream &os,
                      const std::vector<std::u32string> &sentences) {
  for (const auto &s : sentences) os << EncodeUtf8(s) << '\n';
}

std::vector<ParallelPair> ReadParallel(std::istream &is,
                                       const std::string &source) {
  std::vector<ParallelPair> out;
  std::string line;
  int lineno = 0;
  size_t dropped = 0;
  while (std::getline(is, line)) {
    ++lineno;
    StripCarriageReturn(&line);
    if (Trim(line).empty()) continue;
    auto fields = Split(line, '\t');
    if (fields.size() != 2) {
      throw FormatError(source, lineno,
                        "expected 2 tab-separated columns, found " +
                            std::to_string(fields.size()));
    }
    ParallelPair pair{PreprocessText(DecodeUtf8(fields[0]), Side::kLatin),
                      PreprocessText(DecodeUtf8(fields[1]), Side::kOriginal)};
    if (pair.latin.empty() || pair.original.empty()) {
      ++dropped;
      continue;
    }
    out.push_back(std::move(pair));
  }
  if (dropped > 0) {
    LOG(INFO) << source << ": dropped " << dropped
              << " pairs with an empty side after preprocessing";
  }
  return out;
}

std::vector<ParallelPair> LoadParallel(const std::string &path) {
  std::ifstream in = OpenInput(path);
  return ReadParallel(in, path);
}

void WriteParallel(std::ostream &os, const std::vector<ParallelPair> &pairs) {
  for (const auto &p : pairs) {
    os << EncodeUtf8(p.latin) << '\t' << EncodeUtf8(p.original) << '\n';
  }
}

MappingFile ReadMappingFile(std::istream &is, const std::string &source) {
  MappingFile out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    StripCarriageReturn(&line);
    if (Trim(line).empty() || line[0] == '#') continue;
    auto fields = Split(line, '\t');
    if (line[0] == '@') {
      double value = 0.0;
      if (fields.size() != 2 || !ParseDouble(Trim(fields[1]), &value)) {
        throw FormatError(source, lineno, "expected \"@key<TAB>number\"");
      }
      out.directives[fields[0].substr(1)] = value;
      continue;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw FormatError(source, lineno,
                        "expected \"original<TAB>latin[<TAB>weight]\"");
    }
    MappingEntry entry;
    entry.line = lineno;
    for (char32_t c : DecodeUtf8(Trim(fields[0]))) {
      entry.original.push_back(FoldCase(c));
    }
    for (char32_t c : DecodeUtf8(Trim(fields[1]))) {
      entry.latin.push_back(FoldCase(c));
    }
    if (entry.original.empty() || entry.latin.empty()) {
      throw FormatError(source, lineno, "empty mapping field");
    }
    if (fields.size() == 3 &&
        (!ParseDouble(Trim(fields[2]), &entry.weight) || !(entry.weight >= 0) ||
         !std::isfinite(entry.weight))) {
      throw FormatError(source, lineno, "bad weight \"" + fields[2] + "\"");
    }
    out.entries.push_back(std::move(entry));
  }
  return out;
}

MappingFile LoadMappingFile(const std::string &path) {
  std::ifstream in = OpenInput(path);
  return ReadMappingFile(in, path);
}

void SyntheticChannel::Validate() {
  if (!(insertion_rate >= 0.0 && insertion_rate < 1.0)) {
    throw ConfigError("insertion rate must lie in [0, 1)");
  }
  if (!(deletion_rate >= 0.0 && deletion_rate < 1.0)) {
    throw ConfigError("deletion rate must lie in [0, 1)");
  }
  for (auto &[source, row] : table) {
    std::map<char32_t, double> merged;
    for (const auto &[target, w] : row) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw ConfigError("negative or non-finite channel weight");
      }
      merged[target] += w;
    }
    double total = 0.0;
    for (const auto &[target, w] : merged) total += w;
    if (!(total > 0.0)) {
      throw ConfigError("channel row for U+" + std::to_string(source) +
                        " has zero mass");
    }
    row.clear();
    for (const auto &[target, w] : merged) row.emplace_back(target, w / total);
  }
}

std::u32string SyntheticChannel::Targets() const {
  std::set<char32_t> targets;
  for (const auto &[source, row] : table) {
    for (const auto &[target, w] : row) targets.insert(target);
  }
  return std::u32string(targets.begin(), targets.end());
}

SyntheticChannel SyntheticChannel::FromMappingFile(const MappingFile &file,
                                                   uint64_t seed) {
  SyntheticChannel channel;
  channel.seed = seed;
  for (const auto &[key, value] : file.directives) {
    if (key == "insertion_rate") {
      channel.insertion_rate = value;
    } else if (key == "deletion_rate") {
      channel.deletion_rate = value;
    } else {
      throw ConfigError("unknown channel directive @" + key);
    }
  }
  for (const auto &e : file.entries) {
    if (e.original.size() != 1) {
      throw ConfigError("line " + std::to_string(e.line) +
                        ": channel sources must be single characters");
    }
    double share = e.weight / static_cast<double>(e.latin.size());
    for (char32_t c : e.latin) channel.table[e.original[0]].emplace_back(c, share);
  }
  channel.Validate();
  return channel;
}

SyntheticData GenerateSynthetic(const std::vector<std::u32string> &corpus,
                                const SyntheticChannel &channel, size_t n) {
  if (corpus.empty()) throw DataError("synthetic generation needs a corpus");
  const std::u32string targets = channel.Targets();
  Rng rng(channel.seed);
  SyntheticData out;
  out.latin.reserve(n);
  out.original.reserve(n);
  // Resampling bounds the chance of emitting an empty Latin side.
  constexpr int kMaxAttempts = 100;
  for (size_t i = 0; i < n; ++i) {
    std::u32string o, l;
    for (int attempt = 0; attempt < kMaxAttempts && l.empty(); ++attempt) {
      o = corpus[UniformIndex(rng, corpus.size())];
      l.clear();
      for (char32_t c : o) {
        if (channel.deletion_rate > 0.0 &&
            Uniform01(rng) < channel.deletion_rate) {
          // deleted
        } else if (auto it = channel.table.find(c); it == channel.table.end()) {
          l.push_back(c);
        } else {
          double u = Uniform01(rng), acc = 0.0;
          char32_t pick = it->second.back().first;
          for (const auto &[target, p] : it->second) {
            acc += p;
            if (u < acc) {
              pick = target;
              break;
            }
          }
          l.push_back(pick);
        }
        while (channel.insertion_rate > 0.0 && !targets.empty() &&
               Uniform01(rng) < channel.insertion_rate) {
          l.push_back(targets[UniformIndex(rng, targets.size())]);
        }
      }
    }
    out.latin.push_back(std::move(l));
    out.original.push_back(std::move(o));
  }
  return out;
}

}  // namespace romdec
