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

#ifndef ROMDEC_SYMBOL_TABLE_H_
#define ROMDEC_SYMBOL_TABLE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace romdec {

using Label = int32_t;

inline constexpr Label kEpsilon = 0;
inline constexpr Label kNoLabel = -1;

// Maps single characters to dense labels 1..N. Label 0 is epsilon and never
// names a character.
class SymbolTable {
 public:
  SymbolTable() = default;

  // Builds a table over the distinct characters of `alphabet`, assigned in
  // ascending code point order.
  static SymbolTable FromAlphabet(std::u32string_view alphabet);

  Label AddSymbol(char32_t c);
  Label Find(char32_t c) const;
  char32_t Symbol(Label label) const { return symbols_.at(label - 1); }
  bool Contains(char32_t c) const { return Find(c) != kNoLabel; }

  // Number of labels including epsilon.
  Label Size() const { return static_cast<Label>(symbols_.size()) + 1; }
  size_t NumSymbols() const { return symbols_.size(); }
  const std::u32string &Alphabet() const { return symbols_; }

  bool operator==(const SymbolTable &other) const {
    return symbols_ == other.symbols_;
  }

  // Two columns, "symbol<TAB>id". Space is written as <space>.
  void WriteText(std::ostream &os) const;
  static SymbolTable ReadText(std::istream &is, const std::string &source);

 private:
  std::u32string symbols_;
  std::unordered_map<char32_t, Label> index_;
};

// Printable token for a character in the text formats (<space>, <tab>).
std::string SymbolToken(char32_t c);
// Inverse of SymbolToken; throws DataError on a multi-character token.
char32_t ParseSymbolToken(std::string_view token);

}  // namespace romdec

#endif  // ROMDEC_SYMBOL_TABLE_H_
