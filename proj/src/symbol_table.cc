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

#include "romdec/symbol_table.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "romdec/errors.h"
#include "romdec/utf8.h"

namespace romdec {

SymbolTable SymbolTable::FromAlphabet(std::u32string_view alphabet) {
  std::u32string chars(alphabet);
  std::sort(chars.begin(), chars.end());
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  SymbolTable table;
  for (char32_t c : chars) table.AddSymbol(c);
  return table;
}

Label SymbolTable::AddSymbol(char32_t c) {
  auto it = index_.find(c);
  if (it != index_.end()) return it->second;
  symbols_.push_back(c);
  const Label label = static_cast<Label>(symbols_.size());
  index_.emplace(c, label);
  return label;
}

Label SymbolTable::Find(char32_t c) const {
  auto it = index_.find(c);
  return it == index_.end() ? kNoLabel : it->second;
}

std::string SymbolToken(char32_t c) {
  switch (c) {
    case U' ':
      return "<space>";
    case U'\t':
      return "<tab>";
    default:
      return EncodeUtf8(c);
  }
}

char32_t ParseSymbolToken(std::string_view token) {
  if (token == "<space>") return U' ';
  if (token == "<tab>") return U'\t';
  const std::u32string decoded = DecodeUtf8(token);
  if (decoded.size() != 1) {
    throw DataError("expected a single character, got '" + std::string(token) +
                    "'");
  }
  return decoded[0];
}

void SymbolTable::WriteText(std::ostream &os) const {
  os << "<eps>\t0\n";
  for (size_t i = 0; i < symbols_.size(); ++i) {
    os << SymbolToken(symbols_[i]) << '\t' << (i + 1) << '\n';
  }
}

SymbolTable SymbolTable::ReadText(std::istream &is, const std::string &source) {
  SymbolTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError(source, lineno, "expected 'symbol<TAB>id'");
    }
    const std::string token = line.substr(0, tab);
    Label id = 0;
    try {
      id = std::stoi(line.substr(tab + 1));
    } catch (const std::exception &) {
      throw FormatError(source, lineno, "bad id");
    }
    if (token == "<eps>") {
      if (id != 0) throw FormatError(source, lineno, "<eps> must have id 0");
      continue;
    }
    char32_t c = 0;
    try {
      c = ParseSymbolToken(token);
    } catch (const DataError &e) {
      throw FormatError(source, lineno, e.what());
    }
    if (id != table.Size() || table.Contains(c)) {
      throw FormatError(source, lineno, "ids must be dense and unique");
    }
    table.AddSymbol(c);
  }
  return table;
}

}  // namespace romdec
