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

#ifndef ROMDEC_ERRORS_H_
#define ROMDEC_ERRORS_H_

#include <stdexcept>
#include <string>

#include "romdec/utf8.h"

namespace romdec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad command line or configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or unusable input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A malformed line in a text file; `line()` is 1-based.
class FormatError : public DataError {
 public:
  FormatError(const std::string &source, int line, const std::string &what)
      : DataError(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A character that is not in the symbol table; `position()` is 0-based.
class UnknownSymbolError : public DataError {
 public:
  UnknownSymbolError(size_t position, char32_t symbol)
      : DataError("unknown symbol \"" + EncodeUtf8(symbol) + "\" (U+" +
                  ToHex(symbol) + ") at position " + std::to_string(position)),
        position_(position),
        symbol_(symbol) {}
  size_t position() const { return position_; }
  char32_t symbol() const { return symbol_; }

 private:
  static std::string ToHex(char32_t c) {
    static const char kDigits[] = "0123456789ABCDEF";
    std::string s;
    for (int shift = 12; shift >= 0; shift -= 4) s += kDigits[(c >> shift) & 0xF];
    if (c > 0xFFFF) s = kDigits[(c >> 16) & 0xF] + s;
    return s;
  }
  size_t position_;
  char32_t symbol_;
};

// Structural problem with a machine (cycle in a lattice, incompatible
// symbol tables, unsupported failure-label shape).
class FstError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace romdec

#endif  // ROMDEC_ERRORS_H_
