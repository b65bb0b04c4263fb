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
// UTF-8 <-> code point conversion. Sequences are handled as std::u32string
// throughout the library; UTF-8 only appears at file boundaries.

#ifndef ROMDEC_UTF8_H_
#define ROMDEC_UTF8_H_

#include <string>
#include <string_view>

namespace romdec {

// Invalid byte sequences are skipped.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t c);

}  // namespace romdec

#endif  // ROMDEC_UTF8_H_
