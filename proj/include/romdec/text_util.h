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

#ifndef ROMDEC_TEXT_UTIL_H_
#define ROMDEC_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace romdec {

// Shortest "%.17g" rendering; parses back to the identical double.
std::string FormatDouble(double x);

// strtod over the whole field; false on trailing garbage or empty input.
bool ParseDouble(std::string_view text, double *out);
bool ParseInt(std::string_view text, long long *out);

std::vector<std::string> Split(std::string_view text, char sep);
std::string_view Trim(std::string_view text);

}  // namespace romdec

#endif  // ROMDEC_TEXT_UTIL_H_
