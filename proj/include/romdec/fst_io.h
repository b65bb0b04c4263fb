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

// Text interchange format for machines: one arc per line
// "src<TAB>dst<TAB>ilabel<TAB>olabel<TAB>weight", one final state per line
// "state<TAB>weight". The start state's arcs come first, so the first
// line's source is the start state. Labels are numeric.

#ifndef ROMDEC_FST_IO_H_
#define ROMDEC_FST_IO_H_

#include <iosfwd>
#include <string>

#include "romdec/fst.h"

namespace romdec {

void WriteFstText(std::ostream &os, const StdFst &fst);
void WriteFstText(std::ostream &os, const LogFst &fst);
StdFst ReadStdFstText(std::istream &is, const std::string &source);
LogFst ReadLogFstText(std::istream &is, const std::string &source);

}  // namespace romdec

#endif  // ROMDEC_FST_IO_H_
