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

#include "romdec/fst_io.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <vector>

#include "romdec/errors.h"
#include "romdec/text_util.h"

namespace romdec {
namespace {

template <class W>
void WriteText(std::ostream &os, const VectorFst<W> &fst) {
  if (fst.Start() == kNoState) return;
  std::vector<StateId> order{fst.Start()};
  for (StateId s = 0; s < fst.NumStates(); ++s) {
    if (s != fst.Start()) order.push_back(s);
  }
  for (StateId s : order) {
    for (const auto &arc : fst.Arcs(s)) {
      os << s << '\t' << arc.nextstate << '\t' << arc.ilabel << '\t'
         << arc.olabel << '\t' << FormatDouble(arc.weight.Value()) << '\n';
    }
  }
  for (StateId s : order) {
    if (fst.IsFinal(s)) {
      os << s << '\t' << FormatDouble(fst.Final(s).Value()) << '\n';
    }
  }
}

template <class W>
VectorFst<W> ReadText(std::istream &is, const std::string &source) {
  VectorFst<W> fst;
  auto ensure = [&fst](long long s) {
    while (fst.NumStates() <= s) fst.AddState();
  };
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (Trim(line).empty()) continue;
    const auto f = Split(line, '\t');
    long long v[4] = {0, 0, 0, 0};
    double w = 0.0;
    if (f.size() == 5) {
      for (int i = 0; i < 4; ++i) {
        if (!ParseInt(f[i], &v[i]) || v[i] < 0) {
          throw FormatError(source, lineno, "bad integer field");
        }
      }
      if (!ParseDouble(f[4], &w)) throw FormatError(source, lineno, "bad weight");
      ensure(std::max(v[0], v[1]));
      if (fst.Start() == kNoState) fst.SetStart(v[0]);
      fst.AddArc(v[0], {static_cast<Label>(v[2]), static_cast<Label>(v[3]),
                        W(w), static_cast<StateId>(v[1])});
    } else if (f.size() == 2) {
      if (!ParseInt(f[0], &v[0]) || v[0] < 0 || !ParseDouble(f[1], &w)) {
        throw FormatError(source, lineno, "bad final-state line");
      }
      ensure(v[0]);
      if (fst.Start() == kNoState) fst.SetStart(v[0]);
      fst.SetFinal(v[0], W(w));
    } else {
      throw FormatError(source, lineno, "expected 2 or 5 tab-separated fields");
    }
  }
  return fst;
}

}  // namespace

void WriteFstText(std::ostream &os, const StdFst &fst) { WriteText(os, fst); }
void WriteFstText(std::ostream &os, const LogFst &fst) { WriteText(os, fst); }

StdFst ReadStdFstText(std::istream &is, const std::string &source) {
  return ReadText<TropicalWeight>(is, source);
}

LogFst ReadLogFstText(std::istream &is, const std::string &source) {
  return ReadText<LogWeight>(is, source);
}

}  // namespace romdec
