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

// Viterbi decoding of romanized text through LM ∘ emission ∘ A(l).

#ifndef ROMDEC_DECODE_H_
#define ROMDEC_DECODE_H_

#include <string>
#include <vector>

#include "romdec/channel.h"
#include "romdec/fst.h"
#include "romdec/ngram.h"

namespace romdec {

struct Decoded {
  bool ok = false;
  std::u32string source;     // ô, epsilons removed
  std::vector<int32_t> ops;  // ê, edit-op ids along the path
  double score = kInfinity;  // tropical path weight
  std::string error;         // why decoding failed, when !ok
};

// Decodes `latin` with a tropical LM acceptor `lm` and emission transducer
// `emission`; `table` maps path labels back to edit ops.
Decoded Decode(const StdFst &lm, const StdFst &emission,
               const EditOpTable &table, std::u32string_view latin);

// Reapplies `ops` to `source`, producing the Latin string they emit.
// Returns false when the ops do not consume `source` exactly.
bool ApplyEdits(std::u32string_view source, const std::vector<int32_t> &ops,
                const EditOpTable &table, std::u32string *latin);

// Holds the compiled machines for repeated decoding.
class Decoder {
 public:
  Decoder(const NgramModel &lm, const EmissionParams &params, int delay);

  // Same result as Decode() on the compiled machines, found by best-first
  // search without building the whole lattice.
  Decoded operator()(std::u32string_view latin) const;

  // Decode() on the full lattice.
  Decoded Exhaustive(std::u32string_view latin) const {
    return Decode(lm_, emission_, *table_, latin);
  }

  // Decodes every sentence with `workers` threads; output order matches.
  std::vector<Decoded> DecodeAll(const std::vector<std::u32string> &latin,
                                 int workers = 1) const;

 private:
  StdFst lm_;
  StdFst emission_;
  std::shared_ptr<const EditOpTable> table_;
  Label num_labels_ = 0;
  std::vector<std::pair<double, StateId>> step_;  // [state * labels + c]
  std::vector<double> stop_;                      // end-of-sentence cost
};

}  // namespace romdec

#endif  // ROMDEC_DECODE_H_
