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

// Platform-independent draws from mt19937_64. The standard distributions
// are implementation-defined, so seeded runs use these instead.

#ifndef ROMDEC_RANDOM_H_
#define ROMDEC_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace romdec {

using Rng = std::mt19937_64;

// Uniform in [0, 1) with 53 bits of precision.
inline double Uniform01(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [0, n); n must be positive.
inline size_t UniformIndex(Rng &rng, size_t n) {
  size_t i = static_cast<size_t>(Uniform01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

}  // namespace romdec

#endif  // ROMDEC_RANDOM_H_
