// Copyright 2026 The Authors.
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

#ifndef CORESET_RNG_HPP_
#define CORESET_RNG_HPP_

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace coreset {

// MT19937-64 (Matsumoto & Nishimura), seeded with the user's 64-bit seed.
// The engine's output sequence is fixed by the C++ standard; the standard
// distributions are not, so bounded draws below use plain rejection
// sampling on the raw 64-bit output. Any implementation of MT19937-64 plus
// these two functions reproduces our selections exactly.
using Rng = std::mt19937_64;

// Uniform integer in [0, n). Rejects raw draws below 2^64 mod n so that
// the remaining range is a multiple of n.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// Fisher-Yates, drawing the swap partner for position i from [0, i].
inline std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

}  // namespace coreset

#endif  // CORESET_RNG_HPP_
