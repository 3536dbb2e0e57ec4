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

#include "coreset/entropy.hpp"

#include <cmath>
#include <vector>

#include "coreset/error.hpp"

namespace coreset {

double entropy(std::span<const double> counts, double base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw InvalidArgumentError("entropy base must be > 1");
  }
  double total = 0.0;
  for (double c : counts) {
    if (c < 0.0) throw InvalidArgumentError("negative count");
    total += c;
  }
  if (total == 0.0) return 0.0;
  // log2 keeps powers of two exact, so uniform tables give exact results.
  double h = 0.0;
  for (double c : counts) {
    if (c == 0.0) continue;
    const double p = c / total;
    h -= p * std::log2(p);
  }
  if (base != 2.0) h /= std::log2(base);
  return h == 0.0 ? 0.0 : h;  // no -0.0
}

double entropy(const std::map<std::string, std::uint64_t>& counts,
               double base) {
  std::vector<double> v;
  v.reserve(counts.size());
  for (const auto& [_, c] : counts) v.push_back(static_cast<double>(c));
  return entropy(v, base);
}

CountTable count_table(const Manifest& manifest,
                       std::span<const std::size_t> indices) {
  CountTable t;
  for (auto i : indices) {
    const auto& r = manifest.at(i);
    for (const auto& p : r.phonemes) ++t.phoneme_counts[p];
    ++t.speaker_counts[r.speaker];
    t.total_phonemes += r.phonemes.size();
    ++t.total_utterances;
  }
  return t;
}

}  // namespace coreset
