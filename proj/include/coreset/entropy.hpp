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

#ifndef CORESET_ENTROPY_HPP_
#define CORESET_ENTROPY_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "coreset/manifest.hpp"

namespace coreset {

/// Shannon entropy -sum p_i log(p_i) of the distribution given by `counts`.
/// Zero counts contribute nothing; an all-zero table has entropy 0.
double entropy(std::span<const double> counts, double base = 2.0);
double entropy(const std::map<std::string, std::uint64_t>& counts,
               double base = 2.0);

/// Phoneme-token and speaker occurrence counts of a subset. Speakers are
/// counted once per utterance.
struct CountTable {
  std::map<std::string, std::uint64_t> phoneme_counts;
  std::map<std::string, std::uint64_t> speaker_counts;
  std::uint64_t total_phonemes = 0;
  std::uint64_t total_utterances = 0;
};

CountTable count_table(const Manifest& manifest,
                       std::span<const std::size_t> indices);

}  // namespace coreset

#endif  // CORESET_ENTROPY_HPP_
