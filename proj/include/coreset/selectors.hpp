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

// Budget-constrained subset selectors.
//
// Every selector follows the same loop. A candidate is proposed; if adding
// it would push the total duration past t_max the budget policy decides:
//
//   stop_on_first_overflow  selection ends (the default; the first random
//                           draw exceeding t_max yields an empty set, and an
//                           oversized argmax winner ends selection even when
//                           smaller candidates remain).
//   skip_and_continue       the candidate is dropped for good and a new one
//                           is proposed. A dropped candidate can never fit
//                           later because the remaining budget only shrinks,
//                           so the argmax scans simply ignore candidates that
//                           no longer fit.
//
// Ties in every argmax go to the lowest manifest index. The candidate scan
// can run on several threads; the reduction keeps (value, index) order, so
// results do not depend on the thread count.

#ifndef CORESET_SELECTORS_HPP_
#define CORESET_SELECTORS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coreset/features.hpp"
#include "coreset/manifest.hpp"

namespace coreset {

enum class Method {
  kDiversity,
  kPhonemeBalance,
  kInputBalance,
  kRandom,
  kFarthestPoint,
};

enum class OverflowPolicy { kStopOnFirstOverflow, kSkipAndContinue };

// Canonical names are snake_case ("phoneme_balance", "skip_and_continue");
// the parsers also accept the hyphenated CLI spelling.
std::string_view to_string(Method m);
std::string_view to_string(OverflowPolicy p);
std::optional<Method> parse_method(std::string_view name);
std::optional<OverflowPolicy> parse_overflow_policy(std::string_view name);

// Methods whose result depends on the seed.
bool is_stochastic(Method m);
bool needs_features(Method m);

struct SelectionBudget {
  double t_max = 0.0;
  OverflowPolicy overflow_policy = OverflowPolicy::kStopOnFirstOverflow;

  void validate() const;
};

struct SelectionStep {
  std::size_t index = 0;
  // Objective after adding `index`: V(S) for diversity, the entropy
  // objective for the balance methods, the chosen point's squared distance
  // to its nearest previously selected point for farthest_point (0 for the
  // first pick), and phoneme entropy of the subset for random.
  double objective = 0.0;
  double cumulative_duration = 0.0;
};

struct SelectionResult {
  Method method = Method::kDiversity;
  std::vector<std::size_t> indices;  // in selection order
  std::vector<SelectionStep> per_step;
  std::uint64_t seed = 0;
  SelectionBudget budget;
  std::size_t manifest_size = 0;
  std::uint64_t manifest_fingerprint = 0;

  double total_duration() const {
    return per_step.empty() ? 0.0 : per_step.back().cumulative_duration;
  }

  friend bool operator==(const SelectionResult& a, const SelectionResult& b);
};

struct ExecutionOptions {
  // Worker count for candidate scans; 0 means hardware concurrency.
  std::size_t threads = 1;
};

enum class EntropyObjective { kPhoneme, kPhonemePlusSpeaker };

struct EntropyBalanceOptions {
  EntropyObjective objective = EntropyObjective::kPhoneme;
  double phoneme_weight = 1.0;
  double speaker_weight = 1.0;
  // Count each utterance's speaker with its duration instead of 1.
  bool duration_weighted_speakers = false;
};

/// Greedy max-sum diversity. The first item is drawn uniformly from all
/// records; each later item maximizes sum_{y in S} ||x - y||^2.
SelectionResult select_diversity(const FeatureMatrix& features,
                                 const Manifest& manifest,
                                 const SelectionBudget& budget,
                                 std::uint64_t seed,
                                 const ExecutionOptions& exec = {});

/// Greedy max-min (farthest point) variant of select_diversity.
SelectionResult select_farthest_point(const FeatureMatrix& features,
                                      const Manifest& manifest,
                                      const SelectionBudget& budget,
                                      std::uint64_t seed,
                                      const ExecutionOptions& exec = {});

/// Greedy entropy balance from the empty set. Each step adds the utterance
/// maximizing phoneme entropy (kPhoneme) or the weighted sum of phoneme and
/// speaker entropy (kPhonemePlusSpeaker) of the enlarged subset. The seed is
/// recorded but not used.
SelectionResult select_entropy_balance(const Manifest& manifest,
                                       const EntropyBalanceOptions& options,
                                       const SelectionBudget& budget,
                                       std::uint64_t seed,
                                       const ExecutionOptions& exec = {});

/// Uniform sampling without replacement (seeded Fisher-Yates order).
SelectionResult select_random(const Manifest& manifest,
                              const SelectionBudget& budget,
                              std::uint64_t seed);

/// Dispatch by method. `features` is required for diversity and
/// farthest_point and ignored otherwise.
SelectionResult select(Method method, const Manifest& manifest,
                       const FeatureMatrix* features,
                       const SelectionBudget& budget, std::uint64_t seed,
                       const ExecutionOptions& exec = {},
                       const EntropyBalanceOptions& entropy_options = {});

}  // namespace coreset

#endif  // CORESET_SELECTORS_HPP_
