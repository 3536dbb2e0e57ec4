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

#ifndef CORESET_REPORT_HPP_
#define CORESET_REPORT_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coreset/features.hpp"
#include "coreset/manifest.hpp"
#include "coreset/selectors.hpp"

namespace coreset {

inline constexpr int kReportVersion = 1;
inline constexpr double kReportEntropyBase = 2.0;

/// Quality metrics of one subset. All zero for the empty subset.
///
/// Entropies are base 2. Speakers are counted once per utterance.
/// `phoneme_coverage` is (distinct phonemes in the subset) / (distinct
/// phonemes in the manifest), or 0 when the manifest has no phonemes.
/// `diversity` is V(S) over ordered pairs and `mean_pairwise_sq_distance`
/// is V(S) / (n (n - 1)) for n >= 2, else 0; both are present only when
/// features were supplied.
struct SubsetMetrics {
  double total_duration = 0.0;
  std::size_t utterances = 0;
  std::size_t distinct_speakers = 0;
  double phoneme_entropy = 0.0;
  double speaker_entropy = 0.0;
  double phoneme_coverage = 0.0;
  std::optional<double> diversity;
  std::optional<double> mean_pairwise_sq_distance;

  friend bool operator==(const SubsetMetrics&, const SubsetMetrics&) = default;
};

SubsetMetrics evaluate_subset(const Manifest& manifest,
                              const FeatureMatrix* features,
                              std::span<const std::size_t> indices);

struct ComparisonRow {
  Method method;
  std::size_t selected = 0;
  SubsetMetrics metrics;
};

/// One row per result, sorted by method name (stable for equal names).
/// Throws ShapeMismatchError if a result was produced on another manifest.
std::vector<ComparisonRow> compare_methods(
    std::span<const SelectionResult> results, const Manifest& manifest,
    const FeatureMatrix* features);

// ---- serialization -------------------------------------------------------

// Single-line JSON objects, same syntax as manifest lines.
std::string metrics_json(const SubsetMetrics& metrics);

/// Full selection report: method, seed, budget, the selected ids and
/// indices in order, per-step values and the subset metrics.
std::string selection_report_json(const SelectionResult& result,
                                  const Manifest& manifest,
                                  const SubsetMetrics& metrics);

/// Reads back the selection part of a report written by
/// selection_report_json. Selected ids are resolved against `manifest`.
SelectionResult parse_selection_report(const std::string& text,
                                       const Manifest& manifest);

std::string evaluation_report_json(const SubsetMetrics& metrics,
                                   std::span<const std::size_t> indices);

// Delimited tables for plotting.
std::string per_step_csv(const SelectionResult& result, const Manifest& manifest);
std::string comparison_csv(std::span<const ComparisonRow> rows);

}  // namespace coreset

#endif  // CORESET_REPORT_HPP_
