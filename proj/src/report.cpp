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

#include "coreset/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "coreset/diversity.hpp"
#include "coreset/entropy.hpp"
#include "coreset/error.hpp"
#include "json.hpp"

namespace coreset {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

ordered_json metrics_object(const SubsetMetrics& m) {
  ordered_json o;
  o["total_duration_sec"] = m.total_duration;
  o["utterances"] = m.utterances;
  o["distinct_speakers"] = m.distinct_speakers;
  o["phoneme_entropy"] = m.phoneme_entropy;
  o["speaker_entropy"] = m.speaker_entropy;
  o["phoneme_coverage"] = m.phoneme_coverage;
  if (m.diversity) o["diversity"] = *m.diversity;
  if (m.mean_pairwise_sq_distance) {
    o["mean_pairwise_sq_distance"] = *m.mean_pairwise_sq_distance;
  }
  return o;
}

// Shortest round-trip text for a double, matching the JSON output.
std::string num(double v) { return nlohmann::json(v).dump(); }

// RFC 4180 quoting for free-text fields.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

SubsetMetrics evaluate_subset(const Manifest& manifest,
                              const FeatureMatrix* features,
                              std::span<const std::size_t> indices) {
  if (features != nullptr && features->rows() != manifest.size()) {
    throw ShapeMismatchError(
        "feature rows (" + std::to_string(features->rows()) +
        ") != manifest records (" + std::to_string(manifest.size()) + ")");
  }
  std::vector<std::uint8_t> seen(manifest.size(), 0);
  for (auto i : indices) {
    if (i >= manifest.size()) throw IndexOutOfRangeError(i, manifest.size());
    if (seen[i]) {
      throw InvalidArgumentError("index " + std::to_string(i) +
                                 " appears twice in the subset");
    }
    seen[i] = 1;
  }

  SubsetMetrics m;
  if (features != nullptr) {
    m.diversity = 0.0;
    m.mean_pairwise_sq_distance = 0.0;
  }
  if (indices.empty()) return m;

  m.total_duration = total_duration(manifest, indices);
  m.utterances = indices.size();

  std::vector<double> phoneme_counts(manifest.phoneme_inventory().size(), 0.0);
  std::vector<double> speaker_counts(manifest.speaker_inventory().size(), 0.0);
  for (auto i : indices) {
    for (auto id : manifest.phoneme_ids(i)) phoneme_counts[id] += 1.0;
    speaker_counts[manifest.speaker_id(i)] += 1.0;
  }
  m.distinct_speakers = static_cast<std::size_t>(
      std::count_if(speaker_counts.begin(), speaker_counts.end(),
                    [](double c) { return c > 0.0; }));
  m.phoneme_entropy = entropy(phoneme_counts, kReportEntropyBase);
  m.speaker_entropy = entropy(speaker_counts, kReportEntropyBase);
  if (!phoneme_counts.empty()) {
    const auto covered = std::count_if(phoneme_counts.begin(), phoneme_counts.end(),
                                       [](double c) { return c > 0.0; });
    m.phoneme_coverage =
        static_cast<double>(covered) / static_cast<double>(phoneme_counts.size());
  }

  if (features != nullptr) {
    MomentAccumulator acc(features->dim());
    for (auto i : indices) acc.absorb(features->row(i));
    m.diversity = acc.diversity_total();
    const double n = static_cast<double>(indices.size());
    m.mean_pairwise_sq_distance = indices.size() >= 2 ? *m.diversity / (n * (n - 1)) : 0.0;
  }
  return m;
}

std::vector<ComparisonRow> compare_methods(
    std::span<const SelectionResult> results, const Manifest& manifest,
    const FeatureMatrix* features) {
  std::vector<ComparisonRow> rows;
  rows.reserve(results.size());
  for (const auto& r : results) {
    if (r.manifest_size != manifest.size() ||
        r.manifest_fingerprint != manifest.fingerprint()) {
      throw ShapeMismatchError(std::string(to_string(r.method)) +
                               " result was produced on a different manifest");
    }
    rows.push_back({r.method, r.indices.size(),
                    evaluate_subset(manifest, features, r.indices)});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return to_string(a.method) < to_string(b.method);
  });
  return rows;
}

std::string metrics_json(const SubsetMetrics& metrics) {
  return metrics_object(metrics).dump();
}

std::string selection_report_json(const SelectionResult& result,
                                  const Manifest& manifest,
                                  const SubsetMetrics& metrics) {
  ordered_json o;
  o["report_version"] = kReportVersion;
  o["kind"] = "selection";
  o["method"] = to_string(result.method);
  o["seed"] = result.seed;
  o["t_max_sec"] = result.budget.t_max;
  o["overflow_policy"] = to_string(result.budget.overflow_policy);
  o["entropy_base"] = kReportEntropyBase;
  o["manifest_records"] = result.manifest_size;
  o["manifest_fingerprint"] = hex64(result.manifest_fingerprint);
  ordered_json ids = ordered_json::array();
  for (auto i : result.indices) ids.push_back(manifest.at(i).id);
  o["selected_ids"] = std::move(ids);
  o["selected_indices"] = result.indices;
  ordered_json steps = ordered_json::array();
  for (const auto& s : result.per_step) {
    ordered_json step;
    step["index"] = s.index;
    step["objective"] = s.objective;
    step["cumulative_duration_sec"] = s.cumulative_duration;
    steps.push_back(std::move(step));
  }
  o["per_step"] = std::move(steps);
  o["metrics"] = metrics_object(metrics);
  return o.dump();
}

SelectionResult parse_selection_report(const std::string& text,
                                       const Manifest& manifest) {
  nlohmann::json o;
  try {
    o = nlohmann::json::parse(text);
    if (o.at("report_version").get<int>() != kReportVersion) {
      throw InvalidArgumentError("unsupported report_version");
    }
    if (o.at("kind").get<std::string>() != "selection") {
      throw InvalidArgumentError("not a selection report");
    }
    SelectionResult r;
    const auto method = parse_method(o.at("method").get<std::string>());
    const auto policy = parse_overflow_policy(o.at("overflow_policy").get<std::string>());
    if (!method || !policy) throw InvalidArgumentError("unknown method or policy");
    r.method = *method;
    r.budget.overflow_policy = *policy;
    r.budget.t_max = o.at("t_max_sec").get<double>();
    r.seed = o.at("seed").get<std::uint64_t>();
    r.manifest_size = o.at("manifest_records").get<std::size_t>();
    r.manifest_fingerprint =
        std::stoull(o.at("manifest_fingerprint").get<std::string>(), nullptr, 16);
    if (r.manifest_size != manifest.size() ||
        r.manifest_fingerprint != manifest.fingerprint()) {
      throw ShapeMismatchError("selection report was produced on a different manifest");
    }
    const auto& ids = o.at("selected_ids");
    for (const auto& id : ids) {
      auto pos = manifest.find(id.get<std::string>());
      if (!pos) throw InvalidArgumentError("unknown id " + id.dump());
      r.indices.push_back(*pos);
    }
    for (const auto& s : o.at("per_step")) {
      r.per_step.push_back({s.at("index").get<std::size_t>(),
                            s.at("objective").get<double>(),
                            s.at("cumulative_duration_sec").get<double>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgumentError(std::string("malformed selection report: ") + e.what());
  }
}

std::string evaluation_report_json(const SubsetMetrics& metrics,
                                   std::span<const std::size_t> indices) {
  ordered_json o;
  o["report_version"] = kReportVersion;
  o["kind"] = "evaluation";
  o["entropy_base"] = kReportEntropyBase;
  o["subset_size"] = indices.size();
  o["metrics"] = metrics_object(metrics);
  return o.dump();
}

std::string per_step_csv(const SelectionResult& result, const Manifest& manifest) {
  std::ostringstream out;
  out << "step,index,id,objective,cumulative_duration_sec\n";
  for (std::size_t k = 0; k < result.per_step.size(); ++k) {
    const auto& s = result.per_step[k];
    out << k << ',' << s.index << ',' << csv_field(manifest.at(s.index).id) << ','
        << num(s.objective) << ',' << num(s.cumulative_duration) << '\n';
  }
  return out.str();
}

std::string comparison_csv(std::span<const ComparisonRow> rows) {
  std::ostringstream out;
  out << "method,selected,total_duration_sec,distinct_speakers,phoneme_entropy,"
         "speaker_entropy,phoneme_coverage,diversity,mean_pairwise_sq_distance\n";
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    out << to_string(r.method) << ',' << r.selected << ',' << num(m.total_duration)
        << ',' << m.distinct_speakers << ',' << num(m.phoneme_entropy) << ','
        << num(m.speaker_entropy) << ',' << num(m.phoneme_coverage) << ','
        << (m.diversity ? num(*m.diversity) : "") << ','
        << (m.mean_pairwise_sq_distance ? num(*m.mean_pairwise_sq_distance) : "")
        << '\n';
  }
  return out.str();
}

}  // namespace coreset
