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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "coreset/diversity.hpp"
#include "coreset/error.hpp"
#include "coreset/report.hpp"
#include "json.hpp"
#include "support.hpp"

namespace coreset {
namespace {

using testing::make_record;
using testing::Vec;

Manifest six_records() {
  return Manifest({make_record("r0", "s1", 1.0, {"a", "b"}),
                   make_record("r1", "s1", 2.0, {"a", "a"}),
                   make_record("r2", "s2", 1.5, {"c"}),
                   make_record("r3", "s2", 0.5, {"b", "c", "d"}),
                   make_record("r4", "s3", 1.0, {"a"}),
                   make_record("r5", "s1", 3.0, {"d", "d", "d"})});
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

TEST(EvaluateSubsetTest, HandComputedEntropies) {
  const auto m = six_records();
  const auto all = evaluate_subset(m, nullptr, iota_indices(6));
  // phonemes a:4 b:2 c:2 d:4 of 12 -> 2(1/3)log2(3) + 2(1/6)log2(6)
  EXPECT_NEAR(all.phoneme_entropy, std::log2(3.0) + 1.0 / 3.0, 1e-12);
  // speakers s1:3 s2:2 s3:1 of 6
  EXPECT_NEAR(all.speaker_entropy,
              0.5 + (1.0 / 3.0) * std::log2(3.0) + (1.0 / 6.0) * std::log2(6.0), 1e-12);
  EXPECT_EQ(all.phoneme_coverage, 1.0);
  EXPECT_EQ(all.utterances, 6u);
  EXPECT_EQ(all.distinct_speakers, 3u);
  EXPECT_DOUBLE_EQ(all.total_duration, 9.0);
  EXPECT_FALSE(all.diversity.has_value());

  const auto pair = evaluate_subset(m, nullptr, std::vector<std::size_t>{0, 2});
  EXPECT_NEAR(pair.phoneme_entropy, std::log2(3.0), 1e-12);
  EXPECT_EQ(pair.speaker_entropy, 1.0);
  EXPECT_EQ(pair.phoneme_coverage, 0.75);
}

TEST(EvaluateSubsetTest, EmptySubsetIsAllZero) {
  const auto m = six_records();
  auto f = testing::matrix_from_rows(std::vector<Vec>(6, Vec{1.0, 2.0}));
  const auto e = evaluate_subset(m, &f, std::vector<std::size_t>{});
  EXPECT_EQ(e.total_duration, 0.0);
  EXPECT_EQ(e.utterances, 0u);
  EXPECT_EQ(e.distinct_speakers, 0u);
  EXPECT_EQ(e.phoneme_entropy, 0.0);
  EXPECT_EQ(e.speaker_entropy, 0.0);
  EXPECT_EQ(e.phoneme_coverage, 0.0);
  EXPECT_EQ(e.diversity, 0.0);
  EXPECT_EQ(e.mean_pairwise_sq_distance, 0.0);
}

TEST(EvaluateSubsetTest, DiversityMatchesAccumulatorAndBruteForce) {
  std::mt19937_64 rng(12);
  const auto m = testing::random_manifest(rng, 30, 5, 4);
  const auto f = testing::random_matrix(rng, 30, 7);
  const auto rows = testing::rows_of(f);
  const std::vector<std::size_t> subset = {3, 9, 1, 22, 17, 5};
  const auto e = evaluate_subset(m, &f, subset);
  MomentAccumulator acc(7);
  std::vector<Vec> set;
  for (auto i : subset) {
    acc.absorb(f.row(i));
    set.push_back(rows[i]);
  }
  ASSERT_TRUE(e.diversity.has_value());
  EXPECT_TRUE(testing::rel_close(*e.diversity, acc.diversity_total(), 1e-9));
  EXPECT_TRUE(testing::rel_close(*e.diversity, testing::brute_force_diversity(set), 1e-9));
  EXPECT_DOUBLE_EQ(*e.mean_pairwise_sq_distance, *e.diversity / (6.0 * 5.0));

  const auto one = evaluate_subset(m, &f, std::vector<std::size_t>{4});
  EXPECT_EQ(one.mean_pairwise_sq_distance, 0.0);
}

TEST(EvaluateSubsetTest, Errors) {
  const auto m = six_records();
  EXPECT_THROW(evaluate_subset(m, nullptr, std::vector<std::size_t>{6}), IndexOutOfRangeError);
  EXPECT_THROW(evaluate_subset(m, nullptr, std::vector<std::size_t>{1, 1}),
               InvalidArgumentError);
  auto f = testing::matrix_from_rows({{1.0}});
  EXPECT_THROW(evaluate_subset(m, &f, std::vector<std::size_t>{0}), ShapeMismatchError);
}

TEST(EvaluateSubsetTest, CoverageMonotoneUnderInclusion) {
  std::mt19937_64 rng(1);
  const auto m = testing::random_manifest(rng, 40, 25, 4, 0.5, 2.0, 4);
  for (int trial = 0; trial < 50; ++trial) {
    auto order = iota_indices(40);
    std::shuffle(order.begin(), order.end(), rng);
    double prev = 0.0;
    std::vector<std::size_t> subset;
    for (auto i : order) {
      subset.push_back(i);
      const double c = evaluate_subset(m, nullptr, subset).phoneme_coverage;
      EXPECT_GE(c, prev);
      prev = c;
    }
    EXPECT_EQ(prev, 1.0);
  }
}

SelectionResult labelled(Method method, std::vector<std::size_t> indices, const Manifest& m) {
  SelectionResult r;
  r.method = method;
  r.indices = std::move(indices);
  r.manifest_size = m.size();
  r.manifest_fingerprint = m.fingerprint();
  r.budget.t_max = 100.0;
  return r;
}

TEST(CompareMethodsTest, SingleResultSingleRow) {
  const auto m = six_records();
  std::vector<SelectionResult> results{labelled(Method::kRandom, {0, 1}, m)};
  auto rows = compare_methods(results, m, nullptr);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].selected, 2u);
}

TEST(CompareMethodsTest, MetricsDependOnlyOnIndices) {
  const auto m = six_records();
  auto f = testing::matrix_from_rows({{0}, {1}, {2}, {3}, {4}, {5}});
  std::vector<SelectionResult> results{labelled(Method::kRandom, {0, 3, 5}, m),
                                       labelled(Method::kDiversity, {0, 3, 5}, m),
                                       labelled(Method::kPhonemeBalance, {1}, m)};
  auto rows = compare_methods(results, m, &f);
  ASSERT_EQ(rows.size(), 3u);
  // sorted by method name
  EXPECT_EQ(rows[0].method, Method::kDiversity);
  EXPECT_EQ(rows[1].method, Method::kPhonemeBalance);
  EXPECT_EQ(rows[2].method, Method::kRandom);
  EXPECT_EQ(rows[0].metrics, rows[2].metrics);
}

TEST(CompareMethodsTest, RejectsForeignManifest) {
  const auto m = six_records();
  auto other = testing::manifest_with_durations({1, 1, 1, 1, 1, 1});
  std::vector<SelectionResult> results{labelled(Method::kRandom, {0}, other)};
  EXPECT_THROW(compare_methods(results, m, nullptr), ShapeMismatchError);
}

TEST(CompareMethodsTest, DiversityBeatsRandomOnClusteredData) {
  std::mt19937_64 rng(2);
  const std::size_t n = 400;
  std::vector<Vec> centers;
  for (int c = 0; c < 8; ++c) centers.push_back(testing::random_vector(rng, 6, 5.0));
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = testing::random_vector(rng, 6, 0.3);
    for (std::size_t d = 0; d < 6; ++d) v[d] += centers[i % 8][d];
    rows.push_back(v);
  }
  auto f = testing::matrix_from_rows(rows);
  auto m = testing::random_manifest(rng, n, 10, 5);
  const SelectionBudget b{m.total_duration() * 0.1, OverflowPolicy::kStopOnFirstOverflow};
  std::vector<SelectionResult> results{select_diversity(f, m, b, 1), select_random(m, b, 1)};
  auto table = compare_methods(results, m, &f);
  ASSERT_EQ(table[0].method, Method::kDiversity);
  EXPECT_GE(*table[0].metrics.diversity, *table[1].metrics.diversity);
}

TEST(ReportJsonTest, SelectionReportRoundTrip) {
  std::mt19937_64 rng(6);
  auto m = testing::random_manifest(rng, 50, 6, 3);
  auto f = testing::random_matrix(rng, 50, 4);
  auto r = select_diversity(f, m, {20.0, OverflowPolicy::kSkipAndContinue}, 1234567890123ull);
  const auto text = selection_report_json(r, m, evaluate_subset(m, &f, r.indices));
  EXPECT_EQ(text.find('\n'), std::string::npos);
  auto parsed = parse_selection_report(text, m);
  EXPECT_EQ(parsed, r);

  auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["report_version"], 1);
  EXPECT_EQ(j["method"], "diversity");
  EXPECT_EQ(j["overflow_policy"], "skip_and_continue");
  EXPECT_EQ(j["entropy_base"], 2.0);
  EXPECT_EQ(j["selected_ids"].size(), r.indices.size());
  EXPECT_EQ(j["selected_ids"][0], m[r.indices[0]].id);
  EXPECT_TRUE(j["metrics"].contains("diversity"));

  auto other = testing::manifest_with_durations({1.0});
  EXPECT_THROW(parse_selection_report(text, other), ShapeMismatchError);
  EXPECT_THROW(parse_selection_report("{\"report_version\":1}", m), InvalidArgumentError);
}

TEST(ReportJsonTest, EvaluationReportAndTables) {
  const auto m = six_records();
  const std::vector<std::size_t> idx{0, 2};
  const auto metrics = evaluate_subset(m, nullptr, idx);
  auto j = nlohmann::json::parse(evaluation_report_json(metrics, idx));
  EXPECT_EQ(j["report_version"], 1);
  EXPECT_EQ(j["kind"], "evaluation");
  EXPECT_EQ(j["subset_size"], 2);
  EXPECT_FALSE(j["metrics"].contains("diversity"));
  EXPECT_EQ(j["metrics"]["phoneme_coverage"], 0.75);

  std::vector<SelectionResult> results{labelled(Method::kRandom, {0, 2}, m)};
  const auto rows = compare_methods(results, m, nullptr);
  const auto csv = comparison_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "method,selected,total_duration_sec,distinct_speakers,phoneme_entropy,"
            "speaker_entropy,phoneme_coverage,diversity,mean_pairwise_sq_distance");
  EXPECT_NE(csv.find("random,2,2.5,2,"), std::string::npos);
}

TEST(ReportCsvTest, PerStepQuotesIds) {
  auto m = Manifest({make_record("a,b", "s", 1.0), make_record("say \"hi\"", "s", 1.0)});
  SelectionResult r = labelled(Method::kRandom, {0, 1}, m);
  r.per_step = {{0, 0.0, 1.0}, {1, 0.0, 2.0}};
  const auto csv = per_step_csv(r, m);
  EXPECT_NE(csv.find("0,0,\"a,b\",0.0,1.0\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("1,1,\"say \"\"hi\"\"\",0.0,2.0\n"), std::string::npos) << csv;
}

}  // namespace
}  // namespace coreset
