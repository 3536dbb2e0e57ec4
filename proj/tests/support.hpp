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

// Shared fixtures and brute-force oracles for the test suites. The oracles
// recompute everything from raw vectors and token strings with plain
// double loops; they never call into the library's accumulators.

#ifndef CORESET_TESTS_SUPPORT_HPP_
#define CORESET_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coreset/features.hpp"
#include "coreset/manifest.hpp"
#include "coreset/selectors.hpp"

namespace coreset::testing {

using Vec = std::vector<double>;

// ---- fixtures ------------------------------------------------------------

inline UtteranceRecord make_record(std::string id, std::string speaker,
                                   double duration,
                                   std::vector<std::string> phonemes = {}) {
  UtteranceRecord r;
  r.id = std::move(id);
  r.speaker = std::move(speaker);
  r.duration_sec = duration;
  r.phonemes = std::move(phonemes);
  return r;
}

// Records u0, u1, ... with the given durations, one speaker, no phonemes.
inline Manifest manifest_with_durations(const std::vector<double>& durations) {
  std::vector<UtteranceRecord> records;
  for (std::size_t i = 0; i < durations.size(); ++i) {
    records.push_back(make_record("u" + std::to_string(i), "spk", durations[i]));
  }
  return Manifest(std::move(records));
}

inline FeatureMatrix matrix_from_rows(const std::vector<Vec>& rows) {
  const std::size_t dim = rows.front().size();
  std::vector<float> data;
  for (const auto& r : rows) {
    for (double v : r) data.push_back(static_cast<float>(v));
  }
  return FeatureMatrix(rows.size(), dim, std::move(data));
}

inline std::vector<Vec> rows_of(const FeatureMatrix& m) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto r = m.row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

inline Vec random_vector(std::mt19937_64& rng, std::size_t dim, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  Vec v(dim);
  for (auto& x : v) x = g(rng);
  return v;
}

inline Vec random_unit_vector(std::mt19937_64& rng, std::size_t dim) {
  for (;;) {
    Vec v = random_vector(rng, dim);
    double n = 0.0;
    for (double x : v) n += x * x;
    if (n < 1e-12) continue;
    n = std::sqrt(n);
    for (auto& x : v) x /= n;
    return v;
  }
}

// Random values rounded to float so that oracle and library see the same
// numbers.
inline FeatureMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                                   std::size_t dim) {
  std::vector<Vec> r;
  for (std::size_t i = 0; i < rows; ++i) r.push_back(random_vector(rng, dim));
  return matrix_from_rows(r);
}

// Random manifest with `vocab` phoneme symbols p0.. and `speakers` speakers.
inline Manifest random_manifest(std::mt19937_64& rng, std::size_t n,
                                std::size_t vocab, std::size_t speakers,
                                double min_dur = 0.5, double max_dur = 5.0,
                                std::size_t max_len = 12) {
  std::uniform_int_distribution<std::size_t> tok(0, vocab - 1);
  std::uniform_int_distribution<std::size_t> spk(0, speakers - 1);
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> dur(min_dur, max_dur);
  std::vector<UtteranceRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> ph;
    const std::size_t l = len(rng);
    for (std::size_t k = 0; k < l; ++k) ph.push_back("p" + std::to_string(tok(rng)));
    records.push_back(make_record("utt" + std::to_string(i),
                                  "spk" + std::to_string(spk(rng)), dur(rng),
                                  std::move(ph)));
  }
  return Manifest(std::move(records));
}

// ---- oracles -------------------------------------------------------------

inline double sqdist(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// sum_{y in set} ||x - y||^2, pair by pair.
inline double naive_pairwise_sum(const std::vector<Vec>& set, const Vec& x) {
  double s = 0.0;
  for (const auto& y : set) s += sqdist(x, y);
  return s;
}

// sum over ordered pairs (x, y), diagonal included.
inline double brute_force_diversity(const std::vector<Vec>& set) {
  double s = 0.0;
  for (const auto& x : set) {
    for (const auto& y : set) s += sqdist(x, y);
  }
  return s;
}

inline double naive_min_distance(const std::vector<Vec>& set, const Vec& x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : set) best = std::min(best, sqdist(x, y));
  return best;
}

// -sum p log2 p from a label -> count map, via natural logs.
inline double naive_entropy(const std::map<std::string, double>& counts) {
  double total = 0.0;
  for (const auto& [_, c] : counts) total += c;
  if (total == 0.0) return 0.0;
  double h = 0.0;
  for (const auto& [_, c] : counts) {
    if (c > 0.0) h -= (c / total) * std::log(c / total);
  }
  return h / std::log(2.0);
}

// Entropy objective of a subset recomputed from the token strings.
inline double naive_entropy_objective(const Manifest& m,
                                      const std::vector<std::size_t>& subset,
                                      bool with_speaker) {
  std::map<std::string, double> ph, sp;
  for (auto i : subset) {
    for (const auto& p : m[i].phonemes) ph[p] += 1.0;
    sp[m[i].speaker] += 1.0;
  }
  double v = naive_entropy(ph);
  if (with_speaker) v += naive_entropy(sp);
  return v;
}

inline bool rel_close(double a, double b, double rel, double abs_floor = 1e-12) {
  return std::fabs(a - b) <= rel * std::fabs(b) + abs_floor;
}

// Result of checking one greedy step against a naive per-candidate score.
struct StepCheck {
  bool ok = true;
  std::string message;
};

// Replays `result` and checks that every step k >= first_checked_step
// chose an index attaining the maximum naive score among the candidates
// still in contention, with ties (within `tol` relative) going to the
// lowest index. `score(subset, candidate)` is the oracle objective.
template <typename Score>
StepCheck check_greedy_steps(const Manifest& manifest,
                             const SelectionResult& result,
                             std::size_t first_checked_step, Score&& score,
                             double tol = 1e-9) {
  const bool skip =
      result.budget.overflow_policy == OverflowPolicy::kSkipAndContinue;
  std::vector<std::size_t> subset;
  std::vector<bool> taken(manifest.size(), false);
  double cumulative = 0.0;
  for (std::size_t k = 0; k < result.indices.size(); ++k) {
    const std::size_t chosen = result.indices[k];
    if (k >= first_checked_step) {
      std::vector<double> values(manifest.size(), -std::numeric_limits<double>::infinity());
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < manifest.size(); ++j) {
        if (taken[j]) continue;
        if (skip && cumulative + manifest[j].duration_sec > result.budget.t_max) continue;
        values[j] = score(subset, j);
        best = std::max(best, values[j]);
      }
      const double slack = tol * std::max(1.0, std::fabs(best));
      if (!(values[chosen] >= best - slack)) {
        return {false, "step " + std::to_string(k) + ": chose " +
                           std::to_string(chosen) + " with value " +
                           std::to_string(values[chosen]) + " < max " +
                           std::to_string(best)};
      }
      for (std::size_t j = 0; j < chosen; ++j) {
        if (values[j] >= best - slack) {
          return {false, "step " + std::to_string(k) + ": index " +
                             std::to_string(j) + " ties the max but " +
                             std::to_string(chosen) + " was chosen"};
        }
      }
    }
    subset.push_back(chosen);
    taken[chosen] = true;
    cumulative += manifest[chosen].duration_sec;
  }

  // Termination: in stop mode the next argmax winner must overflow; in
  // skip mode nothing that still fits may remain.
  if (result.indices.size() < first_checked_step) return {};
  double best = -std::numeric_limits<double>::infinity();
  std::size_t winner = manifest.size();
  for (std::size_t j = 0; j < manifest.size(); ++j) {
    if (taken[j]) continue;
    const bool fits = cumulative + manifest[j].duration_sec <= result.budget.t_max;
    if (skip) {
      if (fits) return {false, "stopped while index " + std::to_string(j) + " still fits"};
      continue;
    }
    const double v = score(subset, j);
    if (v > best + tol * std::max(1.0, std::fabs(best))) {
      best = v;
      winner = j;
    }
  }
  if (!skip && winner != manifest.size() &&
      cumulative + manifest[winner].duration_sec <= result.budget.t_max) {
    return {false, "stopped although argmax " + std::to_string(winner) + " fits"};
  }
  return {};
}

// Temporary directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() /
            ("coreset-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace coreset::testing

#endif  // CORESET_TESTS_SUPPORT_HPP_
