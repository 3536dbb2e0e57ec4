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

// Max-sum diversity of a vector set under squared Euclidean distance.
//
// For a set S the diversity is taken over ordered pairs, diagonal included:
//
//   V(S) = sum_{x in S} sum_{y in S} ||x - y||^2 = 2 (n q - ||m||^2)
//
// where n = |S|, m = sum of the vectors and q = sum of their squared norms.
// The same three moments give the gain of a candidate x in O(dim):
//
//   sum_{y in S} ||x - y||^2 = n ||x||^2 - 2 <x, m> + q
//
// and V(S + x) = V(S) + 2 * gain(x). Greedy selection therefore never has
// to revisit pairs; it keeps one MomentAccumulator for the selected set.

#ifndef CORESET_DIVERSITY_HPP_
#define CORESET_DIVERSITY_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "coreset/error.hpp"

namespace coreset {

// Gains that cancel below zero by less than this (relative to the
// magnitude of the terms) are clamped to 0.
inline constexpr double kGainClampTolerance = 1e-9;

double squared_norm(std::span<const float> x);
double squared_norm(std::span<const double> x);
double dot(std::span<const float> x, std::span<const double> y);
double dot(std::span<const double> x, std::span<const double> y);

template <typename A, typename B>
double squared_distance(const A& a, const B& b) {
  if (std::size(a) != std::size(b)) {
    throw ShapeMismatchError("dimension mismatch in squared_distance");
  }
  double s = 0.0;
  auto ib = std::begin(b);
  for (auto ia = std::begin(a); ia != std::end(a); ++ia, ++ib) {
    const double d = static_cast<double>(*ia) - static_cast<double>(*ib);
    s += d * d;
  }
  return s;
}

/// Sufficient statistics (count, vector sum, sum of squared norms) of a
/// vector set, accumulated in double precision.
class MomentAccumulator {
 public:
  MomentAccumulator() = default;
  explicit MomentAccumulator(std::size_t dim) : sum_(dim, 0.0) {}

  std::size_t dim() const { return sum_.size(); }
  std::size_t count() const { return count_; }
  std::span<const double> sum() const { return sum_; }
  double sum_sq_norms() const { return sum_sq_norms_; }

  void absorb(std::span<const float> x);
  void absorb(std::span<const double> x);

  /// sum_{y in S} ||x - y||^2. Half the increase of diversity_total().
  double marginal_gain(std::span<const float> x) const;
  double marginal_gain(std::span<const double> x) const;
  // Same, with ||x||^2 supplied by the caller (the selectors cache it).
  double marginal_gain(std::span<const float> x, double x_sq_norm) const;

  /// V(S) over ordered pairs: 2 (n q - ||m||^2), 0 for n <= 1.
  double diversity_total() const;

 private:
  void check_dim(std::size_t d) const;

  std::size_t count_ = 0;
  std::vector<double> sum_;
  double sum_sq_norms_ = 0.0;
};

/// min_{y in selected} ||x - y||^2, the farthest-point (k-center) score.
template <typename Rows, typename Vec>
double min_distance_gain(const Rows& selected, const Vec& x) {
  if (std::size(selected) == 0) {
    throw InvalidArgumentError("min_distance_gain needs a non-empty set");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : selected) best = std::min(best, squared_distance(y, x));
  return best;
}

}  // namespace coreset

#endif  // CORESET_DIVERSITY_HPP_
