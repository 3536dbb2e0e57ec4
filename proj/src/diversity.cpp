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

#include "coreset/diversity.hpp"

#include <string>

namespace coreset {

namespace {

// Four independent partial sums let the compiler vectorize the loop
// without reassociation flags; the order is fixed, so results are
// reproducible.
template <typename T, typename U>
double dot4(std::span<const T> x, std::span<const U> y) {
  const std::size_t n = x.size();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += static_cast<double>(x[i]) * static_cast<double>(y[i]);
    s1 += static_cast<double>(x[i + 1]) * static_cast<double>(y[i + 1]);
    s2 += static_cast<double>(x[i + 2]) * static_cast<double>(y[i + 2]);
    s3 += static_cast<double>(x[i + 3]) * static_cast<double>(y[i + 3]);
  }
  for (; i < n; ++i) s0 += static_cast<double>(x[i]) * static_cast<double>(y[i]);
  return (s0 + s1) + (s2 + s3);
}

double clamp_gain(double gain, double magnitude) {
  if (gain < 0.0 && gain >= -kGainClampTolerance * magnitude) return 0.0;
  return gain;
}

}  // namespace

double squared_norm(std::span<const float> x) { return dot4(x, x); }
double squared_norm(std::span<const double> x) { return dot4(x, x); }

double dot(std::span<const float> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeMismatchError("dimension mismatch in dot");
  return dot4(x, y);
}

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ShapeMismatchError("dimension mismatch in dot");
  return dot4(x, y);
}

void MomentAccumulator::check_dim(std::size_t d) const {
  if (d != sum_.size()) {
    throw ShapeMismatchError("vector has dim " + std::to_string(d) +
                             ", accumulator has dim " +
                             std::to_string(sum_.size()));
  }
}

void MomentAccumulator::absorb(std::span<const float> x) {
  check_dim(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sum_[i] += x[i];
  sum_sq_norms_ += squared_norm(x);
  ++count_;
}

void MomentAccumulator::absorb(std::span<const double> x) {
  check_dim(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) sum_[i] += x[i];
  sum_sq_norms_ += squared_norm(x);
  ++count_;
}

double MomentAccumulator::marginal_gain(std::span<const float> x,
                                        double x_sq_norm) const {
  check_dim(x.size());
  if (count_ == 0) return 0.0;
  const double n = static_cast<double>(count_);
  const double gain = n * x_sq_norm - 2.0 * dot4(x, std::span<const double>(sum_)) +
                      sum_sq_norms_;
  return clamp_gain(gain, n * x_sq_norm + sum_sq_norms_);
}

double MomentAccumulator::marginal_gain(std::span<const float> x) const {
  check_dim(x.size());
  return marginal_gain(x, squared_norm(x));
}

double MomentAccumulator::marginal_gain(std::span<const double> x) const {
  check_dim(x.size());
  if (count_ == 0) return 0.0;
  const double n = static_cast<double>(count_);
  const double xx = squared_norm(x);
  const double gain =
      n * xx - 2.0 * dot4(x, std::span<const double>(sum_)) + sum_sq_norms_;
  return clamp_gain(gain, n * xx + sum_sq_norms_);
}

double MomentAccumulator::diversity_total() const {
  if (count_ <= 1) return 0.0;
  const double n = static_cast<double>(count_);
  const double mm = squared_norm(std::span<const double>(sum_));
  const double v = 2.0 * (n * sum_sq_norms_ - mm);
  if (v < 0.0 && v >= -kGainClampTolerance * 2.0 * n * sum_sq_norms_) return 0.0;
  return v;
}

}  // namespace coreset
