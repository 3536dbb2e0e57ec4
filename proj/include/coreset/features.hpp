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

#ifndef CORESET_FEATURES_HPP_
#define CORESET_FEATURES_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace coreset {

/// Dense row-major float32 matrix; row i belongs to manifest record i.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t dim);
  // Takes ownership of `data`, which must hold rows * dim finite values.
  FeatureMatrix(std::size_t rows, std::size_t dim, std::vector<float> data);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }

  std::span<const float> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<float> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }

  const std::vector<float>& data() const { return data_; }

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> data_;
};

// On-disk layout, little-endian, no padding:
//   "FVEC" | u32 version (=1) | u64 rows | u32 dim | rows*dim f32, row-major
inline constexpr char kFeatureMagic[4] = {'F', 'V', 'E', 'C'};
inline constexpr std::uint32_t kFeatureFormatVersion = 1;
inline constexpr std::size_t kFeatureHeaderBytes = 4 + 4 + 8 + 4;

struct FeatureHeader {
  std::uint64_t rows = 0;
  std::uint32_t dim = 0;
};

FeatureHeader read_feature_header(std::istream& in);
FeatureMatrix read_features(std::istream& in);
FeatureMatrix load_features(const std::string& path);
// Reads only the header; used by `validate` to check alignment cheaply.
FeatureHeader load_feature_header(const std::string& path);

void write_features(std::ostream& out, const FeatureMatrix& m);
void write_features(const std::string& path, const FeatureMatrix& m);

/// Scales every row to unit Euclidean norm. Norms are computed in double.
/// Throws ZeroNormRowError naming the first row whose norm is zero.
FeatureMatrix normalize_rows(const FeatureMatrix& m);

/// Row-wise concatenation in list order. No re-normalization is applied.
FeatureMatrix concat_features(std::span<const FeatureMatrix> parts);

}  // namespace coreset

#endif  // CORESET_FEATURES_HPP_
