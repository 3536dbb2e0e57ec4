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

#include "coreset/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "coreset/error.hpp"

namespace coreset {

namespace {

template <typename T>
T decode_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= U{p[i]} << (8 * i);
  return std::bit_cast<T>(v);
}

template <typename T>
void encode_le(T value, unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  auto v = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) p[i] = static_cast<unsigned char>(v >> (8 * i));
}

void check_finite(std::span<const float> values, std::size_t offset,
                  std::size_t dim) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      throw NonFiniteValueError((offset + k) / dim, (offset + k) % dim);
    }
  }
}

}  // namespace

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t dim)
    : rows_(rows), dim_(dim), data_(rows * dim, 0.0f) {
  if (dim == 0) throw InvalidArgumentError("feature dim must be > 0");
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t dim,
                             std::vector<float> data)
    : rows_(rows), dim_(dim), data_(std::move(data)) {
  if (dim == 0) throw InvalidArgumentError("feature dim must be > 0");
  if (data_.size() != rows * dim) {
    throw ShapeMismatchError("feature data has " +
                             std::to_string(data_.size()) + " values, expected " +
                             std::to_string(rows * dim));
  }
  check_finite(data_, 0, dim_);
}

FeatureHeader read_feature_header(std::istream& in) {
  unsigned char buf[kFeatureHeaderBytes];
  in.read(reinterpret_cast<char*>(buf), kFeatureHeaderBytes);
  if (static_cast<std::size_t>(in.gcount()) != kFeatureHeaderBytes) {
    throw FeatureFormatError("feature file shorter than its " +
                             std::to_string(kFeatureHeaderBytes) +
                             "-byte header");
  }
  if (std::memcmp(buf, kFeatureMagic, 4) != 0) {
    throw FeatureFormatError("bad magic: not an FVEC feature file");
  }
  auto version = decode_le<std::uint32_t>(buf + 4);
  if (version != kFeatureFormatVersion) {
    throw FeatureFormatError("unsupported feature format version " +
                             std::to_string(version));
  }
  FeatureHeader h;
  h.rows = decode_le<std::uint64_t>(buf + 8);
  h.dim = decode_le<std::uint32_t>(buf + 16);
  if (h.dim == 0) throw FeatureFormatError("feature dim must be > 0");
  return h;
}

FeatureMatrix read_features(std::istream& in) {
  const FeatureHeader h = read_feature_header(in);
  const std::uint64_t expected = h.rows * h.dim;
  if (h.rows != 0 && expected / h.rows != h.dim) {
    throw FeatureFormatError("feature header rows*dim overflows");
  }

  // Read in bounded chunks so a corrupt header cannot force a huge
  // allocation before truncation is detected.
  constexpr std::size_t kChunkValues = 1 << 20;
  std::vector<float> data;
  std::vector<unsigned char> bytes;
  std::uint64_t have = 0;
  while (have < expected) {
    const std::size_t want =
        static_cast<std::size_t>(std::min<std::uint64_t>(kChunkValues, expected - have));
    bytes.resize(want * 4);
    in.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    const auto got_bytes = static_cast<std::size_t>(in.gcount());
    const std::size_t got = got_bytes / 4;
    const std::size_t start = data.size();
    data.resize(start + got);
    if constexpr (std::endian::native == std::endian::little) {
      std::memcpy(data.data() + start, bytes.data(), got * 4);
    } else {
      for (std::size_t k = 0; k < got; ++k) {
        data[start + k] = decode_le<float>(bytes.data() + 4 * k);
      }
    }
    check_finite(std::span<const float>(data).subspan(start), start, h.dim);
    have += got;
    if (got < want) throw TruncatedFeatureError(expected, have);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FeatureFormatError("trailing bytes after feature payload");
  }
  return FeatureMatrix(static_cast<std::size_t>(h.rows), h.dim, std::move(data));
}

FeatureMatrix load_features(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError(path);
  try {
    return read_features(in);
  } catch (const NonFiniteValueError&) {
    throw;
  } catch (const FeatureFormatError& e) {
    throw FeatureFormatError(path + ": " + e.what());
  }
}

FeatureHeader load_feature_header(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError(path);
  return read_feature_header(in);
}

void write_features(std::ostream& out, const FeatureMatrix& m) {
  unsigned char header[kFeatureHeaderBytes];
  std::memcpy(header, kFeatureMagic, 4);
  encode_le<std::uint32_t>(kFeatureFormatVersion, header + 4);
  encode_le<std::uint64_t>(m.rows(), header + 8);
  encode_le<std::uint32_t>(static_cast<std::uint32_t>(m.dim()), header + 16);
  out.write(reinterpret_cast<const char*>(header), kFeatureHeaderBytes);
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(m.data().data()),
              static_cast<std::streamsize>(m.data().size() * 4));
  } else {
    unsigned char b[4];
    for (float v : m.data()) {
      encode_le<float>(v, b);
      out.write(reinterpret_cast<const char*>(b), 4);
    }
  }
}

void write_features(const std::string& path, const FeatureMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileNotFoundError(path);
  write_features(out, m);
  if (!out) throw Error("failed writing " + path);
}

FeatureMatrix normalize_rows(const FeatureMatrix& m) {
  FeatureMatrix out = m;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto r = out.row(i);
    double sq = 0.0;
    for (float v : r) sq += static_cast<double>(v) * v;
    if (!(sq > 0.0)) throw ZeroNormRowError(i);
    const double inv = 1.0 / std::sqrt(sq);
    for (float& v : r) v = static_cast<float>(v * inv);
  }
  return out;
}

FeatureMatrix concat_features(std::span<const FeatureMatrix> parts) {
  if (parts.empty()) throw InvalidArgumentError("nothing to concatenate");
  const std::size_t rows = parts.front().rows();
  std::size_t dim = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].rows() != rows) {
      throw ShapeMismatchError(
          "row count mismatch: part 0 has " + std::to_string(rows) +
          " rows, part " + std::to_string(p) + " has " +
          std::to_string(parts[p].rows()));
    }
    dim += parts[p].dim();
  }
  FeatureMatrix out(rows, dim);
  for (std::size_t i = 0; i < rows; ++i) {
    auto dst = out.row(i).begin();
    for (const auto& part : parts) dst = std::copy_n(part.row(i).begin(), part.dim(), dst);
  }
  return out;
}

}  // namespace coreset
