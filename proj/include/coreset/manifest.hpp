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

#ifndef CORESET_MANIFEST_HPP_
#define CORESET_MANIFEST_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace coreset {

/// One corpus item. Only `duration_sec`, `phonemes` and `speaker` feed the
/// selection objectives; `text` is carried through untouched.
struct UtteranceRecord {
  std::string id;
  std::string speaker;
  double duration_sec = 0.0;
  std::vector<std::string> phonemes;
  std::optional<std::string> text;

  friend bool operator==(const UtteranceRecord&,
                         const UtteranceRecord&) = default;
};

/// Immutable, validated sequence of records in file order.
///
/// Construction validates every record invariant (unique non-empty ids,
/// non-empty speakers, finite positive durations, whitespace-free phoneme
/// tokens) and derives the phoneme and speaker inventories, both sorted by
/// byte order. Phoneme tokens and speakers are also interned so that the
/// selectors can work on dense integer ids: `phoneme_ids(i)` and
/// `speaker_id(i)` index into the inventories.
class Manifest {
 public:
  Manifest() = default;
  explicit Manifest(std::vector<UtteranceRecord> records);

  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const UtteranceRecord& operator[](std::size_t i) const {
    return records_[i];
  }
  const UtteranceRecord& at(std::size_t i) const;
  const std::vector<UtteranceRecord>& records() const { return records_; }

  const std::vector<std::string>& phoneme_inventory() const {
    return phoneme_inventory_;
  }
  const std::vector<std::string>& speaker_inventory() const {
    return speaker_inventory_;
  }

  std::span<const std::uint32_t> phoneme_ids(std::size_t i) const;
  std::uint32_t speaker_id(std::size_t i) const { return speaker_ids_[i]; }
  double duration(std::size_t i) const { return records_[i].duration_sec; }

  double total_duration() const { return total_duration_; }
  double min_duration() const { return min_duration_; }

  // Position of `id` in the manifest, if present.
  std::optional<std::size_t> find(const std::string& id) const;

  // FNV-1a over the record ids in order; used to check that a selection
  // result belongs to this manifest.
  std::uint64_t fingerprint() const { return fingerprint_; }

  friend bool operator==(const Manifest& a, const Manifest& b) {
    return a.records_ == b.records_;
  }

 private:
  std::vector<UtteranceRecord> records_;
  std::vector<std::string> phoneme_inventory_;
  std::vector<std::string> speaker_inventory_;
  std::vector<std::uint32_t> phoneme_id_data_;
  std::vector<std::size_t> phoneme_offsets_;
  std::vector<std::uint32_t> speaker_ids_;
  std::vector<std::string> sorted_ids_;
  std::vector<std::size_t> sorted_id_positions_;
  double total_duration_ = 0.0;
  double min_duration_ = 0.0;
  std::uint64_t fingerprint_ = 0;
};

// Parses one manifest line. `line_number` is 1-based and only used for
// diagnostics.
UtteranceRecord parse_record(const std::string& line, std::size_t line_number);
std::string format_record(const UtteranceRecord& record);

Manifest read_manifest(std::istream& in);
Manifest load_manifest(const std::string& path);
void write_manifest(std::ostream& out, const Manifest& manifest);
void write_manifest(const std::string& path, const Manifest& manifest);

/// Sum of durations over `indices`, accumulated in the given order.
double total_duration(const Manifest& manifest,
                      std::span<const std::size_t> indices);

}  // namespace coreset

#endif  // CORESET_MANIFEST_HPP_
