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

#include "coreset/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include "coreset/error.hpp"
#include "json.hpp"

namespace coreset {

namespace {

using ordered_json = nlohmann::ordered_json;

bool has_whitespace(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  });
}

std::uint64_t fnv1a(const std::vector<UtteranceRecord>& records) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const auto& r : records) {
    for (unsigned char c : r.id) mix(c);
    mix(0);
  }
  return h;
}

// Sorted inventory plus a token -> dense id map.
std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::uint32_t lookup(const std::vector<std::string>& inventory,
                     const std::string& token) {
  auto it = std::lower_bound(inventory.begin(), inventory.end(), token);
  return static_cast<std::uint32_t>(it - inventory.begin());
}

}  // namespace

Manifest::Manifest(std::vector<UtteranceRecord> records)
    : records_(std::move(records)) {
  std::vector<std::string> phonemes;
  std::vector<std::string> speakers;
  speakers.reserve(records_.size());

  for (const auto& r : records_) {
    if (r.id.empty()) throw InvalidRecordError(r.id, "empty id");
    if (r.speaker.empty()) throw InvalidRecordError(r.id, "empty speaker");
    if (!std::isfinite(r.duration_sec) || r.duration_sec <= 0.0) {
      throw InvalidRecordError(
          r.id, "duration_sec must be finite and > 0, got " +
                    std::to_string(r.duration_sec));
    }
    for (const auto& p : r.phonemes) {
      if (p.empty()) throw InvalidRecordError(r.id, "empty phoneme token");
      if (has_whitespace(p)) {
        throw InvalidRecordError(r.id,
                                 "phoneme token contains whitespace: \"" + p +
                                     "\"");
      }
      phonemes.push_back(p);
    }
    speakers.push_back(r.speaker);
  }

  // Duplicate detection reports the later occurrence.
  std::vector<std::size_t> order(records_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return records_[a].id < records_[b].id;
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto& prev = records_[order[k - 1]];
    const auto& cur = records_[order[k]];
    if (prev.id == cur.id) {
      throw DuplicateIdError(cur.id,
                             std::max(order[k - 1], order[k]) + 1);
    }
  }
  sorted_ids_.reserve(order.size());
  for (auto i : order) sorted_ids_.push_back(records_[i].id);
  sorted_id_positions_ = std::move(order);

  phoneme_inventory_ = sorted_unique(std::move(phonemes));
  speaker_inventory_ = sorted_unique(std::move(speakers));

  phoneme_offsets_.reserve(records_.size() + 1);
  phoneme_offsets_.push_back(0);
  speaker_ids_.reserve(records_.size());
  for (const auto& r : records_) {
    for (const auto& p : r.phonemes) {
      phoneme_id_data_.push_back(lookup(phoneme_inventory_, p));
    }
    phoneme_offsets_.push_back(phoneme_id_data_.size());
    speaker_ids_.push_back(lookup(speaker_inventory_, r.speaker));
  }

  min_duration_ = records_.empty() ? 0.0 : records_.front().duration_sec;
  for (const auto& r : records_) {
    total_duration_ += r.duration_sec;
    min_duration_ = std::min(min_duration_, r.duration_sec);
  }
  fingerprint_ = fnv1a(records_);
}

const UtteranceRecord& Manifest::at(std::size_t i) const {
  if (i >= records_.size()) throw IndexOutOfRangeError(i, records_.size());
  return records_[i];
}

std::span<const std::uint32_t> Manifest::phoneme_ids(std::size_t i) const {
  return std::span<const std::uint32_t>(phoneme_id_data_)
      .subspan(phoneme_offsets_[i], phoneme_offsets_[i + 1] - phoneme_offsets_[i]);
}

std::optional<std::size_t> Manifest::find(const std::string& id) const {
  auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), id);
  if (it == sorted_ids_.end() || *it != id) return std::nullopt;
  return sorted_id_positions_[static_cast<std::size_t>(it - sorted_ids_.begin())];
}

UtteranceRecord parse_record(const std::string& line,
                             std::size_t line_number) {
  if (!line.empty() && line.back() == '\r') {
    throw ManifestParseError(line_number, "CRLF line ending; use LF");
  }
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ManifestParseError(line_number, e.what());
  }
  if (!obj.is_object()) {
    throw ManifestParseError(line_number, "expected a JSON object");
  }
  for (const auto& [key, _] : obj.items()) {
    if (key != "id" && key != "speaker" && key != "duration_sec" &&
        key != "phonemes" && key != "text") {
      throw ManifestParseError(line_number, "unknown key \"" + key + "\"");
    }
  }
  auto require = [&](const char* key) -> const nlohmann::json& {
    auto it = obj.find(key);
    if (it == obj.end()) {
      throw ManifestParseError(line_number,
                               std::string("missing key \"") + key + "\"");
    }
    return *it;
  };

  UtteranceRecord r;
  const auto& id = require("id");
  const auto& speaker = require("speaker");
  const auto& duration = require("duration_sec");
  const auto& phonemes = require("phonemes");
  if (!id.is_string()) throw ManifestParseError(line_number, "id must be a string");
  if (!speaker.is_string()) {
    throw ManifestParseError(line_number, "speaker must be a string");
  }
  if (!duration.is_number()) {
    throw ManifestParseError(line_number, "duration_sec must be a number");
  }
  if (!phonemes.is_array()) {
    throw ManifestParseError(line_number, "phonemes must be an array");
  }
  r.id = id.get<std::string>();
  r.speaker = speaker.get<std::string>();
  r.duration_sec = duration.get<double>();
  r.phonemes.reserve(phonemes.size());
  for (const auto& p : phonemes) {
    if (!p.is_string()) {
      throw ManifestParseError(line_number, "phoneme tokens must be strings");
    }
    r.phonemes.push_back(p.get<std::string>());
  }
  if (auto it = obj.find("text"); it != obj.end()) {
    if (!it->is_string()) {
      throw ManifestParseError(line_number, "text must be a string");
    }
    r.text = it->get<std::string>();
  }
  return r;
}

std::string format_record(const UtteranceRecord& r) {
  ordered_json obj;
  obj["id"] = r.id;
  obj["speaker"] = r.speaker;
  obj["duration_sec"] = r.duration_sec;
  obj["phonemes"] = r.phonemes;
  if (r.text) obj["text"] = *r.text;
  return obj.dump();
}

Manifest read_manifest(std::istream& in) {
  std::vector<UtteranceRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) throw ManifestParseError(line_number, "empty line");
    records.push_back(parse_record(line, line_number));
  }
  if (records.empty()) throw EmptyManifestError();
  return Manifest(std::move(records));
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError(path);
  return read_manifest(in);
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
  for (const auto& r : manifest.records()) out << format_record(r) << '\n';
}

void write_manifest(const std::string& path, const Manifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileNotFoundError(path);
  write_manifest(out, manifest);
  if (!out) throw Error("failed writing " + path);
}

double total_duration(const Manifest& manifest,
                      std::span<const std::size_t> indices) {
  double total = 0.0;
  for (auto i : indices) {
    if (i >= manifest.size()) throw IndexOutOfRangeError(i, manifest.size());
    total += manifest[i].duration_sec;
  }
  return total;
}

}  // namespace coreset
