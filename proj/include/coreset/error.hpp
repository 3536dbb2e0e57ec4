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

#ifndef CORESET_ERROR_HPP_
#define CORESET_ERROR_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace coreset {

// Root of every error raised by the library. Callers that only need a
// diagnostic can catch this and print what().
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FileNotFoundError : public Error {
 public:
  explicit FileNotFoundError(const std::string& path)
      : Error("cannot open file: " + path), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// ---- manifest ------------------------------------------------------------

class ManifestParseError : public Error {
 public:
  ManifestParseError(std::size_t line, const std::string& detail)
      : Error("manifest line " + std::to_string(line) + ": " + detail),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DuplicateIdError : public Error {
 public:
  DuplicateIdError(const std::string& id, std::size_t line)
      : Error("manifest line " + std::to_string(line) + ": duplicate id \"" +
              id + "\""),
        id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// A record that parses but breaks a record invariant (duration, empty
// speaker, whitespace inside a phoneme token, ...).
class InvalidRecordError : public Error {
 public:
  InvalidRecordError(const std::string& id, const std::string& detail)
      : Error("record \"" + id + "\": " + detail), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class EmptyManifestError : public Error {
 public:
  EmptyManifestError() : Error("manifest contains no records") {}
};

// ---- features ------------------------------------------------------------

class FeatureFormatError : public Error {
 public:
  using Error::Error;
};

class TruncatedFeatureError : public Error {
 public:
  TruncatedFeatureError(std::uint64_t expected, std::uint64_t found)
      : Error("truncated feature payload: expected " +
              std::to_string(expected) + " values, found " +
              std::to_string(found)) {}
};

class NonFiniteValueError : public Error {
 public:
  NonFiniteValueError(std::size_t row, std::size_t col)
      : Error("non-finite feature value at (" + std::to_string(row) + "," +
              std::to_string(col) + ")"),
        row_(row),
        col_(col) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

class ZeroNormRowError : public Error {
 public:
  explicit ZeroNormRowError(std::size_t row)
      : Error("row " + std::to_string(row) + " has zero norm"), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

// Row counts or dimensions that do not line up.
class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRangeError : public Error {
 public:
  IndexOutOfRangeError(std::size_t index, std::size_t size)
      : Error("index " + std::to_string(index) + " out of range for " +
              std::to_string(size) + " records") {}
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace coreset

#endif  // CORESET_ERROR_HPP_
