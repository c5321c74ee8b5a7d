// Copyright 2026 The qsmote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsmote {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vector or table shapes that do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input with no direction (zero norm) or otherwise unusable for encoding.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Qubit index out of range or repeated where distinct indices are required.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Invalid numeric parameter (split factor, target percent, k, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration file or command-line usage.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File system failure; the message always carries the path.
class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Problem with dataset content. Row and column are 1-based file coordinates
/// (row 1 is the header); zero means "not applicable".
class DataError : public Error {
 public:
  DataError(const std::string& what, std::size_t row = 0, std::string column = {})
      : Error(format(what, row, column)), row_(row), column_(std::move(column)) {}

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t row,
                            const std::string& column) {
    std::string msg = what;
    if (row != 0) msg += " (row " + std::to_string(row);
    if (!column.empty()) msg += (row != 0 ? ", column '" : " (column '") + column + "'";
    if (row != 0 || !column.empty()) msg += ")";
    return msg;
  }

  std::size_t row_;
  std::string column_;
};

/// A column named by the configuration is absent from the input. Treated as a
/// configuration problem by the CLI.
class MissingColumnError : public DataError {
 public:
  explicit MissingColumnError(const std::string& column)
      : DataError("missing column '" + column + "'", 0, column) {}
};

/// The input has a column the configuration does not describe.
class UnknownColumnError : public DataError {
 public:
  UnknownColumnError(const std::string& what, const std::string& column)
      : DataError(what, 1, column) {}
};

/// Wraps an error raised while processing one row of a batch.
class RowError : public Error {
 public:
  RowError(std::size_t row_index, const std::string& what)
      : Error("row " + std::to_string(row_index) + ": " + what), row_index_(row_index) {}
  std::size_t row_index() const noexcept { return row_index_; }

 private:
  std::size_t row_index_;
};

}  // namespace qsmote
