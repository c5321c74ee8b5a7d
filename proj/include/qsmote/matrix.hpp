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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qsmote/errors.hpp"

namespace qsmote {

/// Dense row-major table of doubles.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    FeatureMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw DimensionError("ragged rows in feature table");
      std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_));
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  /// Appends a row; the first row appended to an empty 0x0 matrix fixes cols().
  void push_row(std::span<const double> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_) throw DimensionError("row width does not match table width");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  const std::vector<double>& data() const noexcept { return data_; }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline double l2_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

/// Smallest power of two >= n, and at least 2 so that a vector always maps to
/// one or more qubits.
inline std::size_t padded_length(std::size_t n) {
  return std::max<std::size_t>(2, std::bit_ceil(n));
}

/// One record prepared for amplitude encoding: features zero-padded to a power
/// of two, with the original length and Euclidean norm kept for decoding.
struct FeatureVector {
  std::vector<double> padded;
  std::size_t original_size = 0;
  double norm = 0.0;

  int num_qubits() const noexcept { return std::countr_zero(padded.size()); }

  std::span<const double> features() const { return {padded.data(), original_size}; }

  /// Unit-length copy of the padded amplitudes.
  std::vector<double> unit() const {
    std::vector<double> out(padded);
    for (double& x : out) x /= norm;
    return out;
  }

  static FeatureVector encode(std::span<const double> features) {
    if (features.empty()) throw DimensionError("cannot encode an empty feature vector");
    FeatureVector fv;
    fv.original_size = features.size();
    fv.padded.assign(padded_length(features.size()), 0.0);
    std::copy(features.begin(), features.end(), fv.padded.begin());
    fv.norm = l2_norm(features);
    if (!std::isfinite(fv.norm)) throw DegenerateInputError("feature vector has non-finite entries");
    if (fv.norm == 0.0) throw DegenerateInputError("feature vector has zero norm");
    return fv;
  }
};

}  // namespace qsmote
