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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsmote/errors.hpp"
#include "qsmote/matrix.hpp"

namespace qsmote {

/// Encoded dataset: numeric features, binary labels and stable row ids.
struct Dataset {
  std::vector<std::string> feature_names;
  std::optional<std::string> id_column;
  std::string target_name = "target";
  FeatureMatrix features;
  std::vector<int> labels;
  /// Value of the id column, or the 0-based input row index when there is no
  /// id column.
  std::vector<std::string> row_ids;

  std::size_t rows() const noexcept { return labels.size(); }

  std::size_t count_label(int label) const {
    std::size_t n = 0;
    for (int l : labels) n += l == label ? 1 : 0;
    return n;
  }

  /// Label of the rarer class. Requires labels drawn from {0, 1} with both
  /// present; ties resolve to 1.
  int minority_label() const {
    const std::size_t zeros = count_label(0);
    const std::size_t ones = count_label(1);
    if (zeros + ones != rows()) throw DataError("labels must be binary (0/1)");
    if (zeros == 0 || ones == 0) throw DataError("dataset contains a single class");
    return ones <= zeros ? 1 : 0;
  }

  std::vector<std::size_t> rows_with_label(int label) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) out.push_back(i);
    }
    return out;
  }

  Dataset subset(std::span<const std::size_t> indices) const {
    Dataset out;
    out.feature_names = feature_names;
    out.id_column = id_column;
    out.target_name = target_name;
    out.features = FeatureMatrix(indices.size(), features.cols());
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const auto src = features.row(indices[k]);
      std::copy(src.begin(), src.end(), out.features.row(k).begin());
      out.labels.push_back(labels[indices[k]]);
      out.row_ids.push_back(row_ids[indices[k]]);
    }
    return out;
  }

  bool operator==(const Dataset&) const = default;
};

/// One row of an augmented dataset.
struct AugmentedRow {
  std::string id;
  std::vector<double> features;
  int label = 0;
  std::optional<double> angular_distance;
  std::optional<double> rotation_angle;
  bool synthetic = false;
  bool boosted = false;
  std::string source_row_id;

  bool operator==(const AugmentedRow&) const = default;
};

/// Original rows followed by generated rows, in generation order.
struct AugmentedTable {
  std::vector<std::string> feature_names;
  std::optional<std::string> id_column;
  std::string target_name = "target";
  std::vector<AugmentedRow> rows;

  /// Features and labels of every row as a Dataset (for model training).
  Dataset to_dataset() const {
    Dataset d;
    d.feature_names = feature_names;
    d.id_column = id_column;
    d.target_name = target_name;
    d.features = FeatureMatrix(rows.size(), feature_names.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].features.size() != feature_names.size()) {
        throw DimensionError("augmented row width does not match header");
      }
      std::copy(rows[i].features.begin(), rows[i].features.end(), d.features.row(i).begin());
      d.labels.push_back(rows[i].label);
      d.row_ids.push_back(rows[i].id);
    }
    return d;
  }

  bool operator==(const AugmentedTable&) const = default;
};

}  // namespace qsmote
