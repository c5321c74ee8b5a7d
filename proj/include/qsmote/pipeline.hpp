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

// Oversampling driver: one centroid for the whole dataset, one angular
// distance per minority row, then repeated passes over the minority rows with
// a one-degree larger angle increment on every pass until the requested
// minority share is reached. Optionally followed by angular-outlier boosting.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qsmote/aol.hpp"
#include "qsmote/dataset.hpp"
#include "qsmote/errors.hpp"
#include "qsmote/matrix.hpp"
#include "qsmote/parallel.hpp"
#include "qsmote/qdist.hpp"
#include "qsmote/random.hpp"
#include "qsmote/synth.hpp"

namespace qsmote::pipeline {

enum class CentroidScope { kAllRows, kMinorityOnly };

struct SmoteConfig {
  double target_minority_percent = 50.0;
  double split_factor = synth::kDefaultSplitFactor;
  std::size_t shots = statevec::kDefaultShots;
  std::uint64_t seed = 0;
  bool rescale = true;
  qdist::Estimator estimator = qdist::Estimator::kStandard;
  std::optional<int> prep_rounding;
  CentroidScope centroid_scope = CentroidScope::kAllRows;
  bool aol = false;
  std::size_t num_bins = 10;
  double boost_angle_multiplier = aol::kDefaultBoostMultiplier;
  std::size_t threads = 1;

  void validate() const {
    if (!(target_minority_percent > 0.0 && target_minority_percent < 100.0)) {
      throw ParameterError("target minority percent must be in (0, 100)");
    }
    if (!(split_factor > 0.0)) throw ParameterError("split factor must be positive");
    if (num_bins == 0) throw ParameterError("number of bins must be >= 1");
    if (!(boost_angle_multiplier >= 0.0)) throw ParameterError("boost multiplier must be >= 0");
  }
};

struct TargetCounts {
  double target_minority_count = 0.0;
  std::size_t synthetic = 0;
  std::size_t full_loops = 0;
  std::size_t remainder = 0;
};

struct AugmentationReport {
  std::size_t original_total = 0;
  std::size_t minority_count = 0;
  int minority_label = 1;
  double target_percent = 0.0;
  std::size_t synthetic_generated = 0;
  std::size_t boosted_generated = 0;
  double achieved_percent = 0.0;  // before boosting
  double achieved_percent_with_boost = 0.0;
  std::size_t loop_iterations = 0;
  std::size_t remainder_records = 0;
};

/// Column-wise mean over all rows, or over minority rows only.
inline std::vector<double> centroid(const Dataset& data, CentroidScope scope = CentroidScope::kAllRows) {
  std::vector<std::size_t> rows;
  if (scope == CentroidScope::kAllRows) {
    rows.resize(data.features.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
  } else {
    rows = data.rows_with_label(data.minority_label());
  }
  if (rows.empty()) throw DimensionError("centroid of an empty table");
  std::vector<double> mean(data.features.cols(), 0.0);
  for (std::size_t r : rows) {
    const auto row = data.features.row(r);
    for (std::size_t c = 0; c < mean.size(); ++c) mean[c] += row[c];
  }
  for (double& v : mean) v /= static_cast<double>(rows.size());
  return mean;
}

/// Mean of the rows of a plain feature table.
inline std::vector<double> centroid(const FeatureMatrix& table) {
  if (table.empty()) throw DimensionError("centroid of an empty table");
  std::vector<double> mean(table.cols(), 0.0);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.cols(); ++c) mean[c] += table(r, c);
  }
  for (double& v : mean) v /= static_cast<double>(table.rows());
  return mean;
}

/// Synthetic count S such that (m + S) / (N + S) is t percent, rounded half
/// up, split into full passes over the m minority rows plus a remainder.
/// A target equal to the current share yields S = 0; a lower one is an error.
inline TargetCounts target_counts(std::size_t total, std::size_t minority, double target_percent) {
  if (minority == 0 || minority >= total) {
    throw ParameterError("minority count must satisfy 0 < m < N");
  }
  if (!(target_percent > 0.0 && target_percent < 100.0)) {
    throw ParameterError("target percent must be in (0, 100)");
  }
  const double n = static_cast<double>(total);
  const double m = static_cast<double>(minority);
  // Compare t*N against 100*m so that exact targets are not lost to rounding.
  if (target_percent * n < 100.0 * m) {
    throw ParameterError("target percent " + std::to_string(target_percent) +
                         " is below the current minority percent " +
                         std::to_string(100.0 * m / n));
  }
  TargetCounts tc;
  tc.target_minority_count = n * target_percent / 100.0;
  const double s = (target_percent * n - 100.0 * m) / (100.0 - target_percent);
  tc.synthetic = static_cast<std::size_t>(std::floor(s + 0.5));
  tc.full_loops = tc.synthetic / minority;
  tc.remainder = tc.synthetic % minority;
  return tc;
}

inline double minority_percent(std::size_t total, std::size_t minority) {
  return total == 0 ? 0.0 : 100.0 * static_cast<double>(minority) / static_cast<double>(total);
}

struct SmoteResult {
  int minority_label = 1;
  std::vector<double> centroid;
  /// Dataset row indices of the minority rows, in table order.
  std::vector<std::size_t> minority_rows;
  /// Angular distance of each minority row from the centroid.
  std::vector<double> minority_angular_distances;
  std::vector<synth::SyntheticRecord> synthetic;
  std::vector<synth::SyntheticRecord> boosted;
  std::optional<aol::OutlierReport> outliers;
  AugmentationReport report;
};

/// Minority originals followed by synthetic records, as the combined record
/// table used for outlier analysis.
inline std::vector<synth::SyntheticRecord> minority_records(const Dataset& data,
                                                             const SmoteResult& result) {
  std::vector<synth::SyntheticRecord> out;
  out.reserve(result.minority_rows.size() + result.synthetic.size());
  for (std::size_t k = 0; k < result.minority_rows.size(); ++k) {
    const std::size_t r = result.minority_rows[k];
    synth::SyntheticRecord rec;
    const auto row = data.features.row(r);
    rec.features.assign(row.begin(), row.end());
    rec.source_row_id = data.row_ids[r];
    rec.angular_distance = result.minority_angular_distances[k];
    rec.synthetic = false;
    out.push_back(std::move(rec));
  }
  out.insert(out.end(), result.synthetic.begin(), result.synthetic.end());
  return out;
}

inline std::vector<double> angular_distances_of(std::span<const synth::SyntheticRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.angular_distance);
  return out;
}

/// Generates synthetic minority records until the minority share reaches the
/// configured target. The dataset is not modified.
inline SmoteResult run_smote(const Dataset& data, const SmoteConfig& config) {
  config.validate();
  SmoteResult result;
  result.minority_label = data.minority_label();
  result.minority_rows = data.rows_with_label(result.minority_label);

  const std::size_t total = data.rows();
  const std::size_t m = result.minority_rows.size();
  const TargetCounts tc = target_counts(total, m, config.target_minority_percent);

  AugmentationReport& rep = result.report;
  rep.original_total = total;
  rep.minority_count = m;
  rep.minority_label = result.minority_label;
  rep.target_percent = config.target_minority_percent;
  rep.loop_iterations = tc.full_loops;
  rep.remainder_records = tc.remainder;

  result.centroid = centroid(data, config.centroid_scope);
  const FeatureMatrix minority = data.subset(result.minority_rows).features;

  qdist::DistanceOptions dist;
  dist.shots = config.shots;
  dist.seed = config.seed;
  dist.estimator = config.estimator;
  dist.prep.rounding_decimals = config.prep_rounding;
  dist.threads = config.threads;
  result.minority_angular_distances = qdist::angular_distance_table(minority, result.centroid, dist);

  const synth::SynthOptions synth_opts{config.split_factor, config.rescale};
  std::vector<FeatureVector> encoded;
  encoded.reserve(m);
  for (std::size_t k = 0; k < m; ++k) encoded.push_back(FeatureVector::encode(minority.row(k)));

  auto run_pass = [&](std::size_t pass, std::span<const std::size_t> sources) {
    const double increment = static_cast<double>(pass) * synth::kOneDegree;
    std::vector<synth::SyntheticRecord> batch(sources.size());
    parallel_for(sources.size(), config.threads, [&](std::size_t i) {
      const std::size_t k = sources[i];
      Rng rng(derive_seed(config.seed, {0x5E7ULL, k, pass}));
      batch[i] = synth::create_syn_data(encoded[k], result.minority_angular_distances[k], increment,
                                        synth_opts, rng);
      batch[i].source_row_id = data.row_ids[result.minority_rows[k]];
    });
    result.synthetic.insert(result.synthetic.end(), std::make_move_iterator(batch.begin()),
                            std::make_move_iterator(batch.end()));
  };

  std::vector<std::size_t> all(m);
  std::iota(all.begin(), all.end(), std::size_t{0});
  result.synthetic.reserve(tc.synthetic);
  for (std::size_t pass = 1; pass <= tc.full_loops; ++pass) run_pass(pass, all);
  if (tc.remainder > 0) {
    // Partial Fisher-Yates: the first `remainder` slots are a uniform sample
    // without replacement.
    std::vector<std::size_t> pool = all;
    Rng rng(derive_seed(config.seed, {0x5A3D1EULL}));
    for (std::size_t i = 0; i < tc.remainder; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(tc.remainder);
    std::sort(pool.begin(), pool.end());
    run_pass(tc.full_loops + 1, pool);
  }

  rep.synthetic_generated = result.synthetic.size();
  rep.achieved_percent = minority_percent(total + rep.synthetic_generated, m + rep.synthetic_generated);
  rep.achieved_percent_with_boost = rep.achieved_percent;
  return result;
}

/// Detects angular outliers over minority originals plus synthetic records
/// and boosts under-populated outlier bins on both sides.
inline void apply_outlier_boost(const Dataset& data, const SmoteConfig& config, SmoteResult& result) {
  const std::vector<synth::SyntheticRecord> records = minority_records(data, result);
  const std::vector<double> distances = angular_distances_of(records);
  result.outliers = aol::detect_outliers(distances, config.num_bins);

  aol::BoostOptions opts;
  opts.synth = {config.split_factor, config.rescale};
  opts.angle_multiplier = config.boost_angle_multiplier;
  opts.seed = config.seed;
  opts.threads = config.threads;
  result.boosted = aol::boost_outliers(result.outliers->low, records, opts);
  auto high = aol::boost_outliers(result.outliers->high, records, opts);
  result.boosted.insert(result.boosted.end(), std::make_move_iterator(high.begin()),
                        std::make_move_iterator(high.end()));

  AugmentationReport& rep = result.report;
  rep.boosted_generated = result.boosted.size();
  const std::size_t added = rep.synthetic_generated + rep.boosted_generated;
  rep.achieved_percent_with_boost =
      minority_percent(rep.original_total + added, rep.minority_count + added);
}

/// run_smote followed by outlier boosting when config.aol is set.
inline SmoteResult augment(const Dataset& data, const SmoteConfig& config) {
  SmoteResult result = run_smote(data, config);
  if (config.aol) apply_outlier_boost(data, config, result);
  return result;
}

/// Original rows followed by synthetic and boosted rows. Minority originals
/// carry their angular distance. Without an id column every row id is its
/// position in the table.
inline AugmentedTable build_augmented_table(const Dataset& data, const SmoteResult& result) {
  AugmentedTable table;
  table.feature_names = data.feature_names;
  table.id_column = data.id_column;
  table.target_name = data.target_name;
  table.rows.reserve(data.rows() + result.synthetic.size() + result.boosted.size());

  std::vector<std::optional<double>> dist(data.rows());
  for (std::size_t k = 0; k < result.minority_rows.size(); ++k) {
    dist[result.minority_rows[k]] = result.minority_angular_distances[k];
  }
  for (std::size_t r = 0; r < data.rows(); ++r) {
    AugmentedRow row;
    row.id = data.id_column ? data.row_ids[r] : std::to_string(r);
    const auto f = data.features.row(r);
    row.features.assign(f.begin(), f.end());
    row.label = data.labels[r];
    row.angular_distance = dist[r];
    table.rows.push_back(std::move(row));
  }
  std::size_t serial = 0;
  auto append = [&](const synth::SyntheticRecord& rec) {
    AugmentedRow row;
    ++serial;
    row.id = data.id_column ? "syn-" + std::to_string(serial) : std::to_string(table.rows.size());
    row.features = rec.features;
    row.label = result.minority_label;
    row.angular_distance = rec.angular_distance;
    row.rotation_angle = rec.rotation_angle;
    row.synthetic = true;
    row.boosted = rec.boosted;
    row.source_row_id = rec.source_row_id;
    table.rows.push_back(std::move(row));
  };
  for (const auto& rec : result.synthetic) append(rec);
  for (const auto& rec : result.boosted) append(rec);
  return table;
}

}  // namespace qsmote::pipeline
