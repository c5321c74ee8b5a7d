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

// Angular Outlier (AOL) detection and boosting. Outliers are angular
// distances beyond the 1.5 IQR fences of the combined original + synthetic
// minority distribution; each side is split into equal-width bins and bins
// holding fewer than half the average count receive extra synthetic records
// generated with wider rotation angles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsmote/errors.hpp"
#include "qsmote/matrix.hpp"
#include "qsmote/parallel.hpp"
#include "qsmote/random.hpp"
#include "qsmote/synth.hpp"

namespace qsmote::aol {

inline constexpr double kIqrFence = 1.5;
inline constexpr double kDefaultBoostMultiplier = 1.5;

struct OutlierBounds {
  double q1 = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

enum class Side { kLow, kHigh };

inline const char* to_string(Side s) { return s == Side::kLow ? "low" : "high"; }

struct OutlierBin {
  double bin_start = 0.0;
  double bin_end = 0.0;
  std::size_t count = 0;
  /// Indices (into the detector's input) of the values falling in this bin.
  std::vector<std::size_t> members;
};

struct OutlierBinTable {
  Side side = Side::kLow;
  std::size_t num_bins = 0;
  std::vector<OutlierBin> bins;  // empty when the side has no outliers

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& b : bins) n += b.count;
    return n;
  }
};

struct OutlierReport {
  OutlierBounds bounds;
  OutlierBinTable low;
  OutlierBinTable high;
};

/// Quantile of a sorted, nonempty sample by linear interpolation between the
/// order statistics at position q * (n - 1).
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw DimensionError("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline OutlierBounds iqr_bounds(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  OutlierBounds b;
  b.q1 = quantile_sorted(sorted, 0.25);
  b.q3 = quantile_sorted(sorted, 0.75);
  b.iqr = b.q3 - b.q1;
  b.lower_bound = b.q1 - kIqrFence * b.iqr;
  b.upper_bound = b.q3 + kIqrFence * b.iqr;
  return b;
}

/// Equal-width bin edges spanning [min, max] of `values`; a zero-width range
/// is widened to [v - 0.5, v + 0.5].
inline std::vector<double> histogram_edges(std::span<const double> values, std::size_t num_bins) {
  if (num_bins == 0) throw ParameterError("number of bins must be >= 1");
  if (values.empty()) throw DimensionError("histogram of an empty sample");
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  std::vector<double> edges(num_bins + 1);
  const double width = (hi - lo) / static_cast<double>(num_bins);
  for (std::size_t i = 0; i < num_bins; ++i) edges[i] = lo + static_cast<double>(i) * width;
  edges[num_bins] = hi;
  return edges;
}

/// Bin of `x` for the given edges: edges[i] <= x < edges[i + 1], with the last
/// bin closed on the right. Values outside the range clamp to the end bins.
inline std::size_t bin_index(double x, std::span<const double> edges) {
  const std::size_t num_bins = edges.size() - 1;
  if (x >= edges.back()) return num_bins - 1;
  const auto it = std::upper_bound(edges.begin(), edges.end(), x);
  if (it == edges.begin()) return 0;
  return std::min<std::size_t>(static_cast<std::size_t>(it - edges.begin()) - 1, num_bins - 1);
}

namespace detail {
inline OutlierBinTable bin_subset(std::span<const double> values,
                                  const std::vector<std::size_t>& members, Side side,
                                  std::size_t num_bins) {
  OutlierBinTable table;
  table.side = side;
  table.num_bins = num_bins;
  if (members.empty()) return table;

  std::vector<double> subset;
  subset.reserve(members.size());
  for (std::size_t i : members) subset.push_back(values[i]);
  const std::vector<double> edges = histogram_edges(subset, num_bins);
  table.bins.resize(num_bins);
  for (std::size_t b = 0; b < num_bins; ++b) {
    table.bins[b].bin_start = edges[b];
    table.bins[b].bin_end = edges[b + 1];
  }
  for (std::size_t k = 0; k < members.size(); ++k) {
    OutlierBin& bin = table.bins[bin_index(subset[k], edges)];
    ++bin.count;
    bin.members.push_back(members[k]);
  }
  return table;
}
}  // namespace detail

/// IQR fences over `angular_distances` and binned tables of the values below
/// the lower fence and above the upper fence.
inline OutlierReport detect_outliers(std::span<const double> angular_distances, std::size_t num_bins) {
  if (angular_distances.empty()) throw DimensionError("no angular distances to analyse");
  if (num_bins == 0) throw ParameterError("number of bins must be >= 1");

  OutlierReport report;
  report.bounds = iqr_bounds(angular_distances);
  std::vector<std::size_t> low;
  std::vector<std::size_t> high;
  for (std::size_t i = 0; i < angular_distances.size(); ++i) {
    if (angular_distances[i] < report.bounds.lower_bound) low.push_back(i);
    if (angular_distances[i] > report.bounds.upper_bound) high.push_back(i);
  }
  report.low = detail::bin_subset(angular_distances, low, Side::kLow, num_bins);
  report.high = detail::bin_subset(angular_distances, high, Side::kHigh, num_bins);
  return report;
}

/// Round half up, used for the bin thresholds.
inline std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

struct BoostThresholds {
  std::size_t threshold = 0;
  std::size_t half_threshold = 0;
};

inline BoostThresholds boost_thresholds(std::size_t total_outliers, std::size_t num_bins) {
  if (num_bins == 0) throw ParameterError("number of bins must be >= 1");
  BoostThresholds t;
  t.threshold = round_half_up(static_cast<double>(total_outliers) / static_cast<double>(num_bins));
  t.half_threshold = round_half_up(static_cast<double>(t.threshold) / 2.0);
  return t;
}

/// Extra records generated per source record in a bin of `count` records;
/// zero when the bin is empty or not under-populated.
inline std::size_t boost_iterations(std::size_t count, const BoostThresholds& t) {
  if (count == 0 || count >= t.half_threshold) return 0;
  return t.threshold / count;
}

struct BoostOptions {
  synth::SynthOptions synth;
  double angle_multiplier = kDefaultBoostMultiplier;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

/// Boosts the under-populated bins of one side. `records` must be the
/// sequence whose angular distances were passed to detect_outliers, so that
/// bin member indices refer into it. Every record generated here is marked
/// boosted and inherits its source's angular distance and source row id.
inline std::vector<synth::SyntheticRecord> boost_outliers(
    const OutlierBinTable& table, std::span<const synth::SyntheticRecord> records,
    const BoostOptions& options) {
  std::vector<synth::SyntheticRecord> out;
  if (table.bins.empty() || records.empty()) return out;
  const BoostThresholds t = boost_thresholds(table.total(), table.num_bins);

  struct Job {
    std::size_t member;
    std::size_t itr;
    std::size_t j;
  };
  std::vector<Job> jobs;
  for (const OutlierBin& bin : table.bins) {
    const std::size_t itr = boost_iterations(bin.count, t);
    if (itr == 0) continue;
    for (std::size_t member : bin.members) {
      if (member >= records.size()) throw IndexError("outlier bin member outside record table");
      for (std::size_t j = 0; j < itr; ++j) jobs.push_back({member, itr, j});
    }
  }

  out.resize(jobs.size());
  parallel_for(jobs.size(), options.threads, [&](std::size_t k) {
    const Job& job = jobs[k];
    const synth::SyntheticRecord& src = records[job.member];
    const double increment =
        static_cast<double>(job.itr) * synth::kOneDegree * options.angle_multiplier +
        static_cast<double>(job.j);
    Rng rng(derive_seed(options.seed, {0xB0057ULL, static_cast<std::uint64_t>(table.side),
                                       job.member, job.j}));
    synth::SyntheticRecord rec =
        synth::create_syn_data(src.features, src.angular_distance, increment, options.synth, rng);
    rec.source_row_id = src.source_row_id;
    rec.boosted = true;
    out[k] = std::move(rec);
  });
  return out;
}

}  // namespace qsmote::aol
