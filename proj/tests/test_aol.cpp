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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsmote/aol.hpp"

namespace {

using namespace qsmote;
using namespace qsmote::aol;

std::vector<synth::SyntheticRecord> records_with_distances(const std::vector<double>& d) {
  std::vector<synth::SyntheticRecord> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    synth::SyntheticRecord r;
    r.features = {1.0 + static_cast<double>(i), 2.0, 0.5 * static_cast<double>(i % 7) + 0.1};
    r.angular_distance = d[i];
    r.source_row_id = "row" + std::to_string(i);
    r.synthetic = false;
    out.push_back(r);
  }
  return out;
}

TEST(DetectOutliers, WorkedExample) {
  const std::vector<double> v = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 100};
  const auto r = detect_outliers(v, 2);
  EXPECT_EQ(r.bounds.q1, 2.75);
  EXPECT_EQ(r.bounds.q3, 8.25);
  EXPECT_EQ(r.bounds.iqr, 5.5);
  EXPECT_EQ(r.bounds.upper_bound, 16.5);
  EXPECT_EQ(r.bounds.lower_bound, -5.5);
  EXPECT_TRUE(r.low.bins.empty());
  EXPECT_EQ(r.high.total(), 1u);
  std::vector<std::size_t> members;
  for (const auto& b : r.high.bins) members.insert(members.end(), b.members.begin(), b.members.end());
  EXPECT_EQ(members, std::vector<std::size_t>{11});
}

TEST(DetectOutliers, ConstantVector) {
  const std::vector<double> v(20, 1.25);
  const auto r = detect_outliers(v, 5);
  EXPECT_EQ(r.bounds.iqr, 0.0);
  EXPECT_EQ(r.bounds.lower_bound, 1.25);
  EXPECT_EQ(r.bounds.upper_bound, 1.25);
  EXPECT_EQ(r.low.total() + r.high.total(), 0u);
}

TEST(DetectOutliers, PlantedExtremes) {
  std::vector<double> v;
  for (int i = -10; i <= 10; ++i) v.push_back(i * 0.1);
  const auto base = iqr_bounds(v);
  v.push_back(base.upper_bound + 3.0);
  v.push_back(base.lower_bound - 3.0);
  v.push_back(base.lower_bound - 3.5);
  const auto r = detect_outliers(v, 3);
  EXPECT_EQ(r.high.total(), 1u);
  EXPECT_EQ(r.low.total(), 2u);
  EXPECT_EQ(r.low.side, Side::kLow);
  EXPECT_EQ(r.high.side, Side::kHigh);
}

TEST(DetectOutliers, AgreesWithSortAndScanOracle) {
  std::mt19937_64 gen(41);
  std::uniform_int_distribution<int> len(1, 60);
  std::cauchy_distribution<double> heavy(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(len(gen)));
    for (double& x : v) x = trial % 3 == 0 ? std::round(heavy(gen)) : heavy(gen);
    const double q1 = oracle::quantile(v, 0.25);
    const double q3 = oracle::quantile(v, 0.75);
    std::set<std::size_t> low;
    std::set<std::size_t> high;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < q1 - 1.5 * (q3 - q1)) low.insert(i);
      if (v[i] > q3 + 1.5 * (q3 - q1)) high.insert(i);
    }
    const auto r = detect_outliers(v, 1 + trial % 10);
    std::set<std::size_t> got_low;
    std::set<std::size_t> got_high;
    for (const auto& b : r.low.bins) got_low.insert(b.members.begin(), b.members.end());
    for (const auto& b : r.high.bins) got_high.insert(b.members.begin(), b.members.end());
    ASSERT_EQ(got_low, low) << "trial " << trial;
    ASSERT_EQ(got_high, high) << "trial " << trial;
  }
}

TEST(DetectOutliers, BinsAreContiguous) {
  std::vector<double> v(50, 1.0);
  for (int i = 0; i < 9; ++i) v.push_back(10.0 + i * i);
  const auto r = detect_outliers(v, 4);
  EXPECT_TRUE(r.low.bins.empty() || r.low.total() == 0);
  ASSERT_EQ(r.high.bins.size(), 4u);
  EXPECT_EQ(r.high.bins.front().bin_start, 10.0);
  EXPECT_EQ(r.high.bins.back().bin_end, 74.0);
  for (std::size_t b = 1; b < 4; ++b) EXPECT_EQ(r.high.bins[b].bin_start, r.high.bins[b - 1].bin_end);
  EXPECT_EQ(r.high.total(), 9u);
}

TEST(DetectOutliers, Errors) {
  const std::vector<double> empty;
  const std::vector<double> one = {1.0};
  EXPECT_THROW(detect_outliers(empty, 3), DimensionError);
  EXPECT_THROW(detect_outliers(one, 0), ParameterError);
}

TEST(Histogram, EdgesAndClosedLastBin) {
  const std::vector<double> v = {0, 10};
  const auto e = histogram_edges(v, 2);
  EXPECT_EQ(e, (std::vector<double>{0, 5, 10}));
  EXPECT_EQ(bin_index(4.999, e), 0u);
  EXPECT_EQ(bin_index(5.0, e), 1u);
  EXPECT_EQ(bin_index(10.0, e), 1u);
  const std::vector<double> c = {3, 3};
  EXPECT_EQ(histogram_edges(c, 1), (std::vector<double>{2.5, 3.5}));
}

TEST(BoostThresholds, Arithmetic) {
  const auto t = boost_thresholds(20, 5);
  EXPECT_EQ(t.threshold, 4u);
  EXPECT_EQ(t.half_threshold, 2u);
  EXPECT_EQ(boost_iterations(1, t), 4u);
  EXPECT_EQ(boost_iterations(3, t), 0u);
  EXPECT_EQ(boost_iterations(2, t), 0u);
  EXPECT_EQ(boost_iterations(0, t), 0u);
  const auto half_up = boost_thresholds(25, 10);  // 2.5 -> 3, 1.5 -> 2
  EXPECT_EQ(half_up.threshold, 3u);
  EXPECT_EQ(half_up.half_threshold, 2u);
}

// Twenty high outliers: nineteen packed in the last bin and one alone at the
// bottom of the range.
std::vector<double> twenty_outliers() {
  std::vector<double> v;
  for (int i = 0; i < 200; ++i) v.push_back(1.0 + 0.001 * i);
  v.push_back(3.0);
  for (int i = 0; i < 19; ++i) v.push_back(4.0 - 0.001 * i);
  return v;
}

TEST(BoostOutliers, SingleSourceBin) {
  const auto d = twenty_outliers();
  const auto report = detect_outliers(d, 5);
  ASSERT_EQ(report.high.total(), 20u);
  const auto records = records_with_distances(d);
  BoostOptions opts;
  opts.seed = 3;
  const auto boosted = boost_outliers(report.high, records, opts);
  ASSERT_EQ(boosted.size(), 4u);
  for (const auto& r : boosted) {
    EXPECT_TRUE(r.boosted);
    EXPECT_TRUE(r.synthetic);
    EXPECT_EQ(r.source_row_id, "row200");
    EXPECT_EQ(r.angular_distance, 3.0);
  }
  EXPECT_TRUE(boost_outliers(report.low, records, opts).empty());
}

TEST(BoostOutliers, PostCountIdentityAndDistinctRecords) {
  std::mt19937_64 gen(42);
  std::normal_distribution<double> g(1.5, 0.05);
  std::exponential_distribution<double> tail(3.0);
  std::vector<double> d;
  for (int i = 0; i < 300; ++i) d.push_back(g(gen));
  for (int i = 0; i < 60; ++i) d.push_back(1.8 + tail(gen));
  const auto report = detect_outliers(d, 10);
  const auto records = records_with_distances(d);
  const auto t = boost_thresholds(report.high.total(), 10);
  BoostOptions opts;
  opts.seed = 11;
  const auto boosted = boost_outliers(report.high, records, opts);

  std::size_t expected = 0;
  std::size_t boosted_bins = 0;
  for (const auto& bin : report.high.bins) {
    const std::size_t itr = boost_iterations(bin.count, t);
    if (itr == 0) continue;
    ++boosted_bins;
    std::size_t produced = 0;
    std::set<std::string> sources;
    for (std::size_t m : bin.members) sources.insert(records[m].source_row_id);
    for (const auto& r : boosted) produced += sources.contains(r.source_row_id) ? 1 : 0;
    EXPECT_EQ(bin.count + produced, bin.count * (1 + t.threshold / bin.count));
    expected += bin.count * itr;
  }
  EXPECT_GT(boosted_bins, 0u);
  EXPECT_EQ(boosted.size(), expected);

  std::set<std::vector<double>> seen;
  for (const auto& r : records) seen.insert(r.features);
  for (const auto& r : boosted) EXPECT_TRUE(seen.insert(r.features).second);
}

TEST(BoostOutliers, ThreadCountDoesNotMatter) {
  const auto d = twenty_outliers();
  const auto report = detect_outliers(d, 5);
  const auto records = records_with_distances(d);
  BoostOptions a;
  a.seed = 5;
  BoostOptions b = a;
  b.threads = 3;
  EXPECT_EQ(boost_outliers(report.high, records, a), boost_outliers(report.high, records, b));
}

TEST(BoostOutliers, EmptyInputs) {
  OutlierBinTable empty;
  empty.num_bins = 4;
  EXPECT_TRUE(boost_outliers(empty, {}, {}).empty());
}

}  // namespace
