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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qsmote/qdist.hpp"

namespace {

using namespace qsmote;
using namespace qsmote::qdist;
constexpr double kPi = std::numbers::pi;

TEST(PrepSwapTest, UnitVectors) {
  const std::vector<double> a = {1, 0};
  const auto s = prep_swap_test(a, a);
  EXPECT_NEAR(s.phi[0], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.phi[1], -1 / std::sqrt(2.0), 1e-15);
  ASSERT_EQ(s.psi.size(), 4u);
  EXPECT_NEAR(s.psi[0], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.psi[1], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(s.psi[2], 0.0);
  EXPECT_EQ(s.psi[3], 0.0);
  EXPECT_DOUBLE_EQ(s.z, 2.0);
}

TEST(PrepSwapTest, EqualNormsGiveSymmetricPhi) {
  const std::vector<double> a = {3, 4};
  const auto s = prep_swap_test(a, a);
  EXPECT_DOUBLE_EQ(s.dc_norm, 5.0);
  EXPECT_DOUBLE_EQ(s.md_norm, 5.0);
  EXPECT_NEAR(s.phi[0], -s.phi[1], 1e-15);
  EXPECT_NEAR(s.phi[0], 1 / std::sqrt(2.0), 1e-15);
}

TEST(PrepSwapTest, Errors) {
  const std::vector<double> a = {1, 0};
  const std::vector<double> zero = {0, 0};
  const std::vector<double> longer = {1, 0, 0, 0};
  EXPECT_THROW(prep_swap_test(a, zero), DegenerateInputError);
  EXPECT_THROW(prep_swap_test(a, longer), DimensionError);
}

TEST(PrepSwapTest, Invariants) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = std::size_t{1} << (1 + trial % 5);
    const auto a = oracle::random_vector(gen, n);
    const auto b = oracle::random_vector(gen, n);
    const auto s = prep_swap_test(a, b);
    EXPECT_NEAR(std::hypot(s.phi[0], s.phi[1]), 1.0, 1e-12);
    double psi2 = 0.0;
    for (double v : s.psi) psi2 += v * v;
    EXPECT_NEAR(psi2, 1.0, 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_DOUBLE_EQ(s.psi[2 * i], a[i] / (s.dc_norm * std::sqrt(2.0)));
      EXPECT_DOUBLE_EQ(s.psi[2 * i + 1], b[i] / (s.md_norm * std::sqrt(2.0)));
    }
  }
}

TEST(PrepSwapTest, RoundingIsOptIn) {
  const std::vector<double> a = {1, 2, 3, 4};
  const std::vector<double> b = {2, 1, 0.5, 3};
  const auto plain = prep_swap_test(a, b);
  const auto rounded = prep_swap_test(a, b, PrepOptions{3});
  EXPECT_EQ(rounded.z, std::round(plain.z));
  for (double v : rounded.psi) EXPECT_NEAR(v * 1000.0, std::round(v * 1000.0), 1e-9);
  EXPECT_NE(plain.psi, rounded.psi);
}

TEST(SwapTest, IdenticalUnitVectors) {
  const std::vector<double> a = {1, 0};
  const auto r = swap_test(prep_swap_test(a, a), 0, 0);
  EXPECT_NEAR(r.outcome.p0, 0.75, 1e-12);
  EXPECT_NEAR(r.overlap_probability, 0.5, 1e-12);
  EXPECT_NEAR(r.angular_distance, kPi / 2, 1e-12);
  EXPECT_NEAR(r.euclid_dissimilarity * r.euclid_dissimilarity, 2.0 * 2.0 * 0.5, 1e-12);
}

TEST(SwapTest, SampledNearExact) {
  const std::vector<double> a = {1, 0};
  const auto r = swap_test(prep_swap_test(a, a), 10000, 99);
  EXPECT_LE(std::abs(r.overlap_probability - 0.5), 0.03);
  EXPECT_EQ(r.outcome.shots, 10000u);
}

TEST(SwapTest, MatchesReducedDensityOracle) {
  std::mt19937_64 gen(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::size_t{1} << (1 + trial % 5);
    const auto a = oracle::random_vector(gen, n, -2.0, 3.0);
    const auto b = oracle::random_vector(gen, n, -2.0, 3.0);
    const auto s = prep_swap_test(a, b);
    const auto r = swap_test(s, 0, 0);
    const double p0 = oracle::swap_test_p0({s.phi[0], s.phi[1]}, s.psi);
    EXPECT_NEAR(r.outcome.p0, p0, 1e-9);
    EXPECT_NEAR(r.overlap_probability, std::clamp(2 * p0 - 1, 0.0, 1.0), 1e-9);
  }
}

TEST(SwapTest, LiteralEstimatorEstimator) {
  statevec::MeasurementOutcome o;
  o.p0 = 0.75;
  o.p1 = 0.25;
  EXPECT_DOUBLE_EQ(estimate_overlap(o, Estimator::kStandard), 0.5);
  EXPECT_DOUBLE_EQ(estimate_overlap(o, Estimator::kLiteral), 0.0);  // 1 - 1.5 + 0.25 < 0
  o.p0 = 0.2;
  o.p1 = 0.8;
  EXPECT_DOUBLE_EQ(estimate_overlap(o, Estimator::kStandard), 0.0);
  EXPECT_NEAR(estimate_overlap(o, Estimator::kLiteral), 1.0, 1e-15);
}

TEST(AngularDistance, ClosedForm) {
  EXPECT_EQ(angular_distance_from_overlap(1.0), 0.0);
  EXPECT_EQ(angular_distance_from_overlap(0.0), kPi);
  EXPECT_NEAR(angular_distance_from_overlap(0.25), 2 * kPi / 3, 1e-15);
  EXPECT_NEAR(angular_distance_from_overlap(0.5), kPi / 2, 1e-15);
}

TEST(AngularDistance, MonotoneNonincreasing) {
  double prev = angular_distance_from_overlap(0.0);
  for (int i = 1; i <= 1000; ++i) {
    const double d = angular_distance_from_overlap(i / 1000.0);
    EXPECT_LE(d, prev);
    prev = d;
  }
}

TEST(SwapTest, ScaleInvariance) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = oracle::random_vector(gen, 8, 0.1, 5.0);
    const auto b = oracle::random_vector(gen, 8, 0.1, 5.0);
    const double k = 0.01 + trial * 0.7;
    std::vector<double> ka = a;
    std::vector<double> kb = b;
    for (double& v : ka) v *= k;
    for (double& v : kb) v *= k;
    const auto s1 = prep_swap_test(a, b);
    const auto s2 = prep_swap_test(ka, kb);
    EXPECT_NEAR(s1.phi[0], s2.phi[0], 1e-9);
    EXPECT_NEAR(s1.phi[1], s2.phi[1], 1e-9);
    for (std::size_t i = 0; i < s1.psi.size(); ++i) EXPECT_NEAR(s1.psi[i], s2.psi[i], 1e-9);
    EXPECT_NEAR(swap_test(s1, 0, 0).overlap_probability, swap_test(s2, 0, 0).overlap_probability, 1e-9);
  }
}

TEST(DistanceTable, RowEqualToCentroid) {
  const std::vector<double> c = {1, 0};
  const auto t = angular_distance_table(FeatureMatrix::from_rows({{1, 0}}), c);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_NEAR(t[0], kPi / 2, 1e-12);
}

TEST(DistanceTable, EmptyTable) {
  const std::vector<double> c = {1, 2, 3};
  EXPECT_TRUE(angular_distance_table(FeatureMatrix(0, 3), c).empty());
}

TEST(DistanceTable, PadsOddWidths) {
  const std::vector<double> c = {1, 2, 3};
  const auto t = angular_distance_table(FeatureMatrix::from_rows({{1, 2, 3}, {3, 0, 1}}), c);
  const std::vector<double> cp = {1, 2, 3, 0};
  const std::vector<double> p = {3, 0, 1, 0};
  EXPECT_DOUBLE_EQ(t[1], swap_test(prep_swap_test(cp, p), 0, 0).angular_distance);
}

TEST(DistanceTable, DeterministicAndThreadIndependent) {
  std::mt19937_64 gen(24);
  FeatureMatrix m(40, 5);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto v = oracle::random_vector(gen, 5, 0.0, 4.0);
    std::copy(v.begin(), v.end(), m.row(r).begin());
  }
  const auto c = oracle::random_vector(gen, 5, 0.0, 4.0);
  for (std::size_t shots : {std::size_t{0}, std::size_t{500}}) {
    DistanceOptions o;
    o.shots = shots;
    o.seed = 5;
    const auto one = angular_distance_table(m, c, o);
    o.threads = 4;
    EXPECT_EQ(one, angular_distance_table(m, c, o));
    EXPECT_EQ(one, angular_distance_table(m, c, o));
  }
}

TEST(DistanceTable, DegenerateRowNamesIndex) {
  const std::vector<double> c = {1, 1};
  try {
    angular_distance_table(FeatureMatrix::from_rows({{1, 2}, {1, 1}, {0, 0}}), c);
    FAIL() << "expected RowError";
  } catch (const RowError& e) {
    EXPECT_EQ(e.row_index(), 2u);
  }
}

TEST(DistanceTable, WidthMismatch) {
  const std::vector<double> c = {1, 1, 1};
  EXPECT_THROW(angular_distance_table(FeatureMatrix::from_rows({{1, 2}}), c), DimensionError);
}

}  // namespace
