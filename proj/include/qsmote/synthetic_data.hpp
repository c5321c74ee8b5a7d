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

// Seeded generator for a churn-style imbalanced dataset used by the tests,
// the acceptance suite and the `generate` command. The raw table mixes id,
// categorical, binned-numeric and raw-numeric columns so that every
// preprocessing path is exercised.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qsmote/csv.hpp"
#include "qsmote/random.hpp"

namespace qsmote::data {

struct SyntheticDatasetSpec {
  std::size_t rows = 2000;
  double minority_fraction = 0.10;
  std::uint64_t seed = 7;
  /// Fraction of non-churners drawn from the at-risk profile.
  double at_risk_share = 0.2;
};

namespace detail {
inline double gaussian(Rng& rng) {
  double u1 = rng.uniform();
  while (u1 <= 0.0) u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}
inline double clamp_round(double v, double lo, double hi, double step = 1.0) {
  return std::clamp(std::round(v / step) * step, lo, hi);
}
}  // namespace detail

/// Raw CSV text: CustomerID, MonthlyRevenue, MonthsInService, DroppedCalls,
/// CustomerCareCalls, RetentionCalls, Plan, HandsetWebCapable, CreditRating,
/// AgeHH1, Churn. Exactly round(rows * minority_fraction) rows have
/// Churn = "Yes". A few cells are left blank to exercise missing policies.
inline std::string make_churn_like_csv(const SyntheticDatasetSpec& spec = {}) {
  Rng rng(derive_seed(spec.seed, {0xDA7AULL}));
  const auto minority = static_cast<std::size_t>(std::floor(static_cast<double>(spec.rows) * spec.minority_fraction + 0.5));
  std::vector<bool> churn(spec.rows, false);
  {
    std::vector<std::size_t> idx(spec.rows);
    for (std::size_t i = 0; i < spec.rows; ++i) idx[i] = i;
    for (std::size_t i = 0; i < minority; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(spec.rows - i));
      std::swap(idx[i], idx[j]);
      churn[idx[i]] = true;
    }
  }

  static const char* kPlans[] = {"basic", "plus", "premium"};
  static const char* kCredit[] = {"1-Highest", "2-High", "3-Good", "4-Medium", "5-Low", "6-VeryLow", "7-Lowest"};

  std::ostringstream out;
  csv::write_record(out, {"CustomerID", "MonthlyRevenue", "MonthsInService", "DroppedCalls", "CustomerCareCalls",
                          "RetentionCalls", "Plan", "HandsetWebCapable", "CreditRating", "AgeHH1", "Churn"});
  using detail::clamp_round;
  using detail::gaussian;
  for (std::size_t i = 0; i < spec.rows; ++i) {
    const bool c = churn[i];
    // Churners all come from the at-risk profile; a share of loyal customers
    // shares it, so the classes overlap there.
    const bool at_risk = c || rng.uniform() < spec.at_risk_share;
    const double s = at_risk ? 2.0 : 0.0;
    const double revenue = clamp_round(52.0 + 10.0 * s + 18.0 * gaussian(rng), 5.0, 160.0, 0.01);
    const double months = clamp_round(22.0 - 8.0 * s + 8.0 * gaussian(rng), 1.0, 60.0);
    const double dropped = clamp_round(6.0 + 2.0 * s + 3.0 * gaussian(rng), 0.0, 30.0);
    const double care = clamp_round(2.5 + 1.5 * s + 1.6 * gaussian(rng), 0.0, 12.0);
    const double retention = clamp_round(0.5 + 1.0 * s + 0.8 * gaussian(rng), 0.0, 4.0);
    const double plan_draw = rng.uniform();
    const int plan = plan_draw < 0.45 ? 0 : (plan_draw < 0.8 ? 1 : 2);
    const bool web = rng.uniform() < 0.85;
    const int credit = static_cast<int>(clamp_round(2.8 + 1.0 * s + 1.4 * gaussian(rng), 0.0, 6.0));
    const double age = clamp_round(45.0 - 6.0 * s + 12.0 * gaussian(rng), 18.0, 90.0);

    std::vector<std::string> fields;
    char id[16];
    std::snprintf(id, sizeof id, "C%06zu", i + 1);
    fields.emplace_back(id);
    fields.push_back(csv::format_number(revenue));
    fields.push_back(csv::format_number(months));
    fields.push_back(csv::format_number(dropped));
    fields.push_back(csv::format_number(care));
    fields.push_back(csv::format_number(retention));
    fields.emplace_back(kPlans[plan]);
    fields.emplace_back(web ? "Yes" : "No");
    fields.emplace_back(kCredit[credit]);
    // Sparse gaps: handled by fill-mode (age) and fill-value (care calls).
    fields.push_back(rng.uniform() < 0.01 ? std::string() : csv::format_number(age));
    if (rng.uniform() < 0.005) fields[4].clear();
    fields.emplace_back(c ? "Yes" : "No");
    csv::write_record(out, fields);
  }
  return out.str();
}

/// Configuration matching make_churn_like_csv.
inline const char* churn_like_config_json() {
  return R"({
  "version": 1,
  "description": "Synthetic churn-style dataset (10% minority) used by tests and examples.",
  "columns": [
    {"name": "CustomerID", "kind": "id"},
    {"name": "MonthlyRevenue", "kind": "numeric-binned", "bins": "equal-width:10"},
    {"name": "MonthsInService", "kind": "numeric-binned", "bins": [0, 6, 12, 18, 24, 36, 48, 61]},
    {"name": "DroppedCalls", "kind": "numeric-raw"},
    {"name": "CustomerCareCalls", "kind": "numeric-raw", "missing": {"fill": 0}},
    {"name": "RetentionCalls", "kind": "numeric-raw"},
    {"name": "Plan", "kind": "categorical"},
    {"name": "HandsetWebCapable", "kind": "categorical"},
    {"name": "CreditRating", "kind": "categorical"},
    {"name": "AgeHH1", "kind": "numeric-binned", "bins": "quantile:5", "missing": "fill-mode"},
    {"name": "Churn", "kind": "target"}
  ],
  "smote": {"split_factor": 10, "shots": 0, "seed": 42, "bins": 10},
  "evaluate": {"k": 5, "split": 0.2}
}
)";
}

}  // namespace qsmote::data
