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

// K-nearest-neighbour scoring, binary classification metrics and the
// oversampling evaluation harness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qsmote/csv.hpp"
#include "qsmote/dataset.hpp"
#include "qsmote/errors.hpp"
#include "qsmote/matrix.hpp"
#include "qsmote/parallel.hpp"
#include "qsmote/pipeline.hpp"
#include "qsmote/random.hpp"

namespace qsmote::eval {

inline constexpr std::size_t kDefaultK = 5;

/// Fraction of the k nearest training rows (Euclidean) labelled positive.
/// Equal distances are ordered by training row index.
inline std::vector<double> knn_predict(const FeatureMatrix& train, std::span<const int> train_labels,
                                       const FeatureMatrix& test, std::size_t k, int positive_label = 1,
                                       std::size_t threads = 1) {
  if (train.empty()) throw DimensionError("KNN needs a nonempty training set");
  if (train_labels.size() != train.rows()) throw DimensionError("training labels do not match rows");
  if (k == 0 || k > train.rows()) {
    throw ParameterError("k must be in [1, " + std::to_string(train.rows()) + "], got " + std::to_string(k));
  }
  if (!test.empty() && test.cols() != train.cols()) {
    throw DimensionError("test rows have " + std::to_string(test.cols()) + " features, training rows " +
                         std::to_string(train.cols()));
  }
  std::vector<double> scores(test.rows());
  parallel_for(test.rows(), threads, [&](std::size_t t) {
    const auto q = test.row(t);
    std::vector<std::pair<double, std::size_t>> dist(train.rows());
    for (std::size_t r = 0; r < train.rows(); ++r) {
      const auto x = train.row(r);
      double d = 0.0;
      for (std::size_t c = 0; c < x.size(); ++c) {
        const double diff = x[c] - q[c];
        d += diff * diff;
      }
      dist[r] = {d, r};
    }
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < k; ++i) positives += train_labels[dist[i].second] == positive_label ? 1 : 0;
    scores[t] = static_cast<double>(positives) / static_cast<double>(k);
  });
  return scores;
}

inline std::vector<double> knn_predict(const Dataset& train, const FeatureMatrix& test, std::size_t k,
                                       int positive_label = 1, std::size_t threads = 1) {
  return knn_predict(train.features, train.labels, test, k, positive_label, threads);
}

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
};

/// Scores derived from a confusion matrix plus ranking metrics. Metrics that
/// are undefined for the input (no positives, no predicted positives, ...)
/// are empty rather than zero.
struct MetricsReport {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> roc_auc;
  std::optional<double> pr_auc;
  std::vector<CurvePoint> roc_curve;  // (FPR, TPR)
  std::vector<CurvePoint> pr_curve;   // (recall, precision)
};

inline MetricsReport metrics_from_confusion(const ConfusionMatrix& cm) {
  MetricsReport m;
  m.confusion = cm;
  const auto d = [](std::size_t v) { return static_cast<double>(v); };
  if (cm.total() > 0) m.accuracy = d(cm.tp + cm.tn) / d(cm.total());
  if (cm.tp + cm.fp > 0) m.precision = d(cm.tp) / d(cm.tp + cm.fp);
  if (cm.tp + cm.fn > 0) {
    m.recall = d(cm.tp) / d(cm.tp + cm.fn);
    // Harmonic mean of precision and recall; 0 when nothing is predicted
    // positive.
    m.f1 = 2.0 * d(cm.tp) / d(2 * cm.tp + cm.fp + cm.fn);
  }
  return m;
}

inline ConfusionMatrix confusion_at(std::span<const double> scores, std::span<const int> labels,
                                    double threshold, int positive_label = 1) {
  if (scores.size() != labels.size()) throw DimensionError("scores and labels differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = labels[i] == positive_label;
    if (predicted && actual) ++cm.tp;
    else if (predicted) ++cm.fp;
    else if (actual) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

/// Classification metrics at `threshold` (score >= threshold predicts
/// positive), ROC-AUC by trapezoidal integration over the full ROC curve
/// (ties in score form one step) and PR-AUC as step-wise average precision.
inline MetricsReport compute_metrics(std::span<const double> scores, std::span<const int> labels,
                                     double threshold = 0.5, int positive_label = 1) {
  MetricsReport m = metrics_from_confusion(confusion_at(scores, labels, threshold, positive_label));

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::size_t pos = 0;
  for (int l : labels) pos += l == positive_label ? 1 : 0;
  const std::size_t neg = labels.size() - pos;

  std::size_t tp = 0;
  std::size_t fp = 0;
  m.roc_curve.push_back({0.0, 0.0});
  double roc_area = 0.0;
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    for (; i < order.size() && scores[order[i]] == s; ++i) {
      (labels[order[i]] == positive_label ? tp : fp) += 1;
    }
    if (pos > 0 && neg > 0) {
      const CurvePoint p{static_cast<double>(fp) / static_cast<double>(neg),
                         static_cast<double>(tp) / static_cast<double>(pos)};
      const CurvePoint& q = m.roc_curve.back();
      roc_area += (p.x - q.x) * (p.y + q.y) / 2.0;
      m.roc_curve.push_back(p);
    }
    if (pos > 0) {
      const double recall = static_cast<double>(tp) / static_cast<double>(pos);
      const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
      ap += (recall - prev_recall) * precision;
      prev_recall = recall;
      m.pr_curve.push_back({recall, precision});
    }
  }
  if (pos > 0 && neg > 0) {
    m.roc_auc = roc_area;
  } else {
    m.roc_curve.clear();
  }
  if (pos > 0) m.pr_auc = ap;
  return m;
}

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Stratified split: round(test_fraction * n_c) rows of each class go to the
/// test set, chosen by a seeded shuffle. Both index lists are ascending.
inline SplitIndices stratified_split(std::span<const int> labels, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ParameterError("split ratio must be in (0, 1)");
  std::set<int> classes(labels.begin(), labels.end());
  SplitIndices out;
  for (int c : classes) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == c) idx.push_back(i);
    }
    Rng rng(derive_seed(seed, {0x5B117ULL, static_cast<std::uint64_t>(c)}));
    for (std::size_t i = idx.size(); i > 1; --i) {
      std::swap(idx[i - 1], idx[static_cast<std::size_t>(rng.below(i))]);
    }
    const auto n_test = static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(idx.size()) + 0.5));
    out.test.insert(out.test.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    out.train.insert(out.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

struct ExperimentConfig {
  /// Target minority percentages; the baseline (no oversampling) row is
  /// always produced first.
  std::vector<double> targets;
  std::vector<bool> aol_modes = {false};
  double test_fraction = 0.2;
  std::size_t k = kDefaultK;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  /// Template for oversampling; target percent and aol are overwritten per
  /// grid point, seed is taken from here.
  pipeline::SmoteConfig smote;
  std::size_t threads = 1;
};

struct ExperimentRow {
  std::optional<double> target_percent;  // empty for the baseline
  bool aol = false;
  double accuracy_train = 0.0;
  double accuracy_test = 0.0;
  std::optional<double> f1;
  std::optional<double> pr_auc;
  std::optional<double> roc_auc;
  std::size_t train_rows = 0;
  std::size_t synthetic = 0;
  std::size_t boosted = 0;
  double achieved_percent = 0.0;

  bool operator==(const ExperimentRow&) const = default;
};

/// Trains KNN on `train` (optionally augmented) and scores it on `test`.
inline ExperimentRow evaluate_split(const Dataset& train, const Dataset& test, const ExperimentConfig& cfg,
                                    int positive_label) {
  const std::size_t k = std::min(cfg.k, train.rows());
  ExperimentRow row;
  const auto train_scores = knn_predict(train, train.features, k, positive_label, cfg.threads);
  row.accuracy_train = compute_metrics(train_scores, train.labels, cfg.threshold, positive_label).accuracy;
  const auto test_scores = knn_predict(train, test.features, k, positive_label, cfg.threads);
  const MetricsReport m = compute_metrics(test_scores, test.labels, cfg.threshold, positive_label);
  row.accuracy_test = m.accuracy;
  row.f1 = m.f1;
  row.pr_auc = m.pr_auc;
  row.roc_auc = m.roc_auc;
  row.train_rows = train.rows();
  row.achieved_percent = pipeline::minority_percent(train.rows(), train.count_label(positive_label));
  return row;
}

/// Baseline plus one row per (target, aol mode). Oversampling only ever sees
/// the training split; the test split is shared by all rows.
inline std::vector<ExperimentRow> run_experiment(const Dataset& data, const ExperimentConfig& cfg) {
  const int positive = data.minority_label();
  const SplitIndices split = stratified_split(data.labels, cfg.test_fraction, cfg.seed);
  const Dataset train = data.subset(split.train);
  const Dataset test = data.subset(split.test);
  const std::set<std::string> train_ids(train.row_ids.begin(), train.row_ids.end());

  std::vector<ExperimentRow> rows;
  rows.push_back(evaluate_split(train, test, cfg, positive));

  for (double target : cfg.targets) {
    for (bool aol : cfg.aol_modes) {
      pipeline::SmoteConfig sc = cfg.smote;
      sc.target_minority_percent = target;
      sc.aol = aol;
      sc.threads = cfg.threads;
      const pipeline::SmoteResult res = pipeline::augment(train, sc);

      Dataset augmented = train;
      for (const auto* group : {&res.synthetic, &res.boosted}) {
        for (const auto& rec : *group) {
          if (!train_ids.contains(rec.source_row_id)) {
            throw Error("synthetic record derived from a non-training row '" + rec.source_row_id + "'");
          }
          augmented.features.push_row(rec.features);
          augmented.labels.push_back(res.minority_label);
          augmented.row_ids.push_back("syn-" + std::to_string(augmented.row_ids.size()));
        }
      }
      ExperimentRow row = evaluate_split(augmented, test, cfg, positive);
      row.target_percent = target;
      row.aol = aol;
      row.synthetic = res.synthetic.size();
      row.boosted = res.boosted.size();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::string format_optional(const std::optional<double>& v) {
  return v ? csv::format_number(*v) : std::string("undefined");
}

/// Result table in the layout target_percent, aol, accuracy_train,
/// accuracy_test, f1, pr_auc, roc_auc (+ bookkeeping columns).
inline std::string results_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream out;
  out << "target_percent,aol,accuracy_train,accuracy_test,f1,pr_auc,roc_auc,train_rows,synthetic,boosted,"
         "achieved_percent\n";
  for (const auto& r : rows) {
    out << (r.target_percent ? csv::format_number(*r.target_percent) : std::string("none")) << ','
        << (r.aol ? "yes" : "no") << ',' << csv::format_number(r.accuracy_train) << ','
        << csv::format_number(r.accuracy_test) << ',' << format_optional(r.f1) << ','
        << format_optional(r.pr_auc) << ',' << format_optional(r.roc_auc) << ',' << r.train_rows << ','
        << r.synthetic << ',' << r.boosted << ',' << csv::format_number(r.achieved_percent) << '\n';
  }
  return out.str();
}

/// Direction-of-trend summary over an experiment table.
struct TrendSummary {
  std::optional<double> baseline_f1;
  std::optional<double> top_f1;  // F1 at the largest target, no AOL
  double f1_gain = 0.0;
  std::size_t steps = 0;
  std::size_t pr_nondecreasing = 0;
  std::size_t roc_nondecreasing = 0;
  std::size_t aol_levels = 0;
  std::size_t aol_wins = 0;
};

/// Compares consecutive non-AOL rows (baseline first, then targets in
/// ascending order), and AOL vs non-AOL F1 at targets within [aol_lo, aol_hi].
inline TrendSummary summarize_trend(const std::vector<ExperimentRow>& rows, double aol_lo = 30.0,
                                    double aol_hi = 36.0) {
  TrendSummary s;
  std::vector<const ExperimentRow*> chain;
  for (const auto& r : rows) {
    if (!r.target_percent) chain.insert(chain.begin(), &r);
  }
  std::vector<const ExperimentRow*> grid;
  for (const auto& r : rows) {
    if (r.target_percent && !r.aol) grid.push_back(&r);
  }
  std::sort(grid.begin(), grid.end(),
            [](const ExperimentRow* a, const ExperimentRow* b) { return *a->target_percent < *b->target_percent; });
  chain.insert(chain.end(), grid.begin(), grid.end());
  if (chain.empty()) return s;
  s.baseline_f1 = chain.front()->f1;
  s.top_f1 = chain.back()->f1;
  s.f1_gain = s.top_f1.value_or(0.0) - s.baseline_f1.value_or(0.0);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    ++s.steps;
    const auto& a = *chain[i - 1];
    const auto& b = *chain[i];
    if (a.pr_auc && b.pr_auc && *b.pr_auc >= *a.pr_auc) ++s.pr_nondecreasing;
    if (a.roc_auc && b.roc_auc && *b.roc_auc >= *a.roc_auc) ++s.roc_nondecreasing;
  }
  for (const auto& r : rows) {
    if (!r.target_percent || !r.aol || *r.target_percent < aol_lo || *r.target_percent > aol_hi) continue;
    for (const auto& plain : rows) {
      if (plain.target_percent == r.target_percent && !plain.aol) {
        ++s.aol_levels;
        if (r.f1.value_or(0.0) >= plain.f1.value_or(0.0)) ++s.aol_wins;
      }
    }
  }
  return s;
}

}  // namespace qsmote::eval
