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

// Acceptance checks. Prints one PASS/FAIL line per criterion; an optional
// argument selects a single criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "qsmote/aol.hpp"
#include "qsmote/cli.hpp"
#include "qsmote/data.hpp"
#include "qsmote/eval.hpp"
#include "qsmote/pipeline.hpp"
#include "qsmote/qdist.hpp"
#include "qsmote/synth.hpp"
#include "qsmote/synthetic_data.hpp"

#ifndef QSMOTE_DATA_DIR
#define QSMOTE_DATA_DIR "data"
#endif

namespace {

using namespace qsmote;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

std::string data_path(const std::string& name) { return std::string(QSMOTE_DATA_DIR) + "/" + name; }

Outcome swap_test_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(1001);
  std::uniform_int_distribution<std::size_t> dim(2, 64);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = dim(gen);
    const auto a = oracle::random_vector(gen, n, -5.0, 5.0);
    const auto b = oracle::random_vector(gen, n, -5.0, 5.0);
    const std::size_t len = padded_length(n);
    std::vector<double> pa(len, 0.0);
    std::vector<double> pb(len, 0.0);
    std::copy(a.begin(), a.end(), pa.begin());
    std::copy(b.begin(), b.end(), pb.begin());
    const auto s = qdist::prep_swap_test(pa, pb);
    const auto r = qdist::swap_test(s, 0, 0);
    const double p0 = oracle::swap_test_p0({s.phi[0], s.phi[1]}, s.psi);
    worst = std::max(worst, std::abs(r.outcome.p0 - p0));
    worst = std::max(worst, std::abs(r.overlap_probability - std::clamp(2.0 * p0 - 1.0, 0.0, 1.0)));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 30.0,
          "500 pairs, max |diff| " + sci(worst) + ", " + fixed(secs, 2) + " s"};
}

Outcome sampled_convergence() {
  std::mt19937_64 gen(2002);
  std::uniform_int_distribution<std::size_t> dim(2, 16);
  const std::size_t shots = 10000;
  int within = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = padded_length(dim(gen));
    const auto a = oracle::random_vector(gen, n, -2.0, 2.0);
    const auto b = oracle::random_vector(gen, n, -2.0, 2.0);
    const auto s = qdist::prep_swap_test(a, b);
    const double p = qdist::swap_test(s, 0, 0).outcome.p0;
    const double p_hat = qdist::swap_test(s, shots, 7000 + static_cast<std::uint64_t>(trial)).outcome.p0;
    within += std::abs(p_hat - p) <= 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(shots)) ? 1 : 0;
  }
  return {within >= 190, std::to_string(within) + "/200 trials within 4 sigma"};
}

Outcome angular_closed_form() {
  constexpr double pi = std::numbers::pi;
  const double ps[] = {0.0, 0.25, 0.5, 1.0};
  const double want[] = {pi, 2.0 * pi / 3.0, pi / 2.0, 0.0};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(qdist::angular_distance_from_overlap(ps[i]) - want[i]));
  return {worst <= 4.0 * std::numeric_limits<double>::epsilon(), "max |diff| " + sci(worst)};
}

Outcome rotation_correctness() {
  std::mt19937_64 gen(3003);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst_oracle = 0.0;
  for (std::size_t width = 1; width <= 16; ++width) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = oracle::random_vector(gen, width, -3.0, 3.0);
      const double theta = angle(gen);
      for (bool rescale : {false, true}) {
        const auto got = synth::rotate(FeatureVector::encode(x), theta, rescale).features;
        const auto want = oracle::decoded_rotation(x, theta, rescale);
        for (std::size_t i = 0; i < got.size(); ++i) worst_oracle = std::max(worst_oracle, std::abs(got[i] - want[i]));
      }
    }
  }
  double worst_norm = 0.0;
  std::uniform_int_distribution<std::size_t> width(1, 40);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto x = oracle::random_vector(gen, width(gen), -10.0, 10.0);
    const auto r = synth::rotate(FeatureVector::encode(x), angle(gen), true);
    worst_norm = std::max(worst_norm, std::abs(r.state.norm_squared() - 1.0));
  }
  return {worst_oracle <= 1e-9 && worst_norm <= 1e-9,
          "oracle max |diff| " + sci(worst_oracle) + ", norm max |1 - |s|^2| " +
              sci(worst_norm)};
}

Outcome ratio_targeting() {
  const auto t0 = Clock::now();
  data::SyntheticDatasetSpec spec;
  spec.rows = 2000;
  spec.minority_fraction = 0.10;
  const Dataset ds = data::preprocess(csv::parse(data::make_churn_like_csv(spec)),
                                      data::parse_config(nlohmann::json::parse(data::churn_like_config_json())));
  double worst = 0.0;
  for (double t : cli::default_grid()) {
    pipeline::SmoteConfig c;
    c.target_minority_percent = t;
    c.shots = 0;
    c.seed = 5;
    const auto r = pipeline::run_smote(ds, c);
    worst = std::max(worst, std::abs(r.report.achieved_percent - t));
  }
  const double secs = seconds_since(t0);
  return {worst <= 0.2 && secs < 120.0,
          "max |achieved - target| " + fixed(worst) + " points, " + fixed(secs, 2) + " s"};
}

Outcome outlier_oracle() {
  std::mt19937_64 gen(4004);
  std::uniform_int_distribution<int> len(1, 80);
  std::cauchy_distribution<double> heavy(0.0, 1.0);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(len(gen)));
    for (double& x : v) x = trial % 4 == 0 ? std::round(heavy(gen)) : heavy(gen);
    const double q1 = oracle::quantile(v, 0.25);
    const double q3 = oracle::quantile(v, 0.75);
    std::set<std::size_t> low;
    std::set<std::size_t> high;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < q1 - 1.5 * (q3 - q1)) low.insert(i);
      if (v[i] > q3 + 1.5 * (q3 - q1)) high.insert(i);
    }
    const auto r = aol::detect_outliers(v, 1 + static_cast<std::size_t>(trial) % 10);
    std::set<std::size_t> got_low;
    std::set<std::size_t> got_high;
    for (const auto& b : r.low.bins) got_low.insert(b.members.begin(), b.members.end());
    for (const auto& b : r.high.bins) got_high.insert(b.members.begin(), b.members.end());
    mismatches += got_low == low && got_high == high ? 0 : 1;
  }
  const std::vector<double> example = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 100};
  const auto b = aol::detect_outliers(example, 10).bounds;
  const bool worked = b.q1 == 2.75 && b.q3 == 8.25 && b.upper_bound == 16.5;
  return {mismatches == 0 && worked, std::to_string(mismatches) + " membership mismatches; worked example Q1=" +
                                         fixed(b.q1, 2) + " Q3=" + fixed(b.q3, 2) + " upper=" + fixed(b.upper_bound, 2)};
}

// Minority rows with a heavy-tailed feature, so the angular distances carry
// sparse outlier bins.
Dataset tail_dataset() {
  Dataset d;
  d.feature_names = {"a", "b", "c"};
  d.target_name = "y";
  std::mt19937_64 gen(11);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 1000; ++i) {
    const bool pos = i % 5 == 0;
    const bool tail = pos && i % 3 == 0;
    const double a = 5.0 + 0.05 * g(gen);
    const double b = tail ? 5.0 * std::exp(3.5 * g(gen)) : 5.0 + 0.05 * g(gen);
    rows.push_back({a, b, 5.0 + 0.05 * g(gen)});
    d.labels.push_back(pos ? 1 : 0);
    d.row_ids.push_back(std::to_string(i));
  }
  d.features = FeatureMatrix::from_rows(rows);
  return d;
}

Outcome boost_arithmetic() {
  const Dataset d = tail_dataset();
  pipeline::SmoteConfig c;
  c.target_minority_percent = 24;
  c.shots = 0;
  c.seed = 77;
  c.aol = true;
  const auto r = pipeline::augment(d, c);
  std::size_t bins_checked = 0;
  std::size_t bad = 0;
  for (const auto* side : {&r.outliers->low, &r.outliers->high}) {
    if (side->bins.empty()) continue;
    const auto threshold = static_cast<std::size_t>(
        std::floor(static_cast<double>(side->total()) / static_cast<double>(side->num_bins) + 0.5));
    for (std::size_t i = 0; i < side->bins.size(); ++i) {
      const auto& bin = side->bins[i];
      const bool last = i + 1 == side->bins.size();
      std::size_t produced = 0;
      for (const auto& rec : r.boosted) {
        const double x = rec.angular_distance;
        const bool inside = x >= bin.bin_start && (x < bin.bin_end || (last && x == bin.bin_end));
        const bool on_side = side->side == aol::Side::kLow ? x < r.outliers->bounds.lower_bound
                                                           : x > r.outliers->bounds.upper_bound;
        produced += inside && on_side ? 1 : 0;
      }
      if (produced == 0) continue;
      ++bins_checked;
      bad += bin.count + produced == bin.count * (1 + threshold / bin.count) ? 0 : 1;
    }
  }
  std::set<std::vector<double>> seen;
  for (const auto& row : pipeline::minority_records(d, r)) seen.insert(row.features);
  std::size_t duplicates = 0;
  for (const auto& rec : r.boosted) duplicates += seen.insert(rec.features).second ? 0 : 1;
  return {bins_checked > 0 && bad == 0 && duplicates == 0,
          std::to_string(bins_checked) + " boosted bins, " + std::to_string(bad) + " count mismatches, " +
              std::to_string(r.boosted.size()) + " boosted records, " + std::to_string(duplicates) + " duplicates"};
}

Outcome metrics_oracle() {
  std::mt19937_64 gen(5005);
  std::uniform_int_distribution<int> level(0, 10);
  std::bernoulli_distribution coin(0.25);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) % 150;
    std::vector<double> s(n);
    std::vector<int> l(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = trial % 2 == 0 ? level(gen) / 10.0 : std::generate_canonical<double, 53>(gen);
      l[i] = coin(gen) ? 1 : 0;
    }
    l[0] = 1;
    l[1] = 0;
    worst = std::max(worst, std::abs(*eval::compute_metrics(s, l).roc_auc - oracle::pairwise_auc(s, l)));
  }
  eval::ConfusionMatrix cm;
  cm.tp = 50;
  cm.fp = 10;
  cm.fn = 20;
  cm.tn = 120;
  const auto m = eval::metrics_from_confusion(cm);
  const bool example = std::abs(m.accuracy - 0.85) < 5e-5 && std::abs(*m.f1 - 0.7692) < 5e-5;
  return {worst <= 1e-9 && example, "AUC max |diff| " + sci(worst) + "; accuracy " + fixed(m.accuracy) +
                                        ", F1 " + fixed(*m.f1)};
}

Outcome trend_reproduction() {
  const auto t0 = Clock::now();
  const std::string config_path = data_path("synthetic_churn.config.json");
  const auto config = data::load_config(config_path);
  const Dataset ds = data::load_csv(data_path("synthetic_churn.csv"), config);
  eval::ExperimentConfig ec;
  cli::SmoteFlags flags;
  ec.smote = flags.resolve(config.smote, 0);
  ec.seed = ec.smote.seed;
  ec.targets = cli::default_grid();
  ec.aol_modes = {false, true};
  ec.k = config.evaluate.value("k", eval::kDefaultK);
  ec.test_fraction = config.evaluate.value("split", 0.2);
  ec.threads = 0;
  const auto rows = eval::run_experiment(ds, ec);
  const auto t = eval::summarize_trend(rows, 30.0, 36.0);
  const double secs = seconds_since(t0);

  const bool a = t.f1_gain >= 0.10;
  const bool b = t.pr_nondecreasing >= 8 && t.roc_nondecreasing >= 8;
  const bool c = t.aol_levels == 4 && t.aol_wins >= 3;
  std::size_t boosted = 0;
  for (const auto& r : rows) boosted += r.boosted;
  std::string detail = "(a) F1 " + fixed(t.baseline_f1.value_or(0)) + " -> " + fixed(t.top_f1.value_or(0)) +
                       " gain " + fixed(t.f1_gain) + (a ? " ok" : " short") + "; (b) PR nondecreasing " +
                       std::to_string(t.pr_nondecreasing) + "/" + std::to_string(t.steps) + ", ROC " +
                       std::to_string(t.roc_nondecreasing) + "/" + std::to_string(t.steps) +
                       (b ? " ok" : " short") + "; (c) AOL >= plain at " + std::to_string(t.aol_wins) + "/" +
                       std::to_string(t.aol_levels) + " levels, " + std::to_string(boosted) +
                       " boosted records" + (c ? " ok" : " short") + "; " + fixed(secs, 2) + " s";
  return {a && b && c && secs < 300.0, detail};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / ("qsmote-acceptance-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto f = [&](const std::string& name) { return (dir / name).string(); };
  const auto run = [](std::vector<std::string> args) {
    args.insert(args.begin(), "qsmote");
    std::ostringstream out;
    std::ostringstream err;
    return cli::run(args, out, err);
  };
  const std::vector<std::vector<std::string>> commands = {
      {"generate", f("raw.csv"), "--rows", "800", "--config-out", f("config.json")},
      {"preprocess", f("raw.csv"), f("config.json"), f("proc.csv")},
      {"smote", f("raw.csv"), f("aug.csv"), "--config", f("config.json"), "--shots", "0", "--seed", "3", "--aol"},
      {"evaluate", "--input", f("raw.csv"), "--config", f("config.json"), "-o", f("eval.csv"), "--shots", "0",
       "--grid", "30,50"},
  };
  const std::vector<std::string> outputs = {"raw.csv",      "config.json",     "proc.csv",
                                            "aug.csv",      "aug.angles.svg",  "aug.angles.csv",
                                            "eval.csv"};
  const std::vector<std::string> manifests = {"raw.csv", "proc.csv", "aug.csv", "eval.csv"};
  const auto snapshot = [&] {
    std::vector<std::string> bytes;
    for (const auto& o : outputs) bytes.push_back(testing_util::slurp(f(o)));
    for (const auto& m : manifests) {
      auto j = nlohmann::json::parse(testing_util::slurp(f(m + ".manifest.json")));
      j.erase("started_at");
      j.erase("finished_at");
      bytes.push_back(j.dump());
    }
    return bytes;
  };
  int failures = 0;
  for (const auto& cmd : commands) failures += run(cmd) == 0 ? 0 : 1;
  const auto first = snapshot();
  for (const auto& cmd : commands) {
    auto threaded = cmd;
    threaded.insert(threaded.begin(), {"--threads", "2"});
    failures += run(threaded) == 0 ? 0 : 1;
  }
  const auto second = snapshot();
  std::size_t differing = 0;
  for (std::size_t i = 0; i < first.size(); ++i) differing += first[i] == second[i] ? 0 : 1;
  std::filesystem::remove_all(dir);
  return {failures == 0 && differing == 0,
          std::to_string(commands.size()) + " commands run twice, " + std::to_string(failures) + " failed, " +
              std::to_string(differing) + "/" + std::to_string(first.size()) +
              " outputs differ (manifest timestamps excluded)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"swap-test oracle equivalence", swap_test_oracle},
      {"sampled convergence", sampled_convergence},
      {"angular-distance closed form", angular_closed_form},
      {"rotation correctness", rotation_correctness},
      {"ratio targeting", ratio_targeting},
      {"outlier oracle", outlier_oracle},
      {"boost arithmetic", boost_arithmetic},
      {"metrics oracle", metrics_oracle},
      {"trend reproduction", trend_reproduction},
      {"determinism", determinism},
  };
  std::size_t only = 0;
  if (argc > 1) only = static_cast<std::size_t>(std::strtoul(argv[1], nullptr, 10));
  if (argc > 1 && (only == 0 || only > criteria.size())) {
    std::cerr << "usage: acceptance [criterion 1-" << criteria.size() << "]\n";
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != i + 1) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << "criterion " << (i + 1) << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL")
              << " - " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
