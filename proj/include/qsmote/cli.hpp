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

// Command-line front end: preprocess, smote, evaluate and generate.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
// Every command writes its outputs through a transaction so that a failed
// run leaves no partial files behind, and every mutating command writes a
// JSON run manifest next to its main output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qsmote/aol.hpp"
#include "qsmote/csv.hpp"
#include "qsmote/data.hpp"
#include "qsmote/errors.hpp"
#include "qsmote/eval.hpp"
#include "qsmote/histogram.hpp"
#include "qsmote/parallel.hpp"
#include "qsmote/pipeline.hpp"
#include "qsmote/synthetic_data.hpp"

namespace qsmote::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// Target percents swept by `evaluate --grid default`.
inline const std::vector<double>& default_grid() {
  static const std::vector<double> grid = {30, 32, 34, 36, 38, 40, 42, 45, 48, 50};
  return grid;
}

/// Files are written to "<path>.partial" and renamed on commit; anything not
/// committed is removed on destruction.
class OutputTransaction {
 public:
  OutputTransaction() = default;
  OutputTransaction(const OutputTransaction&) = delete;
  OutputTransaction& operator=(const OutputTransaction&) = delete;

  ~OutputTransaction() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& [tmp, final_path] : files_) std::filesystem::remove(tmp, ec);
  }

  /// Registers an output and returns the temporary path to write it to.
  std::string add(const std::string& final_path) {
    const std::string tmp = final_path + ".partial";
    files_.emplace_back(tmp, final_path);
    return tmp;
  }

  void commit() {
    for (const auto& [tmp, final_path] : files_) {
      std::error_code ec;
      std::filesystem::rename(tmp, final_path, ec);
      if (ec) throw IoError(final_path, "cannot move output into place: " + ec.message());
    }
    committed_ = true;
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
  bool committed_ = false;
};

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xCBF29CE484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Run manifest. `parameters` holds the effective settings; the config hash
/// covers the configuration file bytes and those settings.
struct RunManifest {
  std::string command;
  std::string config_text;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<double> achieved_minority_percent;
  std::string started_at;
  std::string finished_at;

  std::string config_hash() const {
    return hex64(fnv1a64(parameters.dump(), fnv1a64(config_text)));
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["tool"] = "qsmote";
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["config_hash"] = config_hash();
    j["seed"] = seed;
    j["parameters"] = parameters;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["achieved_minority_percent"] =
        achieved_minority_percent ? nlohmann::json(*achieved_minority_percent) : nlohmann::json(nullptr);
    j["started_at"] = started_at;
    j["finished_at"] = finished_at;
    return j;
  }
};

inline std::string manifest_path_for(const std::string& output) { return output + ".manifest.json"; }

/// Stem used for secondary outputs: "dir/out.csv" -> "dir/out".
inline std::string output_stem(const std::string& output) {
  if (output.size() > 4 && output.ends_with(".csv")) return output.substr(0, output.size() - 4);
  return output;
}

namespace detail {

template <typename T>
T json_or(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

inline bool parse_switch(const std::string& v, const char* flag) {
  if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
  if (v == "off" || v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(std::string(flag) + " expects on/off, got '" + v + "'");
}

inline qdist::Estimator parse_estimator(const std::string& v) {
  if (v == "standard") return qdist::Estimator::kStandard;
  if (v == "literal") return qdist::Estimator::kLiteral;
  throw ConfigError("estimator must be 'standard' or 'literal', got '" + v + "'");
}

inline pipeline::CentroidScope parse_scope(const std::string& v) {
  if (v == "all") return pipeline::CentroidScope::kAllRows;
  if (v == "minority") return pipeline::CentroidScope::kMinorityOnly;
  throw ConfigError("centroid scope must be 'all' or 'minority', got '" + v + "'");
}

}  // namespace detail

/// Oversampling flags; unset members fall back to the config file's "smote"
/// section and then to library defaults.
struct SmoteFlags {
  std::optional<double> target_percent;
  std::optional<double> split_factor;
  std::optional<std::size_t> shots;
  std::optional<std::uint64_t> seed;
  std::optional<bool> aol;
  std::optional<std::size_t> bins;
  std::optional<double> boost_multiplier;
  std::optional<std::string> rescale;
  std::optional<std::string> estimator;
  std::optional<int> prep_rounding;
  std::optional<std::string> centroid;

  void attach(CLI::App& cmd, bool with_target_and_aol) {
    if (with_target_and_aol) {
      cmd.add_option("--target-percent", target_percent, "Target minority share of the augmented data, in percent")
          ->check(CLI::Range(0.0, 100.0));
      cmd.add_flag("--aol", aol, "Detect angular outliers and boost under-populated outlier bins");
    }
    cmd.add_option("--sf", split_factor, "Split factor dividing the rotation angle (default 10)");
    cmd.add_option("--shots", shots, "Swap-test shots; 0 = exact probabilities (default 10000)");
    cmd.add_option("--seed", seed, "Seed for every random choice (default 0)");
    cmd.add_option("--bins", bins, "Histogram bins per outlier side (default 10)");
    cmd.add_option("--boost-multiplier", boost_multiplier, "Multiplier on the boost angle increment (default 1.5)");
    cmd.add_option("--rescale", rescale, "Rescale synthetic points to the source norm: on|off (default on)");
    cmd.add_option("--estimator", estimator, "Overlap estimator: standard|literal (default standard)");
    cmd.add_option("--prep-rounding", prep_rounding, "Round swap-test amplitudes to N decimals (default off)");
    cmd.add_option("--centroid", centroid, "Centroid scope: all|minority (default all)");
  }

  pipeline::SmoteConfig resolve(const nlohmann::json& section, std::size_t threads) const {
    using detail::json_or;
    pipeline::SmoteConfig c;
    c.target_minority_percent = target_percent.value_or(json_or(section, "target_percent", c.target_minority_percent));
    c.split_factor = split_factor.value_or(json_or(section, "split_factor", c.split_factor));
    c.shots = shots.value_or(json_or<std::size_t>(section, "shots", c.shots));
    c.seed = seed.value_or(json_or<std::uint64_t>(section, "seed", c.seed));
    c.aol = aol.value_or(json_or(section, "aol", c.aol));
    c.num_bins = bins.value_or(json_or<std::size_t>(section, "bins", c.num_bins));
    c.boost_angle_multiplier = boost_multiplier.value_or(json_or(section, "boost_multiplier", c.boost_angle_multiplier));
    c.rescale = detail::parse_switch(rescale.value_or(json_or<std::string>(section, "rescale", "on")), "--rescale");
    c.estimator = detail::parse_estimator(estimator.value_or(json_or<std::string>(section, "estimator", "standard")));
    if (prep_rounding) {
      c.prep_rounding = *prep_rounding;
    } else if (section.is_object() && section.contains("prep_rounding") && !section["prep_rounding"].is_null()) {
      c.prep_rounding = json_or<int>(section, "prep_rounding", 3);
    }
    c.centroid_scope = detail::parse_scope(centroid.value_or(json_or<std::string>(section, "centroid", "all")));
    c.threads = threads;
    c.validate();
    return c;
  }
};

inline nlohmann::json describe(const pipeline::SmoteConfig& c) {
  nlohmann::json j;
  j["target_percent"] = c.target_minority_percent;
  j["split_factor"] = c.split_factor;
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  j["aol"] = c.aol;
  j["bins"] = c.num_bins;
  j["boost_multiplier"] = c.boost_angle_multiplier;
  j["rescale"] = c.rescale;
  j["estimator"] = c.estimator == qdist::Estimator::kStandard ? "standard" : "literal";
  j["prep_rounding"] = c.prep_rounding ? nlohmann::json(*c.prep_rounding) : nlohmann::json(nullptr);
  j["centroid"] = c.centroid_scope == pipeline::CentroidScope::kAllRows ? "all" : "minority";
  return j;
}

inline void write_manifest(OutputTransaction& tx, RunManifest& m, const std::string& main_output) {
  const std::string path = manifest_path_for(main_output);
  m.finished_at = utc_timestamp();
  csv::write_file(tx.add(path), m.to_json().dump(2) + "\n");
}

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

inline int cmd_preprocess(const std::string& input, const std::string& config_path, const std::string& output,
                          Streams io) {
  RunManifest m;
  m.command = "preprocess";
  m.started_at = utc_timestamp();
  m.config_text = csv::read_file(config_path);
  const data::DataConfig config = data::load_config(config_path);
  const Dataset ds = data::load_csv(input, config);

  OutputTransaction tx;
  data::write_processed(ds, tx.add(output));
  m.inputs = {input, config_path};
  m.outputs = {output};
  m.parameters["rows"] = ds.rows();
  m.parameters["features"] = ds.feature_names.size();
  write_manifest(tx, m, output);
  tx.commit();
  io.out << "preprocessed " << ds.rows() << " rows, " << ds.feature_names.size() << " features -> " << output
         << "\n";
  return kOk;
}

struct SmoteCommand {
  std::string input;
  std::string output;
  std::string config_path;
  std::optional<std::string> histogram;
  std::size_t histogram_bins = 30;
  SmoteFlags flags;
};

inline int cmd_smote(const SmoteCommand& cmd, std::size_t threads, Streams io) {
  RunManifest m;
  m.command = "smote";
  m.started_at = utc_timestamp();
  m.config_text = csv::read_file(cmd.config_path);
  const data::DataConfig config = data::load_config(cmd.config_path);
  const pipeline::SmoteConfig sc = cmd.flags.resolve(config.smote, threads);
  const Dataset ds = data::load_csv(cmd.input, config);

  const pipeline::SmoteResult result = pipeline::augment(ds, sc);
  AugmentedTable table = pipeline::build_augmented_table(ds, result);
  data::round_synthetic_columns(table, config);

  // Angular distribution of minority originals + synthetic (+ boosted)
  // records, with fences computed before boosting.
  const auto records = pipeline::minority_records(ds, result);
  std::vector<double> distances = pipeline::angular_distances_of(records);
  const aol::OutlierBounds bounds =
      result.outliers ? result.outliers->bounds : aol::detect_outliers(distances, sc.num_bins).bounds;
  for (const auto& b : result.boosted) distances.push_back(b.angular_distance);

  const std::string svg = cmd.histogram.value_or(output_stem(cmd.output) + ".angles.svg");
  const std::string svg_csv = data::sibling_csv_path(svg);

  OutputTransaction tx;
  data::write_augmented(table, tx.add(cmd.output));
  data::emit_histogram(distances, cmd.histogram_bins, bounds, tx.add(svg), tx.add(svg_csv));

  const auto& rep = result.report;
  m.seed = sc.seed;
  m.parameters = describe(sc);
  m.parameters["histogram_bins"] = cmd.histogram_bins;
  m.inputs = {cmd.input, cmd.config_path};
  m.outputs = {cmd.output, svg, svg_csv};
  m.achieved_minority_percent = rep.achieved_percent_with_boost;
  m.parameters["report"] = {
      {"original_total", rep.original_total},       {"minority_count", rep.minority_count},
      {"minority_label", rep.minority_label},       {"synthetic_generated", rep.synthetic_generated},
      {"boosted_generated", rep.boosted_generated}, {"loop_iterations", rep.loop_iterations},
      {"remainder_records", rep.remainder_records}, {"achieved_percent", rep.achieved_percent},
  };
  if (result.outliers) {
    m.parameters["outliers"] = {{"q1", bounds.q1},
                                {"q3", bounds.q3},
                                {"lower_bound", bounds.lower_bound},
                                {"upper_bound", bounds.upper_bound},
                                {"low", result.outliers->low.total()},
                                {"high", result.outliers->high.total()}};
  }
  write_manifest(tx, m, cmd.output);
  tx.commit();

  io.out << "minority " << rep.minority_count << "/" << rep.original_total << " -> generated "
         << rep.synthetic_generated << " synthetic";
  if (sc.aol) io.out << " + " << rep.boosted_generated << " boosted";
  io.out << ", achieved " << csv::format_number(std::round(rep.achieved_percent_with_boost * 1000) / 1000)
         << "% -> " << cmd.output << "\n";
  return kOk;
}

struct EvaluateCommand {
  std::optional<std::string> input;
  std::optional<std::string> augmented;
  std::optional<std::string> test;
  std::string config_path;
  std::string output;
  std::string grid = "default";
  std::string aol_mode = "both";
  std::optional<std::size_t> k;
  std::optional<double> split;
  bool assert_trend = false;
  SmoteFlags flags;
};

inline std::vector<double> parse_grid(const std::string& grid) {
  if (grid == "default") return default_grid();
  if (grid == "none" || grid == "baseline") return {};
  std::vector<double> out;
  std::stringstream ss(grid);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = csv::parse_number(item);
    if (!v || !(*v > 0.0 && *v < 100.0)) throw ConfigError("bad grid entry '" + item + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

inline std::vector<bool> parse_aol_modes(const std::string& mode) {
  if (mode == "off") return {false};
  if (mode == "on") return {true};
  if (mode == "both") return {false, true};
  throw ConfigError("--aol-mode must be off, on or both");
}

inline int cmd_evaluate(const EvaluateCommand& cmd, std::size_t threads, Streams io) {
  using detail::json_or;
  RunManifest m;
  m.command = "evaluate";
  m.started_at = utc_timestamp();
  m.config_text = csv::read_file(cmd.config_path);
  const data::DataConfig config = data::load_config(cmd.config_path);

  eval::ExperimentConfig ec;
  ec.k = cmd.k.value_or(json_or<std::size_t>(config.evaluate, "k", eval::kDefaultK));
  ec.test_fraction = cmd.split.value_or(json_or(config.evaluate, "split", 0.2));
  ec.threads = threads;
  if (ec.k == 0) throw ParameterError("--k must be >= 1");

  std::vector<eval::ExperimentRow> rows;
  if (cmd.augmented) {
    if (!cmd.test) throw ConfigError("--augmented requires --test");
    if (cmd.assert_trend) throw ConfigError("--assert-trend needs a grid run, not --augmented");
    const AugmentedTable table = data::read_augmented(*cmd.augmented, config.id_column());
    const Dataset train = table.to_dataset();
    const Dataset test = data::load_csv(*cmd.test, config);
    ec.seed = cmd.flags.seed.value_or(json_or<std::uint64_t>(config.smote, "seed", 0));
    const int positive = test.minority_label();
    eval::ExperimentRow row = eval::evaluate_split(train, test, ec, positive);
    for (const auto& r : table.rows) {
      row.synthetic += r.synthetic ? 1 : 0;
      row.boosted += r.boosted ? 1 : 0;
    }
    row.aol = row.boosted > 0;
    rows.push_back(row);
    m.inputs = {*cmd.augmented, *cmd.test, cmd.config_path};
  } else {
    if (!cmd.input) throw ConfigError("evaluate needs --input (grid mode) or --augmented with --test");
    ec.smote = cmd.flags.resolve(config.smote, threads);
    ec.seed = ec.smote.seed;
    ec.targets = parse_grid(cmd.grid);
    ec.aol_modes = parse_aol_modes(cmd.aol_mode);
    const Dataset ds = data::load_csv(*cmd.input, config);
    rows = eval::run_experiment(ds, ec);
    m.inputs = {*cmd.input, cmd.config_path};
    m.parameters["smote"] = describe(ec.smote);
    m.parameters["grid"] = ec.targets;
    m.parameters["aol_mode"] = cmd.aol_mode;
  }
  m.seed = ec.seed;
  m.parameters["k"] = ec.k;
  m.parameters["split"] = ec.test_fraction;

  OutputTransaction tx;
  csv::write_file(tx.add(cmd.output), eval::results_csv(rows));
  m.outputs = {cmd.output};
  write_manifest(tx, m, cmd.output);

  int code = kOk;
  if (cmd.assert_trend) {
    const eval::TrendSummary t = eval::summarize_trend(rows);
    if (t.steps == 0 || !(t.f1_gain > 0.0)) {
      io.err << "trend assertion failed: F1 " << eval::format_optional(t.baseline_f1) << " (baseline) -> "
             << eval::format_optional(t.top_f1) << " (largest target)\n";
      code = kRuntimeFailure;
    }
  }
  tx.commit();
  io.out << "evaluated " << rows.size() << " configuration(s) -> " << cmd.output << "\n";
  return code;
}

struct GenerateCommand {
  std::string output;
  std::optional<std::string> config_out;
  data::SyntheticDatasetSpec spec;
};

inline int cmd_generate(const GenerateCommand& cmd, Streams io) {
  if (cmd.spec.rows < 2) throw ParameterError("--rows must be >= 2");
  if (!(cmd.spec.minority_fraction > 0.0 && cmd.spec.minority_fraction < 0.5)) {
    throw ParameterError("--minority must be in (0, 0.5)");
  }
  RunManifest m;
  m.command = "generate";
  m.started_at = utc_timestamp();
  m.seed = cmd.spec.seed;
  m.parameters["rows"] = cmd.spec.rows;
  m.parameters["minority_fraction"] = cmd.spec.minority_fraction;
  m.parameters["at_risk_share"] = cmd.spec.at_risk_share;
  m.achieved_minority_percent = pipeline::minority_percent(
      cmd.spec.rows, static_cast<std::size_t>(std::round(static_cast<double>(cmd.spec.rows) * cmd.spec.minority_fraction)));

  OutputTransaction tx;
  csv::write_file(tx.add(cmd.output), data::make_churn_like_csv(cmd.spec));
  m.outputs = {cmd.output};
  if (cmd.config_out) {
    csv::write_file(tx.add(*cmd.config_out), data::churn_like_config_json());
    m.outputs.push_back(*cmd.config_out);
  }
  write_manifest(tx, m, cmd.output);
  tx.commit();
  io.out << "wrote " << cmd.spec.rows << " rows -> " << cmd.output << "\n";
  return kOk;
}

/// Parses `args` (args[0] is the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Quantum-inspired minority oversampling with angular outlier boosting", "qsmote"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  std::optional<std::size_t> threads_flag;
  app.add_option("--threads", threads_flag, "Worker threads (default: $QSMOTE_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  std::string pre_in, pre_cfg, pre_out;
  auto* pre = app.add_subcommand("preprocess", "Clean, label-encode and bin a raw CSV");
  pre->add_option("input", pre_in, "Raw CSV")->required();
  pre->add_option("config", pre_cfg, "Dataset configuration (JSON)")->required();
  pre->add_option("output", pre_out, "Processed CSV")->required();

  SmoteCommand smote;
  auto* sm = app.add_subcommand("smote", "Generate synthetic minority records");
  sm->add_option("input", smote.input, "Raw or processed CSV")->required();
  sm->add_option("output", smote.output, "Augmented CSV")->required();
  sm->add_option("--config", smote.config_path, "Dataset configuration (JSON)")->required();
  sm->add_option("--histogram", smote.histogram, "Angular-distribution SVG (default <output>.angles.svg)");
  sm->add_option("--histogram-bins", smote.histogram_bins, "Bins in the angular-distribution plot")
      ->check(CLI::PositiveNumber);
  smote.flags.attach(*sm, true);

  EvaluateCommand ev;
  auto* evc = app.add_subcommand("evaluate", "Train KNN with and without oversampling and report metrics");
  evc->add_option("--input", ev.input, "Raw or processed CSV for a grid run");
  evc->add_option("--augmented", ev.augmented, "Augmented CSV to train on (single evaluation)");
  evc->add_option("--test", ev.test, "Held-out CSV for --augmented");
  evc->add_option("--config", ev.config_path, "Dataset configuration (JSON)")->required();
  evc->add_option("--output,-o", ev.output, "Result table CSV")->required();
  evc->add_option("--grid", ev.grid, "Target percents: default | none | comma list (default: the 30..50 grid)");
  evc->add_option("--aol-mode", ev.aol_mode, "Outlier boosting: off | on | both (default both)");
  evc->add_option("--k", ev.k, "Neighbours for KNN (default 5)");
  evc->add_option("--split", ev.split, "Test fraction of the stratified split (default 0.2)");
  evc->add_flag("--assert-trend", ev.assert_trend, "Exit 1 unless F1 at the largest target beats the baseline");
  ev.flags.attach(*evc, false);

  GenerateCommand gen;
  auto* gn = app.add_subcommand("generate", "Write the seeded churn-style example dataset");
  gn->add_option("output", gen.output, "Raw CSV")->required();
  gn->add_option("--config-out", gen.config_out, "Also write the matching configuration");
  gn->add_option("--rows", gen.spec.rows, "Row count (default 2000)");
  gn->add_option("--minority", gen.spec.minority_fraction, "Minority fraction (default 0.1)");
  gn->add_option("--seed", gen.spec.seed, "Generator seed (default 7)");

  std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv.begin(), argv.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  const std::size_t threads = threads_flag.value_or(default_thread_count());
  const Streams io{out, err};
  try {
    if (*pre) return cmd_preprocess(pre_in, pre_cfg, pre_out, io);
    if (*sm) return cmd_smote(smote, threads, io);
    if (*evc) return cmd_evaluate(ev, threads, io);
    if (*gn) return cmd_generate(gen, io);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const MissingColumnError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UnknownColumnError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kUsageError;
}

inline int run(int argc, char** argv) {
  return run(std::vector<std::string>(argv, argv + argc));
}

}  // namespace qsmote::cli
