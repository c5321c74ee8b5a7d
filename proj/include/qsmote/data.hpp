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

// Dataset ingestion and serialization.
//
// A JSON configuration (schema version 1) names every input column and how
// it is encoded:
//
//   {
//     "version": 1,
//     "columns": [
//       {"name": "CustomerID", "kind": "id"},
//       {"name": "Occupation", "kind": "categorical", "missing": "fill-mode"},
//       {"name": "MonthlyRevenue", "kind": "numeric-binned", "bins": "equal-width:5"},
//       {"name": "AgeHH1", "kind": "numeric-binned", "bins": [0, 30, 50, 70, 120]},
//       {"name": "Handsets", "kind": "numeric-raw", "missing": {"fill": 1}},
//       {"name": "MonthlyMinutes", "kind": "drop"},
//       {"name": "Churn", "kind": "target"}
//     ],
//     "smote": {...},      // optional defaults for the smote command
//     "evaluate": {...}    // optional defaults for the evaluate command
//   }
//
// Binned columns are written as "<name>_Bin". Loading a processed file with
// the same configuration is the identity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsmote/csv.hpp"
#include "qsmote/dataset.hpp"
#include "qsmote/errors.hpp"

namespace qsmote::data {

enum class ColumnKind { kId, kCategorical, kNumericBinned, kNumericRaw, kTarget, kDrop };

enum class BinScheme { kExplicit, kEqualWidth, kQuantile };

struct MissingPolicy {
  enum class Kind { kError, kDropRow, kFillValue, kFillMode };
  Kind kind = Kind::kError;
  std::string fill;  // text of the fill value for kFillValue
};

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumericRaw;
  BinScheme bin_scheme = BinScheme::kEqualWidth;
  std::vector<double> bin_edges;  // kExplicit
  std::size_t bin_count = 0;      // kEqualWidth / kQuantile
  MissingPolicy missing;
  /// Round synthetic values of this column to the nearest encoded level.
  bool round_synthetic = false;

  /// Name of this column in processed output.
  std::string output_name() const {
    return kind == ColumnKind::kNumericBinned ? name + "_Bin" : name;
  }
};

struct DataConfig {
  int version = 1;
  std::vector<ColumnSpec> columns;
  nlohmann::json smote = nlohmann::json::object();
  nlohmann::json evaluate = nlohmann::json::object();

  const ColumnSpec* find(const std::string& name) const {
    for (const auto& c : columns) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  const ColumnSpec& target() const {
    for (const auto& c : columns) {
      if (c.kind == ColumnKind::kTarget) return c;
    }
    throw ConfigError("configuration has no target column");
  }

  std::optional<std::string> id_column() const {
    for (const auto& c : columns) {
      if (c.kind == ColumnKind::kId) return c.name;
    }
    return std::nullopt;
  }
};

namespace detail {

inline ColumnKind parse_kind(const std::string& s) {
  static const std::map<std::string, ColumnKind> kinds = {
      {"id", ColumnKind::kId},
      {"categorical", ColumnKind::kCategorical},
      {"numeric-binned", ColumnKind::kNumericBinned},
      {"numeric-raw", ColumnKind::kNumericRaw},
      {"target", ColumnKind::kTarget},
      {"drop", ColumnKind::kDrop},
  };
  auto it = kinds.find(s);
  if (it == kinds.end()) throw ConfigError("unknown column kind '" + s + "'");
  return it->second;
}

inline std::size_t parse_scheme_count(const std::string& spec, const std::string& prefix) {
  const std::string rest = spec.substr(prefix.size());
  std::size_t pos = 0;
  unsigned long k = 0;
  try {
    k = std::stoul(rest, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != rest.size() || rest.empty() || k == 0) {
    throw ConfigError("bad bin specification '" + spec + "'");
  }
  return k;
}

inline std::string json_scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return csv::format_number(v.get<double>());
  throw ConfigError("fill value must be a string or number");
}

inline ColumnSpec parse_column(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("column entries must be objects");
  ColumnSpec c;
  if (!j.contains("name") || !j["name"].is_string()) throw ConfigError("column entry needs a name");
  c.name = j["name"].get<std::string>();
  if (c.name.empty()) throw ConfigError("column name must not be empty");
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("column '" + c.name + "' needs a kind");
  }
  c.kind = parse_kind(j["kind"].get<std::string>());

  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "kind" && key != "bins" && key != "missing" &&
        key != "round_synthetic") {
      throw ConfigError("column '" + c.name + "': unknown key '" + key + "'");
    }
  }

  if (c.kind == ColumnKind::kNumericBinned) {
    if (!j.contains("bins")) throw ConfigError("column '" + c.name + "' needs bins");
    const auto& b = j["bins"];
    if (b.is_array()) {
      c.bin_scheme = BinScheme::kExplicit;
      for (const auto& e : b) {
        if (!e.is_number()) throw ConfigError("column '" + c.name + "': bin edges must be numbers");
        c.bin_edges.push_back(e.get<double>());
      }
      if (c.bin_edges.size() < 2) throw ConfigError("column '" + c.name + "': need >= 2 bin edges");
      for (std::size_t i = 1; i < c.bin_edges.size(); ++i) {
        if (!(c.bin_edges[i] > c.bin_edges[i - 1])) {
          throw ConfigError("column '" + c.name + "': bin edges must be strictly increasing");
        }
      }
    } else if (b.is_string()) {
      const std::string s = b.get<std::string>();
      if (s.rfind("equal-width:", 0) == 0) {
        c.bin_scheme = BinScheme::kEqualWidth;
        c.bin_count = parse_scheme_count(s, "equal-width:");
      } else if (s.rfind("quantile:", 0) == 0) {
        c.bin_scheme = BinScheme::kQuantile;
        c.bin_count = parse_scheme_count(s, "quantile:");
      } else {
        throw ConfigError("column '" + c.name + "': bad bin specification '" + s + "'");
      }
    } else {
      throw ConfigError("column '" + c.name + "': bins must be an edge list or scheme string");
    }
  } else if (j.contains("bins")) {
    throw ConfigError("column '" + c.name + "': bins only apply to numeric-binned columns");
  }

  if (j.contains("missing")) {
    const auto& m = j["missing"];
    if (m.is_string()) {
      const std::string s = m.get<std::string>();
      if (s == "drop-row") {
        c.missing.kind = MissingPolicy::Kind::kDropRow;
      } else if (s == "fill-mode") {
        c.missing.kind = MissingPolicy::Kind::kFillMode;
      } else if (s == "error") {
        c.missing.kind = MissingPolicy::Kind::kError;
      } else {
        throw ConfigError("column '" + c.name + "': unknown missing policy '" + s + "'");
      }
    } else if (m.is_object() && m.contains("fill") && m.size() == 1) {
      c.missing.kind = MissingPolicy::Kind::kFillValue;
      c.missing.fill = json_scalar_text(m["fill"]);
    } else {
      throw ConfigError("column '" + c.name + "': missing policy must be a string or {\"fill\": v}");
    }
  }
  if (j.contains("round_synthetic")) {
    if (!j["round_synthetic"].is_boolean()) {
      throw ConfigError("column '" + c.name + "': round_synthetic must be a boolean");
    }
    c.round_synthetic = j["round_synthetic"].get<bool>();
  }
  return c;
}

}  // namespace detail

inline DataConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1) {
    throw ConfigError("configuration must declare \"version\": 1");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "version" && key != "columns" && key != "smote" && key != "evaluate" &&
        key != "description") {
      throw ConfigError("unknown configuration key '" + key + "'");
    }
  }
  DataConfig cfg;
  if (!j.contains("columns") || !j["columns"].is_array()) {
    throw ConfigError("configuration needs a \"columns\" array");
  }
  std::set<std::string> seen;
  std::size_t targets = 0;
  std::size_t ids = 0;
  for (const auto& col : j["columns"]) {
    ColumnSpec c = detail::parse_column(col);
    if (!seen.insert(c.name).second) throw ConfigError("duplicate column '" + c.name + "'");
    targets += c.kind == ColumnKind::kTarget ? 1 : 0;
    ids += c.kind == ColumnKind::kId ? 1 : 0;
    cfg.columns.push_back(std::move(c));
  }
  if (targets != 1) throw ConfigError("configuration must have exactly one target column");
  if (ids > 1) throw ConfigError("configuration may have at most one id column");
  if (j.contains("smote")) cfg.smote = j["smote"];
  if (j.contains("evaluate")) cfg.evaluate = j["evaluate"];
  return cfg;
}

inline DataConfig load_config(const std::string& path) {
  const std::string text = csv::read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  try {
    return parse_config(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

inline bool is_missing(std::string_view cell) {
  cell = csv::trim(cell);
  return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan";
}

namespace detail {

/// Levels sorted numerically when every level is a number, otherwise
/// lexicographically.
inline std::vector<std::string> sorted_levels(const std::vector<std::string>& values) {
  std::set<std::string> uniq(values.begin(), values.end());
  std::vector<std::string> levels(uniq.begin(), uniq.end());
  const bool numeric = std::all_of(levels.begin(), levels.end(),
                                   [](const std::string& s) { return csv::parse_number(s).has_value(); });
  if (numeric) {
    std::stable_sort(levels.begin(), levels.end(), [](const std::string& a, const std::string& b) {
      return *csv::parse_number(a) < *csv::parse_number(b);
    });
  }
  return levels;
}

inline double quantile_linear(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace detail

/// Bin edges for a numeric-binned column given its (non-missing) values.
inline std::vector<double> resolve_bin_edges(const ColumnSpec& spec, const std::vector<double>& values) {
  if (spec.bin_scheme == BinScheme::kExplicit) return spec.bin_edges;
  if (values.empty()) throw DataError("cannot derive bins from an empty column", 0, spec.name);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  std::vector<double> edges;
  if (spec.bin_scheme == BinScheme::kEqualWidth) {
    const double width = (*hi - *lo) / static_cast<double>(spec.bin_count);
    for (std::size_t i = 0; i < spec.bin_count; ++i) edges.push_back(*lo + static_cast<double>(i) * width);
    edges.push_back(*hi);
  } else {
    for (std::size_t i = 0; i <= spec.bin_count; ++i) {
      edges.push_back(detail::quantile_linear(values, static_cast<double>(i) /
                                                          static_cast<double>(spec.bin_count)));
    }
  }
  // Collapse repeated edges (constant columns, tied quantiles).
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() == 1) edges.push_back(edges.front());
  return edges;
}

/// Index i with edges[i] <= v < edges[i+1]; values below the range map to 0
/// and values at or above the last edge map to the last bin.
inline std::size_t assign_bin(double v, const std::vector<double>& edges) {
  const std::size_t bins = edges.size() - 1;
  if (v < edges.front()) return 0;
  for (std::size_t i = 0; i < bins; ++i) {
    if (v < edges[i + 1]) return i;
  }
  return bins - 1;
}

/// Number of bins a numeric-binned column can produce, when known up front.
inline std::optional<std::size_t> declared_bin_count(const ColumnSpec& spec) {
  if (spec.bin_scheme == BinScheme::kExplicit) return spec.bin_edges.size() - 1;
  return spec.bin_count;
}

/// Parses and preprocesses CSV text: applies missing-value policies,
/// label-encodes categoricals, bins numeric-binned columns and splits off the
/// id and target columns. `source` names the input in error messages.
inline Dataset preprocess(const csv::Table& table, const DataConfig& config,
                          const std::string& source = "<input>") {
  struct Bound {
    const ColumnSpec* spec;
    std::size_t index;  // position in the CSV header
    bool already_binned;
  };
  std::vector<Bound> bound;
  std::set<std::string> header_seen;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    const std::string& h = table.header[i];
    if (!header_seen.insert(h).second) throw DataError(source + ": duplicate header", 1, h);
    const ColumnSpec* spec = config.find(h);
    bool binned = false;
    if (spec == nullptr && h.size() > 4 && h.ends_with("_Bin")) {
      const ColumnSpec* base = config.find(h.substr(0, h.size() - 4));
      if (base != nullptr && base->kind == ColumnKind::kNumericBinned) {
        spec = base;
        binned = true;
      }
    }
    if (spec == nullptr) throw UnknownColumnError(source + ": unknown column '" + h + "'", h);
    bound.push_back({spec, i, binned});
  }
  for (const auto& c : config.columns) {
    if (c.kind == ColumnKind::kDrop) continue;
    const bool present = std::any_of(bound.begin(), bound.end(), [&](const Bound& b) { return b.spec == &c; });
    if (!present) throw MissingColumnError(c.name);
  }
  // Process columns in configuration order.
  std::sort(bound.begin(), bound.end(), [&](const Bound& a, const Bound& b) {
    return a.spec - config.columns.data() < b.spec - config.columns.data();
  });

  // Pass 1: rows dropped by a drop-row policy.
  std::vector<bool> keep(table.rows.size(), true);
  for (const Bound& b : bound) {
    if (b.spec->kind == ColumnKind::kDrop || b.spec->missing.kind != MissingPolicy::Kind::kDropRow) continue;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (is_missing(table.rows[r][b.index])) keep[r] = false;
    }
  }
  std::vector<std::size_t> kept;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (keep[r]) kept.push_back(r);
  }

  auto line_of = [&](std::size_t r) { return table.line_numbers.empty() ? r + 2 : table.line_numbers[r]; };

  // Pass 2: resolve each column to cell text with missing values filled.
  auto column_text = [&](const Bound& b) {
    std::vector<std::string> cells;
    cells.reserve(kept.size());
    std::map<std::string, std::size_t> freq;
    for (std::size_t r : kept) {
      const std::string_view cell = csv::trim(table.rows[r][b.index]);
      if (!is_missing(cell)) ++freq[std::string(cell)];
    }
    std::optional<std::string> fill;
    if (b.spec->missing.kind == MissingPolicy::Kind::kFillValue) fill = b.spec->missing.fill;
    if (b.spec->missing.kind == MissingPolicy::Kind::kFillMode && !freq.empty()) {
      auto best = freq.begin();
      for (auto it = freq.begin(); it != freq.end(); ++it) {
        if (it->second > best->second) best = it;
      }
      fill = best->first;
    }
    for (std::size_t r : kept) {
      const std::string_view cell = csv::trim(table.rows[r][b.index]);
      if (!is_missing(cell)) {
        cells.emplace_back(cell);
      } else if (fill) {
        cells.push_back(*fill);
      } else {
        throw DataError(source + ": missing value with no missing policy", line_of(r),
                        table.header[b.index]);
      }
    }
    return cells;
  };

  auto numeric_column = [&](const Bound& b, const std::vector<std::string>& cells) {
    std::vector<double> values;
    values.reserve(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto v = csv::parse_number(cells[k]);
      if (!v) {
        throw DataError(source + ": unparsable numeric value '" + cells[k] + "'", line_of(kept[k]),
                        table.header[b.index]);
      }
      values.push_back(*v);
    }
    return values;
  };

  Dataset ds;
  ds.target_name = config.target().name;
  ds.id_column = config.id_column();
  std::vector<std::vector<double>> feature_columns;

  for (const Bound& b : bound) {
    const ColumnSpec& spec = *b.spec;
    if (spec.kind == ColumnKind::kDrop) continue;
    const std::vector<std::string> cells = column_text(b);
    switch (spec.kind) {
      case ColumnKind::kId:
        ds.row_ids = cells;
        break;
      case ColumnKind::kTarget: {
        const auto levels = detail::sorted_levels(cells);
        if (levels.size() > 2) {
          throw DataError(source + ": target must be binary, found " + std::to_string(levels.size()) +
                              " classes",
                          0, spec.name);
        }
        for (const auto& cell : cells) {
          ds.labels.push_back(static_cast<int>(std::find(levels.begin(), levels.end(), cell) - levels.begin()));
        }
        break;
      }
      case ColumnKind::kCategorical: {
        const auto levels = detail::sorted_levels(cells);
        std::map<std::string, double> code;
        for (std::size_t i = 0; i < levels.size(); ++i) code[levels[i]] = static_cast<double>(i);
        std::vector<double> col;
        col.reserve(cells.size());
        for (const auto& cell : cells) col.push_back(code[cell]);
        feature_columns.push_back(std::move(col));
        ds.feature_names.push_back(spec.output_name());
        break;
      }
      case ColumnKind::kNumericRaw:
        feature_columns.push_back(numeric_column(b, cells));
        ds.feature_names.push_back(spec.output_name());
        break;
      case ColumnKind::kNumericBinned: {
        std::vector<double> values = numeric_column(b, cells);
        if (b.already_binned) {
          const auto bins = declared_bin_count(spec);
          for (std::size_t k = 0; k < values.size(); ++k) {
            const double v = values[k];
            if (v < 0 || v != std::floor(v) || (bins && v >= static_cast<double>(*bins))) {
              throw DataError(source + ": invalid bin index '" + cells[k] + "'", line_of(kept[k]),
                              table.header[b.index]);
            }
          }
        } else {
          const auto edges = resolve_bin_edges(spec, values);
          for (double& v : values) v = static_cast<double>(assign_bin(v, edges));
        }
        feature_columns.push_back(std::move(values));
        ds.feature_names.push_back(spec.output_name());
        break;
      }
      case ColumnKind::kDrop:
        break;
    }
  }

  if (!ds.id_column) {
    ds.row_ids.clear();
    for (std::size_t k = 0; k < kept.size(); ++k) ds.row_ids.push_back(std::to_string(k));
  }
  ds.features = FeatureMatrix(kept.size(), feature_columns.size());
  for (std::size_t c = 0; c < feature_columns.size(); ++c) {
    for (std::size_t r = 0; r < kept.size(); ++r) ds.features(r, c) = feature_columns[c][r];
  }
  if (ds.labels.size() != kept.size()) ds.labels.assign(kept.size(), 0);
  return ds;
}

/// Reads and preprocesses a CSV file.
inline Dataset load_csv(const std::string& path, const DataConfig& config) {
  return preprocess(csv::read(path), config, path);
}

inline std::string processed_csv(const Dataset& ds) {
  std::ostringstream out;
  std::vector<std::string> header;
  if (ds.id_column) header.push_back(*ds.id_column);
  header.insert(header.end(), ds.feature_names.begin(), ds.feature_names.end());
  header.push_back(ds.target_name);
  csv::write_record(out, header);
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    std::vector<std::string> fields;
    if (ds.id_column) fields.push_back(ds.row_ids[r]);
    for (double v : ds.features.row(r)) fields.push_back(csv::format_number(v));
    fields.push_back(std::to_string(ds.labels[r]));
    csv::write_record(out, fields);
  }
  return out.str();
}

/// Writes the encoded dataset in the processed layout: id, features, target.
inline void write_processed(const Dataset& ds, const std::string& path) {
  csv::write_file(path, processed_csv(ds));
}

inline const std::vector<std::string>& metadata_columns() {
  static const std::vector<std::string> cols = {"angular_distance", "rotation_angle", "synthetic",
                                                "boosted", "source_row_id"};
  return cols;
}

inline std::string augmented_csv(const AugmentedTable& table) {
  std::ostringstream out;
  std::vector<std::string> header;
  if (table.id_column) header.push_back(*table.id_column);
  header.insert(header.end(), table.feature_names.begin(), table.feature_names.end());
  header.push_back(table.target_name);
  header.insert(header.end(), metadata_columns().begin(), metadata_columns().end());
  csv::write_record(out, header);
  auto opt = [](const std::optional<double>& v) { return v ? csv::format_number(*v) : std::string(); };
  for (const AugmentedRow& row : table.rows) {
    std::vector<std::string> fields;
    if (table.id_column) fields.push_back(row.id);
    for (double v : row.features) fields.push_back(csv::format_number(v));
    fields.push_back(std::to_string(row.label));
    fields.push_back(opt(row.angular_distance));
    fields.push_back(opt(row.rotation_angle));
    fields.push_back(row.synthetic ? "1" : "0");
    fields.push_back(row.boosted ? "1" : "0");
    fields.push_back(row.source_row_id);
    csv::write_record(out, fields);
  }
  return out.str();
}

/// Writes original rows followed by generated rows, with five metadata
/// columns appended to the processed header.
inline void write_augmented(const AugmentedTable& table, const std::string& path) {
  csv::write_file(path, augmented_csv(table));
}

/// Parses an augmented CSV. `id_column` names the leading id column when the
/// file has one.
inline AugmentedTable parse_augmented(const csv::Table& t, const std::optional<std::string>& id_column,
                                      const std::string& source = "<input>") {
  const auto& meta = metadata_columns();
  const std::size_t lead = id_column ? 1 : 0;
  if (t.header.size() < lead + 1 + meta.size()) throw DataError(source + ": too few columns for an augmented table");
  const std::size_t meta_start = t.header.size() - meta.size();
  for (std::size_t i = 0; i < meta.size(); ++i) {
    if (t.header[meta_start + i] != meta[i]) {
      throw DataError(source + ": expected metadata column '" + meta[i] + "'", 1, t.header[meta_start + i]);
    }
  }
  if (id_column && t.header[0] != *id_column) throw MissingColumnError(*id_column);

  AugmentedTable table;
  table.id_column = id_column;
  table.target_name = t.header[meta_start - 1];
  table.feature_names.assign(t.header.begin() + static_cast<std::ptrdiff_t>(lead),
                             t.header.begin() + static_cast<std::ptrdiff_t>(meta_start - 1));

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& f = t.rows[r];
    const std::size_t line = t.line_numbers.empty() ? r + 2 : t.line_numbers[r];
    auto number = [&](std::size_t c) {
      const auto v = csv::parse_number(f[c]);
      if (!v) throw DataError(source + ": unparsable number '" + f[c] + "'", line, t.header[c]);
      return *v;
    };
    auto optional_number = [&](std::size_t c) -> std::optional<double> {
      if (csv::trim(f[c]).empty()) return std::nullopt;
      return number(c);
    };
    auto flag = [&](std::size_t c) {
      if (f[c] == "1") return true;
      if (f[c] == "0") return false;
      throw DataError(source + ": flag must be 0 or 1", line, t.header[c]);
    };
    AugmentedRow row;
    row.id = id_column ? f[0] : std::to_string(r);
    for (std::size_t c = lead; c < meta_start - 1; ++c) row.features.push_back(number(c));
    const double label = number(meta_start - 1);
    if (label != 0.0 && label != 1.0) throw DataError(source + ": label must be 0 or 1", line, table.target_name);
    row.label = static_cast<int>(label);
    row.angular_distance = optional_number(meta_start);
    row.rotation_angle = optional_number(meta_start + 1);
    row.synthetic = flag(meta_start + 2);
    row.boosted = flag(meta_start + 3);
    row.source_row_id = f[meta_start + 4];
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline AugmentedTable read_augmented(const std::string& path, const std::optional<std::string>& id_column) {
  return parse_augmented(csv::read(path), id_column, path);
}

/// Rounds synthetic values of columns flagged round_synthetic to the nearest
/// integer level within the range observed in the original rows.
inline void round_synthetic_columns(AugmentedTable& table, const DataConfig& config) {
  for (std::size_t c = 0; c < table.feature_names.size(); ++c) {
    const ColumnSpec* spec = nullptr;
    for (const auto& s : config.columns) {
      if (s.output_name() == table.feature_names[c]) spec = &s;
    }
    if (spec == nullptr || !spec->round_synthetic) continue;
    double lo = 0.0;
    double hi = 0.0;
    bool any = false;
    for (const auto& row : table.rows) {
      if (row.synthetic) continue;
      lo = any ? std::min(lo, row.features[c]) : row.features[c];
      hi = any ? std::max(hi, row.features[c]) : row.features[c];
      any = true;
    }
    for (auto& row : table.rows) {
      if (!row.synthetic) continue;
      double v = std::round(row.features[c]);
      if (any) v = std::clamp(v, lo, hi);
      row.features[c] = v;
    }
  }
}

}  // namespace qsmote::data
