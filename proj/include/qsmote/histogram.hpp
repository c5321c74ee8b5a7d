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

// Angular-distribution histogram as a standalone SVG plus a CSV of the bins.

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qsmote/aol.hpp"
#include "qsmote/csv.hpp"

namespace qsmote::data {

struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
};

inline Histogram make_histogram(std::span<const double> values, std::size_t bins) {
  Histogram h;
  h.edges = aol::histogram_edges(values, bins);
  h.counts.assign(bins, 0);
  for (double v : values) ++h.counts[aol::bin_index(v, h.edges)];
  return h;
}

struct SvgLayout {
  double width = 640.0;
  double height = 400.0;
  double margin_left = 56.0;
  double margin_right = 24.0;
  double margin_top = 32.0;
  double margin_bottom = 48.0;

  double plot_left() const { return margin_left; }
  double plot_right() const { return width - margin_right; }
  double plot_top() const { return margin_top; }
  double plot_bottom() const { return height - margin_bottom; }
};

namespace detail {
inline std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}
inline std::string fmt4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}
}  // namespace detail

inline std::string histogram_svg(const Histogram& h, const aol::OutlierBounds& bounds,
                                 const SvgLayout& layout = {}) {
  using detail::fmt2;
  const double x0 = h.edges.front();
  const double x1 = h.edges.back();
  const double left = layout.plot_left();
  const double right = layout.plot_right();
  const double top = layout.plot_top();
  const double bottom = layout.plot_bottom();
  const std::size_t peak = std::max<std::size_t>(1, *std::max_element(h.counts.begin(), h.counts.end()));
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
  auto sy = [&](double c) { return bottom - c / static_cast<double>(peak) * (bottom - top); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt2(layout.width)
      << "\" height=\"" << fmt2(layout.height) << "\" viewBox=\"0 0 " << fmt2(layout.width) << ' '
      << fmt2(layout.height) << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << fmt2(layout.width) << "\" height=\"" << fmt2(layout.height)
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << fmt2(layout.width / 2) << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">Angular distribution</text>\n";

  svg << "<g class=\"bins\" fill=\"steelblue\" stroke=\"white\" stroke-width=\"0.5\">\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double xa = sx(h.edges[i]);
    const double xb = sx(h.edges[i + 1]);
    const double y = sy(static_cast<double>(h.counts[i]));
    svg << "<rect x=\"" << fmt2(xa) << "\" y=\"" << fmt2(y) << "\" width=\"" << fmt2(xb - xa)
        << "\" height=\"" << fmt2(bottom - y) << "\" data-count=\"" << h.counts[i] << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(bottom) << "\" x2=\"" << fmt2(right)
      << "\" y2=\"" << fmt2(bottom) << "\"/>\n"
      << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(top) << "\" x2=\"" << fmt2(left)
      << "\" y2=\"" << fmt2(bottom) << "\"/>\n"
      << "</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<text x=\"" << fmt2(left) << "\" y=\"" << fmt2(bottom + 16) << "\" text-anchor=\"middle\">"
      << detail::fmt4(x0) << "</text>\n"
      << "<text x=\"" << fmt2(right) << "\" y=\"" << fmt2(bottom + 16) << "\" text-anchor=\"middle\">"
      << detail::fmt4(x1) << "</text>\n"
      << "<text x=\"" << fmt2(left - 6) << "\" y=\"" << fmt2(top + 4) << "\" text-anchor=\"end\">" << peak
      << "</text>\n"
      << "<text x=\"" << fmt2((left + right) / 2) << "\" y=\"" << fmt2(layout.height - 10)
      << "\" text-anchor=\"middle\">angular distance (rad)</text>\n"
      << "</g>\n";

  auto threshold = [&](const char* cls, const char* colour, double value) {
    const double x = std::clamp(sx(value), left, right);
    svg << "<line class=\"" << cls << "\" x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(top) << "\" x2=\""
        << fmt2(x) << "\" y2=\"" << fmt2(bottom) << "\" stroke=\"" << colour
        << "\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>\n";
  };
  threshold("lower-bound", "red", bounds.lower_bound);
  threshold("upper-bound", "green", bounds.upper_bound);
  svg << "</svg>\n";
  return svg.str();
}

inline std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bin_start,bin_end,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << csv::format_number(h.edges[i]) << ',' << csv::format_number(h.edges[i + 1]) << ','
        << h.counts[i] << '\n';
  }
  return out.str();
}

/// Sibling CSV path for an SVG path: "x.svg" -> "x.csv".
inline std::string sibling_csv_path(const std::string& svg_path) {
  if (svg_path.size() > 4 && svg_path.ends_with(".svg")) return svg_path.substr(0, svg_path.size() - 4) + ".csv";
  return svg_path + ".csv";
}

/// Writes the histogram SVG with dashed lines at the outlier fences (clamped
/// to the plot area) and the bin table as CSV.
inline Histogram emit_histogram(std::span<const double> values, std::size_t bins,
                                const aol::OutlierBounds& bounds, const std::string& svg_path,
                                const std::string& csv_path) {
  const Histogram h = make_histogram(values, bins);
  csv::write_file(svg_path, histogram_svg(h, bounds));
  csv::write_file(csv_path, histogram_csv(h));
  return h;
}

inline Histogram emit_histogram(std::span<const double> values, std::size_t bins,
                                const aol::OutlierBounds& bounds, const std::string& svg_path) {
  return emit_histogram(values, bins, bounds, svg_path, sibling_csv_path(svg_path));
}

}  // namespace qsmote::data
