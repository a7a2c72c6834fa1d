/******************************************************************************
 * Copyright 2026 Salient BA Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "salient_ba/error.hpp"

namespace sba {

// Minimal deterministic SVG emission on a fixed 800x600 canvas with a 50 px
// margin. Trajectory overlays map data (x, y) into the canvas with a single
// uniform scale (aspect preserved, y axis flipped so +y points up on
// screen); heatmaps draw one rect per cell colored on a blue-to-red ramp.

constexpr int kSvgWidth = 800;
constexpr int kSvgHeight = 600;
constexpr int kSvgMargin = 50;

struct SvgPolyline {
  std::vector<Eigen::Vector2d> points;
  std::string color = "#000000";
  std::string label;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline void write_text_file(const std::filesystem::path& path,
                            const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open for writing: " + path.string());
  f << content;
  if (!f) throw IoError("short write: " + path.string());
}

}  // namespace detail

inline std::string render_trajectory_svg(
    const std::vector<SvgPolyline>& polylines) {
  double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
  bool first = true;
  for (const auto& pl : polylines) {
    for (const auto& p : pl.points) {
      if (first) {
        min_x = max_x = p.x();
        min_y = max_y = p.y();
        first = false;
      } else {
        min_x = std::min(min_x, p.x());
        max_x = std::max(max_x, p.x());
        min_y = std::min(min_y, p.y());
        max_y = std::max(max_y, p.y());
      }
    }
  }
  const double span_x = std::max(max_x - min_x, 1e-9);
  const double span_y = std::max(max_y - min_y, 1e-9);
  const double usable_w = kSvgWidth - 2.0 * kSvgMargin;
  const double usable_h = kSvgHeight - 2.0 * kSvgMargin;
  const double scale = std::min(usable_w / span_x, usable_h / span_y);
  const double cx = 0.5 * (min_x + max_x);
  const double cy = 0.5 * (min_y + max_y);

  const auto to_px = [&](const Eigen::Vector2d& p) {
    return Eigen::Vector2d(0.5 * kSvgWidth + scale * (p.x() - cx),
                           0.5 * kSvgHeight - scale * (p.y() - cy));
  };

  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
      "height=\"600\" viewBox=\"0 0 800 600\">\n"
      "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  int legend_y = kSvgMargin / 2;
  for (const auto& pl : polylines) {
    out += "<polyline fill=\"none\" stroke=\"" + pl.color +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pl.points.size(); ++i) {
      const Eigen::Vector2d px = to_px(pl.points[i]);
      if (i) out += ' ';
      out += detail::svg_num(px.x()) + "," + detail::svg_num(px.y());
    }
    out += "\"/>\n";
    if (!pl.label.empty()) {
      out += "<text x=\"" + std::to_string(kSvgWidth - 180) + "\" y=\"" +
             std::to_string(legend_y) + "\" fill=\"" + pl.color +
             "\" font-size=\"13\" font-family=\"monospace\">" + pl.label +
             "</text>\n";
      legend_y += 16;
    }
  }
  out += "</svg>\n";
  return out;
}

/// Per-run error grid, one row per label, one column per run; blue (low)
/// to red (high) over the observed value range.
inline std::string render_heatmap_svg(
    const std::vector<std::string>& row_labels,
    const std::vector<std::vector<double>>& values) {
  if (row_labels.size() != values.size()) {
    throw DimensionMismatchError("heatmap: labels/rows mismatch");
  }
  std::size_t cols = 0;
  double lo = 0.0, hi = 1.0;
  bool first = true;
  for (const auto& row : values) {
    cols = std::max(cols, row.size());
    for (double v : row) {
      if (first) {
        lo = hi = v;
        first = false;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  const double span = std::max(hi - lo, 1e-300);

  const auto color_of = [&](double v) {
    const double t = std::clamp((v - lo) / span, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(40 + 215 * t));
    const int g = static_cast<int>(std::lround(60 + 40 * (1.0 - t)));
    const int b = static_cast<int>(std::lround(255 - 215 * t));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return std::string(buf);
  };

  const double label_w = 170.0;
  const double cell_w =
      (kSvgWidth - kSvgMargin - label_w) / std::max<std::size_t>(cols, 1);
  const double cell_h = std::min(
      40.0, (kSvgHeight - 2.0 * kSvgMargin) /
                std::max<std::size_t>(row_labels.size(), 1));

  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
      "height=\"600\" viewBox=\"0 0 800 600\">\n"
      "<rect width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  for (std::size_t r = 0; r < values.size(); ++r) {
    const double y = kSvgMargin + r * cell_h;
    out += "<text x=\"10\" y=\"" + detail::svg_num(y + 0.65 * cell_h) +
           "\" font-size=\"12\" font-family=\"monospace\">" + row_labels[r] +
           "</text>\n";
    for (std::size_t c = 0; c < values[r].size(); ++c) {
      out += "<rect x=\"" + detail::svg_num(label_w + c * cell_w) + "\" y=\"" +
             detail::svg_num(y) + "\" width=\"" + detail::svg_num(cell_w) +
             "\" height=\"" + detail::svg_num(cell_h) + "\" fill=\"" +
             color_of(values[r][c]) + "\" stroke=\"#ffffff\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

inline void save_svg(const std::string& content,
                     const std::filesystem::path& path) {
  detail::write_text_file(path, content);
}

}  // namespace sba
