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

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "salient_ba/error.hpp"

namespace sba {

/// Per-pixel saliency raster, row-major, values in [0, 255]. Values are kept
/// as doubles so fused maps stay exact before they are quantized to 8 bits
/// on save.
class SaliencyMap {
 public:
  SaliencyMap() = default;

  SaliencyMap(int width, int height, double fill = 0.0)
      : width_(width), height_(height) {
    check_dims(width, height);
    check_value(fill);
    values_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  SaliencyMap(int width, int height, std::vector<double> values)
      : width_(width), height_(height), values_(std::move(values)) {
    check_dims(width, height);
    if (values_.size() != static_cast<std::size_t>(width) * height) {
      throw DimensionMismatchError("saliency map: value count != w*h");
    }
    for (double v : values_) check_value(v);
  }

  int width() const { return width_; }
  int height() const { return height_; }

  double at(int x, int y) const { return values_[index(x, y)]; }

  void set(int x, int y, double v) {
    check_value(v);
    values_[index(x, y)] = v;
  }

  const std::vector<double>& values() const { return values_; }

 private:
  static void check_dims(int w, int h) {
    if (w <= 0 || h <= 0) {
      throw InvalidArgumentError("saliency map: dimensions must be positive");
    }
  }
  static void check_value(double v) {
    if (!(v >= 0.0 && v <= 255.0)) {
      throw InvalidArgumentError("saliency map: value outside [0, 255]");
    }
  }
  std::size_t index(int x, int y) const {
    if (x < 0 || x >= width_ || y < 0 || y >= height_) {
      throw OutOfBoundsError("saliency map: pixel index out of bounds");
    }
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

/// Depth raster stored as 16-bit units with a millimeter scale factor,
/// matching the on-disk format exactly so save/load round-trips are
/// bit-exact. A raw value of 0 marks an invalid (missing) depth.
class DepthMap {
 public:
  DepthMap() = default;

  DepthMap(int width, int height, double mm_per_unit = 1.0)
      : width_(width), height_(height), mm_per_unit_(mm_per_unit) {
    check_dims(width, height);
    check_scale(mm_per_unit);
    raw_.assign(static_cast<std::size_t>(width) * height, 0);
  }

  DepthMap(int width, int height, std::vector<std::uint16_t> raw,
           double mm_per_unit = 1.0)
      : width_(width),
        height_(height),
        mm_per_unit_(mm_per_unit),
        raw_(std::move(raw)) {
    check_dims(width, height);
    check_scale(mm_per_unit);
    if (raw_.size() != static_cast<std::size_t>(width) * height) {
      throw DimensionMismatchError("depth map: value count != w*h");
    }
  }

  /// Quantizes metric depths to the nearest representable unit. Depths must
  /// be non-negative; values beyond the 16-bit range saturate.
  static DepthMap from_meters(int width, int height,
                              const std::vector<double>& meters,
                              double mm_per_unit = 1.0) {
    check_dims(width, height);
    check_scale(mm_per_unit);
    if (meters.size() != static_cast<std::size_t>(width) * height) {
      throw DimensionMismatchError("depth map: value count != w*h");
    }
    std::vector<std::uint16_t> raw(meters.size());
    for (std::size_t i = 0; i < meters.size(); ++i) {
      if (!(meters[i] >= 0.0)) {
        throw InvalidArgumentError("depth map: depths must be >= 0");
      }
      const double units = meters[i] * 1000.0 / mm_per_unit;
      raw[i] = static_cast<std::uint16_t>(
          std::min(65535.0, std::max(0.0, std::round(units))));
    }
    return DepthMap(width, height, std::move(raw), mm_per_unit);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  double mm_per_unit() const { return mm_per_unit_; }

  std::uint16_t raw_at(int x, int y) const { return raw_[index(x, y)]; }

  /// Depth in meters; 0 means invalid.
  double depth_m(int x, int y) const {
    return raw_[index(x, y)] * mm_per_unit_ * 1e-3;
  }

  const std::vector<std::uint16_t>& raw() const { return raw_; }

 private:
  static void check_dims(int w, int h) {
    if (w <= 0 || h <= 0) {
      throw InvalidArgumentError("depth map: dimensions must be positive");
    }
  }
  static void check_scale(double s) {
    if (!(s > 0.0)) {
      throw InvalidArgumentError("depth map: mm_per_unit must be positive");
    }
  }
  std::size_t index(int x, int y) const {
    if (x < 0 || x >= width_ || y < 0 || y >= height_) {
      throw OutOfBoundsError("depth map: pixel index out of bounds");
    }
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  double mm_per_unit_ = 1.0;
  std::vector<std::uint16_t> raw_;
};

/// Bilinear sub-pixel lookup. Keypoints are sub-pixel, so a continuous
/// interpolant keeps the derived weights continuous in keypoint position.
/// Valid domain is 0 <= u <= width-1, 0 <= v <= height-1.
inline double sample_saliency(const SaliencyMap& map, double u, double v) {
  const double max_u = static_cast<double>(map.width() - 1);
  const double max_v = static_cast<double>(map.height() - 1);
  if (!(u >= 0.0 && u <= max_u && v >= 0.0 && v <= max_v)) {
    throw OutOfBoundsError("sample_saliency: coordinate outside raster");
  }
  // Clamp the cell so u == max_u interpolates inside the last column
  // (du becomes exactly 1); likewise for v.
  const int x0 = std::min(static_cast<int>(std::floor(u)),
                          std::max(map.width() - 2, 0));
  const int y0 = std::min(static_cast<int>(std::floor(v)),
                          std::max(map.height() - 2, 0));
  const int x1 = std::min(x0 + 1, map.width() - 1);
  const int y1 = std::min(y0 + 1, map.height() - 1);
  const double du = u - x0;
  const double dv = v - y0;
  const double v00 = map.at(x0, y0);
  const double v10 = map.at(x1, y0);
  const double v01 = map.at(x0, y1);
  const double v11 = map.at(x1, y1);
  return (1.0 - du) * (1.0 - dv) * v00 + du * (1.0 - dv) * v10 +
         (1.0 - du) * dv * v01 + du * dv * v11;
}

}  // namespace sba
