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
#include <limits>
#include <vector>

#include "salient_ba/error.hpp"
#include "salient_ba/saliency/raster.hpp"

namespace sba {

/// Parameters of the depth-corrected fusion S_hat = a * S / D + b.
struct FusionParams {
  double a_fuse = 1.0;
  double b_fuse = 0.0;
  /// Depths below this floor (including invalid zeros) are clamped to it,
  /// in meters, so the per-pixel division stays bounded.
  double depth_floor = 0.1;

  void validate() const {
    if (!(a_fuse > 0.0)) {
      throw InvalidArgumentError("fusion params: a_fuse must be positive");
    }
    if (!(depth_floor > 0.0)) {
      throw InvalidArgumentError("fusion params: depth_floor must be positive");
    }
  }
};

struct FusionResult {
  SaliencyMap map;
  /// Pre-normalization extremes of a*S/D + b, useful for manifests.
  double pre_min = 0.0;
  double pre_max = 0.0;
};

/// Depth-corrected saliency fusion: per pixel S_hat = a * S / max(D, floor)
/// + b, followed by a min-max rescale onto [0, 255]. Nearby structure is
/// boosted, distant structure attenuated; the rescale is monotone, so the
/// pre-normalization ordering of pixels is preserved. A constant S_hat field
/// (max == min) normalizes to uniform 255 so that a featureless saliency
/// input degrades to uniform weighting downstream rather than zero weights.
inline FusionResult fuse_saliency_full(const SaliencyMap& s_init,
                                       const DepthMap& depth,
                                       const FusionParams& params) {
  params.validate();
  if (s_init.width() != depth.width() || s_init.height() != depth.height()) {
    throw DimensionMismatchError(
        "fuse_saliency: saliency and depth dimensions differ");
  }

  const std::size_t n = s_init.values().size();
  std::vector<double> fused(n);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int y = 0; y < s_init.height(); ++y) {
    for (int x = 0; x < s_init.width(); ++x) {
      const double d = std::max(depth.depth_m(x, y), params.depth_floor);
      const double v = params.a_fuse * s_init.at(x, y) / d + params.b_fuse;
      fused[static_cast<std::size_t>(y) * s_init.width() + x] = v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }

  if (hi - lo <= 0.0) {
    std::fill(fused.begin(), fused.end(), 255.0);
  } else {
    const double scale = 255.0 / (hi - lo);
    // Clamp away the last-ulp spill of the rescale.
    for (double& v : fused) {
      v = std::clamp((v - lo) * scale, 0.0, 255.0);
    }
  }
  return {SaliencyMap(s_init.width(), s_init.height(), std::move(fused)), lo,
          hi};
}

inline SaliencyMap fuse_saliency(const SaliencyMap& s_init,
                                 const DepthMap& depth,
                                 const FusionParams& params) {
  return fuse_saliency_full(s_init, depth, params).map;
}

}  // namespace sba
