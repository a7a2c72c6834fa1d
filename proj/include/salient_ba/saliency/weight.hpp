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

#include "salient_ba/error.hpp"

namespace sba {

/// Parameters of the salient observation weight w = a * s^2 + b.
///
/// b_w must be strictly positive so that zero-saliency observations keep a
/// floor weight and never drop out of the normal equations.
struct WeightParams {
  double a_w = 1.0;
  double b_w = 0.1;
  /// When false (default) the saliency sample is normalized to [0, 1]
  /// before squaring, keeping weights in [b_w, a_w + b_w] regardless of
  /// raster bit depth. When true the raw [0, 255] pixel value is squared.
  bool raw_scale = false;

  void validate() const {
    if (!(a_w >= 0.0)) {
      throw InvalidArgumentError("weight params: a_w must be >= 0");
    }
    if (!(b_w > 0.0)) {
      throw InvalidArgumentError("weight params: b_w must be > 0");
    }
  }
};

/// Observation weight from a saliency sample s in [0, 255]. Strictly
/// positive and non-decreasing in s; equals a_w + b_w at s = 255 (in the
/// normalized reading).
inline double salient_weight(double s, const WeightParams& params) {
  params.validate();
  const double clamped = std::clamp(s, 0.0, 255.0);
  const double base = params.raw_scale ? clamped : clamped / 255.0;
  return params.a_w * base * base + params.b_w;
}

}  // namespace sba
