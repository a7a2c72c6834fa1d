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

#include <vector>

#include <Eigen/Core>
#include <Eigen/SVD>

#include "salient_ba/core/pose.hpp"
#include "salient_ba/core/trajectory.hpp"
#include "salient_ba/error.hpp"

namespace sba {

/// Least-squares Sim(3) (or SE(3) with with_scale = false) alignment of two
/// position sets: minimizes sum ||target_i - s R source_i - t||^2 over s, R, t
/// (Umeyama's closed form). Orientations are ignored on purpose; trajectory
/// evaluation aligns positions only.
///
/// Requires at least 3 correspondences that are not collinear; throws
/// DegenerateGeometryError otherwise.
inline SimTransform umeyama_align(const std::vector<Eigen::Vector3d>& source,
                                  const std::vector<Eigen::Vector3d>& target,
                                  bool with_scale) {
  if (source.size() != target.size()) {
    throw DimensionMismatchError("umeyama_align: size mismatch");
  }
  const std::size_t n = source.size();
  if (n < 3) {
    throw DegenerateGeometryError("umeyama_align: need at least 3 points");
  }

  Eigen::Vector3d mean_src = Eigen::Vector3d::Zero();
  Eigen::Vector3d mean_tgt = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    mean_src += source[i];
    mean_tgt += target[i];
  }
  mean_src /= static_cast<double>(n);
  mean_tgt /= static_cast<double>(n);

  Eigen::Matrix3d sigma = Eigen::Matrix3d::Zero();
  double var_src = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d ds = source[i] - mean_src;
    const Eigen::Vector3d dt = target[i] - mean_tgt;
    sigma += dt * ds.transpose();
    var_src += ds.squaredNorm();
  }
  sigma /= static_cast<double>(n);
  var_src /= static_cast<double>(n);

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      sigma, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d sv = svd.singularValues();

  // Rank < 2 means the point sets are collinear (or coincident): rotation
  // about the common axis is unobservable.
  if (sv(1) <= 1e-12 * std::max(sv(0), 1e-300) || var_src <= 1e-24) {
    throw DegenerateGeometryError(
        "umeyama_align: degenerate geometry (collinear or coincident points)");
  }

  Eigen::Vector3d d = Eigen::Vector3d::Ones();
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) {
    d(2) = -1.0;
  }
  const Eigen::Matrix3d r =
      svd.matrixU() * d.asDiagonal() * svd.matrixV().transpose();

  double scale = 1.0;
  if (with_scale) {
    scale = (sv(0) * d(0) + sv(1) * d(1) + sv(2) * d(2)) / var_src;
    if (!(scale > 0.0)) {
      throw DegenerateGeometryError("umeyama_align: non-positive scale");
    }
  }

  const Rotation rotation(r);
  const Eigen::Vector3d t = mean_tgt - scale * (rotation * mean_src);
  return SimTransform(rotation, t, scale);
}

/// Alignment of trajectory positions (timestamps must already correspond
/// index-to-index; see metrics::associate for matching by time).
inline SimTransform umeyama_align(const Trajectory& source,
                                  const Trajectory& target, bool with_scale) {
  return umeyama_align(source.positions(), target.positions(), with_scale);
}

}  // namespace sba
