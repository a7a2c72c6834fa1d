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

// Test-only central finite-difference Jacobians of the reprojection
// residual. Independent of the analytic path in core/camera.hpp: only the
// projection functions are shared.

#include <Eigen/Core>

#include "salient_ba/core/camera.hpp"
#include "salient_ba/core/pose.hpp"

namespace sba::test {

inline Eigen::Vector3d residual_of(const Pose& pose,
                                   const Eigen::Vector3d& point,
                                   const Eigen::Vector3d& measurement,
                                   const CameraIntrinsics& k,
                                   CameraMode mode) {
  Eigen::Vector3d r = measurement - project(pose * point, k, mode);
  if (mode == CameraMode::kMono) r.z() = 0.0;
  return r;
}

struct FiniteDiffJacobians {
  Eigen::Matrix<double, 3, 6> d_pose;
  Eigen::Matrix<double, 3, 3> d_point;
};

inline FiniteDiffJacobians finite_diff_jacobians(
    const Pose& pose, const Eigen::Vector3d& point,
    const Eigen::Vector3d& measurement, const CameraIntrinsics& k,
    CameraMode mode, double step = 1e-6) {
  FiniteDiffJacobians out;
  for (int i = 0; i < 6; ++i) {
    Twist plus = Twist::Zero(), minus = Twist::Zero();
    plus(i) = step;
    minus(i) = -step;
    const Eigen::Vector3d rp =
        residual_of(se3_exp(plus) * pose, point, measurement, k, mode);
    const Eigen::Vector3d rm =
        residual_of(se3_exp(minus) * pose, point, measurement, k, mode);
    out.d_pose.col(i) = (rp - rm) / (2.0 * step);
  }
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d dp = Eigen::Vector3d::Zero();
    dp(i) = step;
    const Eigen::Vector3d rp =
        residual_of(pose, point + dp, measurement, k, mode);
    const Eigen::Vector3d rm =
        residual_of(pose, point - dp, measurement, k, mode);
    out.d_point.col(i) = (rp - rm) / (2.0 * step);
  }
  return out;
}

}  // namespace sba::test
