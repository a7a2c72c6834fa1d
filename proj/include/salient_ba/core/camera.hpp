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

#include <Eigen/Core>

#include "salient_ba/core/pose.hpp"
#include "salient_ba/error.hpp"

namespace sba {

/// Pinhole intrinsics. baseline > 0 enables the stereo projection; 0 means
/// monocular. No distortion model.
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
  double baseline = 0.0;  // meters, 0 for monocular

  CameraIntrinsics() = default;
  CameraIntrinsics(double fx_, double fy_, double cx_, double cy_,
                   double baseline_ = 0.0)
      : fx(fx_), fy(fy_), cx(cx_), cy(cy_), baseline(baseline_) {
    if (!(fx > 0.0) || !(fy > 0.0)) {
      throw InvalidArgumentError("intrinsics: focal lengths must be positive");
    }
    if (baseline < 0.0) {
      throw InvalidArgumentError("intrinsics: baseline must be >= 0");
    }
  }
};

/// Depth cutoff below which a point counts as behind the camera.
constexpr double kDefaultZMin = 1e-6;

enum class CameraMode { kMono, kStereo };

inline int measurement_dim(CameraMode mode) {
  return mode == CameraMode::kMono ? 2 : 3;
}

/// Monocular pinhole projection of a camera-frame point to pixels.
/// Throws BehindCameraError when z <= z_min.
inline Eigen::Vector2d project_mono(const Eigen::Vector3d& point_cam,
                                    const CameraIntrinsics& k,
                                    double z_min = kDefaultZMin) {
  if (!(point_cam.z() > z_min)) {
    throw BehindCameraError("project_mono: point behind camera");
  }
  const double inv_z = 1.0 / point_cam.z();
  return {k.fx * point_cam.x() * inv_z + k.cx,
          k.fy * point_cam.y() * inv_z + k.cy};
}

/// Stereo projection (u_left, v, u_right) of a camera-frame point. The
/// disparity u_left - u_right equals fx * baseline / z and is positive for
/// every point in front of the camera.
inline Eigen::Vector3d project_stereo(const Eigen::Vector3d& point_cam,
                                      const CameraIntrinsics& k,
                                      double z_min = kDefaultZMin) {
  if (!(k.baseline > 0.0)) {
    throw InvalidArgumentError("project_stereo: baseline must be positive");
  }
  if (!(point_cam.z() > z_min)) {
    throw BehindCameraError("project_stereo: point behind camera");
  }
  const double inv_z = 1.0 / point_cam.z();
  const double u = k.fx * point_cam.x() * inv_z + k.cx;
  const double v = k.fy * point_cam.y() * inv_z + k.cy;
  const double u_r = k.fx * (point_cam.x() - k.baseline) * inv_z + k.cx;
  return {u, v, u_r};
}

/// Projection with the measurement packed into a 3-vector; for mono the
/// third entry is zero. Dispatches on mode.
inline Eigen::Vector3d project(const Eigen::Vector3d& point_cam,
                               const CameraIntrinsics& k, CameraMode mode,
                               double z_min = kDefaultZMin) {
  if (mode == CameraMode::kMono) {
    Eigen::Vector3d out = Eigen::Vector3d::Zero();
    out.head<2>() = project_mono(point_cam, k, z_min);
    return out;
  }
  return project_stereo(point_cam, k, z_min);
}

/// Jacobians of the reprojection residual e = x - pi(R * X + t).
///
/// pose is perturbed by a left-multiplied se(3) twist [omega; v]
/// (pose <- exp(xi) * pose); the point by a plain world-frame delta.
/// Rows beyond the measurement dimension are zero in mono mode.
struct ReprojectionJacobians {
  Eigen::Matrix<double, 3, 6> d_pose;   // 2x6 used in mono mode
  Eigen::Matrix<double, 3, 3> d_point;  // 2x3 used in mono mode
  int rows = 0;
};

inline ReprojectionJacobians reprojection_jacobians(
    const Pose& pose, const Eigen::Vector3d& point_world,
    const CameraIntrinsics& k, CameraMode mode, double z_min = kDefaultZMin) {
  const Eigen::Vector3d p = pose * point_world;
  if (!(p.z() > z_min)) {
    throw BehindCameraError("reprojection_jacobians: point behind camera");
  }
  if (mode == CameraMode::kStereo && !(k.baseline > 0.0)) {
    throw InvalidArgumentError(
        "reprojection_jacobians: stereo needs baseline > 0");
  }

  const double inv_z = 1.0 / p.z();
  const double inv_z2 = inv_z * inv_z;

  // d pi / d p, row per measurement component.
  Eigen::Matrix<double, 3, 3> dpi = Eigen::Matrix<double, 3, 3>::Zero();
  dpi(0, 0) = k.fx * inv_z;
  dpi(0, 2) = -k.fx * p.x() * inv_z2;
  dpi(1, 1) = k.fy * inv_z;
  dpi(1, 2) = -k.fy * p.y() * inv_z2;
  const int rows = measurement_dim(mode);
  if (mode == CameraMode::kStereo) {
    dpi(2, 0) = k.fx * inv_z;
    dpi(2, 2) = -k.fx * (p.x() - k.baseline) * inv_z2;
  }

  // Left perturbation: d p / d [omega; v] = [ -skew(p) | I ].
  Eigen::Matrix<double, 3, 6> dp_dxi;
  dp_dxi.leftCols<3>() = -skew(p);
  dp_dxi.rightCols<3>() = Eigen::Matrix3d::Identity();

  ReprojectionJacobians j;
  j.rows = rows;
  j.d_pose = -dpi * dp_dxi;
  j.d_point = -dpi * pose.rotation().matrix();
  if (mode == CameraMode::kMono) {
    j.d_pose.row(2).setZero();
    j.d_point.row(2).setZero();
  }
  return j;
}

}  // namespace sba
