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

#include "salient_ba/core/rotation.hpp"
#include "salient_ba/error.hpp"

namespace sba {

/// Rigid transform in SE(3).
///
/// CONVENTION: throughout the solver a Pose maps world coordinates into
/// camera coordinates, x_cam = R * X_world + t. Trajectory files use the
/// opposite (camera-to-world) direction; see trajectory.hpp.
class Pose {
 public:
  Pose() = default;

  Pose(const Rotation& rotation, const Eigen::Vector3d& translation)
      : rotation_(rotation), translation_(translation) {}

  static Pose identity() { return Pose(); }

  const Rotation& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }

  /// Apply to a point: R * p + t.
  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const {
    return rotation_ * p + translation_;
  }

  Pose operator*(const Pose& other) const {
    return Pose(rotation_ * other.rotation_,
                rotation_ * other.translation_ + translation_);
  }

  Pose inverse() const {
    const Rotation r_inv = rotation_.inverse();
    return Pose(r_inv, -(r_inv * translation_));
  }

  Eigen::Matrix4d matrix() const {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = rotation_.matrix();
    m.topRightCorner<3, 1>() = translation_;
    return m;
  }

  bool is_approx(const Pose& other, double rot_tol = 1e-12,
                 double trans_tol = 1e-12) const {
    return rotation_.is_approx(other.rotation_, rot_tol) &&
           (translation_ - other.translation_).norm() <= trans_tol;
  }

 private:
  Rotation rotation_;
  Eigen::Vector3d translation_ = Eigen::Vector3d::Zero();
};

/// Twist ordering is [omega; v]: rotation block first, translation second.
using Twist = Eigen::Matrix<double, 6, 1>;

/// Exponential map of se(3). Rotation via Rodrigues, translation via the
/// left Jacobian of SO(3); a series branch handles |omega| below 1e-9.
inline Pose se3_exp(const Twist& twist) {
  const Eigen::Vector3d omega = twist.head<3>();
  const Eigen::Vector3d v = twist.tail<3>();
  return Pose(Rotation::exp(omega), detail::so3_left_jacobian(omega) * v);
}

/// Inverse of se3_exp. Throws DegenerateGeometryError when the rotation
/// angle is within 1e-6 of pi.
inline Twist se3_log(const Pose& pose) {
  Twist twist;
  const Eigen::Vector3d omega = pose.rotation().log();
  twist.head<3>() = omega;
  twist.tail<3>() = detail::so3_left_jacobian_inv(omega) * pose.translation();
  return twist;
}

/// Similarity transform: p -> s * R * p + t. With scale 1 it acts on points
/// exactly like a Pose.
class SimTransform {
 public:
  SimTransform() = default;

  SimTransform(const Rotation& rotation, const Eigen::Vector3d& translation,
               double scale)
      : rotation_(rotation), translation_(translation), scale_(scale) {
    if (!(scale_ > 0.0)) {
      throw InvalidArgumentError("sim transform: scale must be positive");
    }
  }

  static SimTransform identity() { return SimTransform(); }

  const Rotation& rotation() const { return rotation_; }
  const Eigen::Vector3d& translation() const { return translation_; }
  double scale() const { return scale_; }

  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const {
    return scale_ * (rotation_ * p) + translation_;
  }

 private:
  Rotation rotation_;
  Eigen::Vector3d translation_ = Eigen::Vector3d::Zero();
  double scale_ = 1.0;
};

/// 3D landmark in world coordinates.
struct MapPoint {
  std::int64_t id = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
};

}  // namespace sba
