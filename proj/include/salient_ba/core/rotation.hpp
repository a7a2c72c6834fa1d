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

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "salient_ba/error.hpp"

namespace sba {

/// Rotations in SO(3), stored as a unit quaternion (Hamilton convention,
/// w, x, y, z). The quaternion is renormalized after every construction and
/// composition, so |norm - 1| stays below 1e-12 over arbitrarily long chains.
class Rotation {
 public:
  /// Identity rotation.
  Rotation() : q_(Eigen::Quaterniond::Identity()) {}

  /// From quaternion coefficients; normalizes. Throws on a near-zero norm.
  Rotation(double w, double x, double y, double z) : q_(w, x, y, z) {
    normalize();
  }

  explicit Rotation(const Eigen::Quaterniond& q) : q_(q) { normalize(); }

  explicit Rotation(const Eigen::Matrix3d& m) : q_(m) { normalize(); }

  static Rotation identity() { return Rotation(); }

  /// Exponential map of so(3): rotation by angle |omega| about omega/|omega|.
  /// Small angles use a Taylor branch; the coefficient formulas cancel
  /// catastrophically well before the angle itself becomes negligible.
  static Rotation exp(const Eigen::Vector3d& omega) {
    const double theta2 = omega.squaredNorm();
    const double theta = std::sqrt(theta2);
    double w, k;
    if (theta < kTaylorThreshold) {
      w = 1.0 - theta2 / 8.0 + theta2 * theta2 / 384.0;
      k = 0.5 - theta2 / 48.0 + theta2 * theta2 / 3840.0;
    } else {
      w = std::cos(0.5 * theta);
      k = std::sin(0.5 * theta) / theta;
    }
    return Rotation(w, k * omega.x(), k * omega.y(), k * omega.z());
  }

  /// Logarithm map: rotation vector with angle in [0, pi).
  /// Throws DegenerateGeometryError when the angle is within 1e-6 of pi.
  Eigen::Vector3d log() const {
    Eigen::Quaterniond q = q_;
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    const double vec_norm = q.vec().norm();
    const double theta = 2.0 * std::atan2(vec_norm, q.w());
    if (theta > M_PI - 1e-6) {
      throw DegenerateGeometryError("rotation log: angle within 1e-6 of pi");
    }
    double scale;
    if (vec_norm < kSmallAngle) {
      // theta / sin(theta/2) ~ 2 + theta^2/12 near zero.
      scale = 2.0 + theta * theta / 12.0;
    } else {
      scale = theta / vec_norm;
    }
    return scale * q.vec();
  }

  Rotation inverse() const {
    return Rotation(Eigen::Quaterniond(q_.w(), -q_.x(), -q_.y(), -q_.z()));
  }

  Rotation operator*(const Rotation& other) const {
    return Rotation(q_ * other.q_);
  }

  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const { return q_ * p; }

  Eigen::Matrix3d matrix() const { return q_.toRotationMatrix(); }

  const Eigen::Quaterniond& quaternion() const { return q_; }

  /// Rotation angle in [0, pi].
  double angle() const {
    Eigen::Quaterniond q = q_;
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    return 2.0 * std::atan2(q.vec().norm(), q.w());
  }

  /// Geodesic distance to another rotation, radians.
  double angular_distance(const Rotation& other) const {
    return (inverse() * other).angle();
  }

  bool is_approx(const Rotation& other, double tol = 1e-12) const {
    return angular_distance(other) <= tol;
  }

 private:
  static constexpr double kSmallAngle = 1e-9;
  static constexpr double kTaylorThreshold = 1e-2;

  void normalize() {
    const double n = q_.norm();
    if (!(n > 1e-300)) {
      throw InvalidArgumentError("rotation: quaternion norm is zero");
    }
    q_.coeffs() /= n;
  }

  Eigen::Quaterniond q_;
};

/// Skew-symmetric matrix such that skew(a) * b == a.cross(b).
inline Eigen::Matrix3d skew(const Eigen::Vector3d& a) {
  Eigen::Matrix3d m;
  m << 0.0, -a.z(), a.y(), a.z(), 0.0, -a.x(), -a.y(), a.x(), 0.0;
  return m;
}

namespace detail {

/// Angle below which the Taylor branches take over. The closed forms
/// ((1-cos t)/t^2 and friends) lose most of their digits to cancellation
/// already around t ~ 1e-4, far above where t itself is negligible.
constexpr double kJacobianTaylorThreshold = 1e-2;

/// Left Jacobian of SO(3): J_l(w) = I + B [w]x + C [w]x^2 with
/// B = (1-cos t)/t^2, C = (t - sin t)/t^3.
inline Eigen::Matrix3d so3_left_jacobian(const Eigen::Vector3d& omega) {
  const double theta2 = omega.squaredNorm();
  const double theta = std::sqrt(theta2);
  double b, c;
  if (theta < kJacobianTaylorThreshold) {
    b = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
    c = 1.0 / 6.0 - theta2 / 120.0 + theta2 * theta2 / 5040.0;
  } else {
    b = (1.0 - std::cos(theta)) / theta2;
    c = (theta - std::sin(theta)) / (theta2 * theta);
  }
  const Eigen::Matrix3d w = skew(omega);
  return Eigen::Matrix3d::Identity() + b * w + c * w * w;
}

/// Inverse of the left Jacobian, valid for angles below pi.
inline Eigen::Matrix3d so3_left_jacobian_inv(const Eigen::Vector3d& omega) {
  const double theta2 = omega.squaredNorm();
  const double theta = std::sqrt(theta2);
  double c;
  if (theta < kJacobianTaylorThreshold) {
    c = 1.0 / 12.0 + theta2 / 720.0 + theta2 * theta2 / 30240.0;
  } else {
    const double a = std::sin(theta) / theta;
    const double b = (1.0 - std::cos(theta)) / theta2;
    c = (1.0 - a / (2.0 * b)) / theta2;
  }
  const Eigen::Matrix3d w = skew(omega);
  return Eigen::Matrix3d::Identity() - 0.5 * w + c * w * w;
}

}  // namespace detail

}  // namespace sba
