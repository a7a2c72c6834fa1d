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

#include "salient_ba/core/camera.hpp"
#include "salient_ba/core/pose.hpp"
#include "salient_ba/solver/types.hpp"

namespace sba {

/// Per-observation evaluation of the salient robust objective term
/// rho( w * || x - pi(R X + t) ||^2_Sigma ).
struct ResidualEval {
  Eigen::Vector3d residual = Eigen::Vector3d::Zero();  // first `dim` entries
  int dim = 2;
  double weighted_chi2 = 0.0;  // w * e' Sigma^-1 e
  double cost = 0.0;           // rho(weighted_chi2)
  double irls_scale = 1.0;     // rho'(weighted_chi2)
};

namespace detail {

/// Non-throwing core; returns false when the point is behind the camera.
inline bool try_residual_and_cost(const Observation& obs, const Pose& pose,
                                  const Eigen::Vector3d& point,
                                  const CameraIntrinsics& k, CameraMode mode,
                                  const NoiseModel& noise,
                                  const RobustKernel& kernel, double weight,
                                  ResidualEval& out) {
  const Eigen::Vector3d p_cam = pose * point;
  if (!(p_cam.z() > kDefaultZMin)) return false;

  out.dim = measurement_dim(mode);
  const Eigen::Vector3d projected = project(p_cam, k, mode);
  out.residual = obs.measurement - projected;
  if (mode == CameraMode::kMono) out.residual.z() = 0.0;

  const double inv_sigma_sq = noise.inv_sigma_sq(obs.octave);
  const double chi2 = out.residual.squaredNorm() * inv_sigma_sq;
  out.weighted_chi2 = weight * chi2;
  const double delta_sq = kernel.threshold(mode);
  out.cost = RobustKernel::rho(out.weighted_chi2, delta_sq);
  out.irls_scale = RobustKernel::rho_deriv(out.weighted_chi2, delta_sq);
  return true;
}

}  // namespace detail

/// Evaluates one observation against a pose and point. Throws
/// BehindCameraError when the point projects behind the camera; inside the
/// solvers such observations are merely skipped for the iteration.
inline ResidualEval residual_and_cost(const Observation& obs, const Pose& pose,
                                      const Eigen::Vector3d& point,
                                      const CameraIntrinsics& k,
                                      CameraMode mode, const NoiseModel& noise,
                                      const RobustKernel& kernel) {
  if (!(obs.weight > 0.0)) {
    throw InvalidArgumentError("observation weight must be positive");
  }
  noise.validate();
  kernel.validate();
  ResidualEval out;
  if (!detail::try_residual_and_cost(obs, pose, point, k, mode, noise, kernel,
                                     obs.weight, out)) {
    throw BehindCameraError("residual_and_cost: point behind camera");
  }
  return out;
}

inline ResidualEval residual_and_cost(const Observation& obs, const Pose& pose,
                                      const MapPoint& point,
                                      const CameraIntrinsics& k,
                                      CameraMode mode, const NoiseModel& noise,
                                      const RobustKernel& kernel) {
  return residual_and_cost(obs, pose, point.position, k, mode, noise, kernel);
}

}  // namespace sba
