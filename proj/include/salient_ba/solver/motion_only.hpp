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
#include <unordered_map>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "salient_ba/core/camera.hpp"
#include "salient_ba/core/pose.hpp"
#include "salient_ba/solver/residual.hpp"
#include "salient_ba/solver/types.hpp"

namespace sba {

namespace detail {

/// Mean of the raw observation weights. The solvers normalize weights to
/// unit mean internally: the estimate depends only on weight ratios, so a
/// uniform rescaling of every w_i leaves the argmin unchanged and merely
/// rescales the reported cost. Reported costs are multiplied back by this
/// mean.
inline double mean_weight(const std::vector<Observation>& observations) {
  double sum = 0.0;
  for (const auto& obs : observations) {
    if (!(obs.weight > 0.0)) {
      throw InvalidArgumentError("observation weight must be positive");
    }
    sum += obs.weight;
  }
  return observations.empty() ? 1.0 : sum / observations.size();
}

struct CostEval {
  double cost = 0.0;  // normalized-weight robust cost
  int valid = 0;
};

}  // namespace detail

struct MotionOnlyResult {
  Pose pose;
  SolveReport report;
};

/// Motion-only bundle adjustment: Levenberg-Marquardt on the 6-dof twist of
/// a single camera, all map points held fixed. Observations that project
/// behind the camera are skipped for the iteration in which that happens.
inline MotionOnlyResult solve_motion_only(
    const std::vector<Observation>& observations,
    const std::vector<MapPoint>& points, const Pose& initial_pose,
    const CameraIntrinsics& k, CameraMode mode, const NoiseModel& noise,
    const RobustKernel& kernel, const SolverConfig& config = {}) {
  noise.validate();
  kernel.validate();
  config.validate();

  const std::size_t min_obs = mode == CameraMode::kMono ? 6 : 3;
  if (observations.size() < min_obs) {
    throw InsufficientDataError("solve_motion_only: needs at least " +
                                std::to_string(min_obs) + " observations");
  }

  std::unordered_map<std::int64_t, Eigen::Vector3d> point_by_id;
  point_by_id.reserve(points.size());
  for (const auto& p : points) point_by_id.emplace(p.id, p.position);
  for (const auto& obs : observations) {
    if (point_by_id.find(obs.point_id) == point_by_id.end()) {
      throw InvalidArgumentError("solve_motion_only: unknown point id " +
                                 std::to_string(obs.point_id));
    }
  }

  const double w_mean = detail::mean_weight(observations);

  const auto eval_cost = [&](const Pose& pose) {
    detail::CostEval ce;
    ResidualEval r;
    for (const auto& obs : observations) {
      if (detail::try_residual_and_cost(obs, pose, point_by_id.at(obs.point_id),
                                        k, mode, noise, kernel,
                                        obs.weight / w_mean, r)) {
        ce.cost += r.cost;
        ++ce.valid;
      }
    }
    return ce;
  };

  Pose pose = initial_pose;
  SolveReport report;
  double lambda = config.initial_lambda;

  detail::CostEval current = eval_cost(pose);
  report.initial_cost = w_mean * current.cost;
  report.cost_trace.push_back(report.initial_cost);
  report.reason = ConvergenceReason::kMaxIterations;

  const int dim = measurement_dim(mode);
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    report.iterations = iter + 1;

    // Linearize at the current pose.
    Eigen::Matrix<double, 6, 6> h = Eigen::Matrix<double, 6, 6>::Zero();
    Eigen::Matrix<double, 6, 1> g = Eigen::Matrix<double, 6, 1>::Zero();
    ResidualEval r;
    for (const auto& obs : observations) {
      const Eigen::Vector3d& x = point_by_id.at(obs.point_id);
      if (!detail::try_residual_and_cost(obs, pose, x, k, mode, noise, kernel,
                                         obs.weight / w_mean, r)) {
        continue;
      }
      const ReprojectionJacobians jac =
          reprojection_jacobians(pose, x, k, mode);
      const double m =
          r.irls_scale * (obs.weight / w_mean) * noise.inv_sigma_sq(obs.octave);
      const auto j = jac.d_pose.topRows(dim);
      h.noalias() += m * j.transpose() * j;
      g.noalias() += m * j.transpose() * r.residual.head(dim);
    }

    // Try steps with increasing damping until one is accepted.
    bool accepted = false;
    while (true) {
      Eigen::Matrix<double, 6, 6> h_damped = h;
      for (int i = 0; i < 6; ++i) h_damped(i, i) *= (1.0 + lambda);
      const Twist delta = h_damped.ldlt().solve(-g);

      if (delta.allFinite()) {
        const Pose candidate = se3_exp(delta) * pose;
        const detail::CostEval next = eval_cost(candidate);
        // A step that loses observations is never an improvement.
        if (next.valid >= current.valid && next.cost <= current.cost) {
          const double prev_cost = current.cost;
          pose = candidate;
          current = next;
          lambda = std::max(lambda / config.lambda_down, 1e-300);
          report.cost_trace.push_back(w_mean * current.cost);
          accepted = true;
          if (delta.norm() < config.step_tolerance) {
            report.reason = ConvergenceReason::kStepTolerance;
          } else if (prev_cost - current.cost <=
                     config.cost_tolerance * std::max(prev_cost, 1e-300)) {
            report.reason = ConvergenceReason::kCostTolerance;
          }
          break;
        }
      }
      lambda *= config.lambda_up;
      if (lambda > config.max_lambda) break;
    }

    if (!accepted) {
      report.reason = ConvergenceReason::kNoAcceptedStep;
      break;
    }
    if (report.reason == ConvergenceReason::kStepTolerance ||
        report.reason == ConvergenceReason::kCostTolerance) {
      break;
    }
  }

  report.final_cost = w_mean * current.cost;
  return {pose, report};
}

}  // namespace sba
