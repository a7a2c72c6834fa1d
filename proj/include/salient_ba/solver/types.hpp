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
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "salient_ba/core/camera.hpp"
#include "salient_ba/core/pose.hpp"
#include "salient_ba/error.hpp"

namespace sba {

/// One keypoint measurement linking a keyframe to a map point. The
/// measurement is (u, v) for mono and (u_left, v, u_right) for stereo; the
/// unused third entry is zero in mono problems.
struct Observation {
  std::int64_t frame_id = 0;
  std::int64_t point_id = 0;
  Eigen::Vector3d measurement = Eigen::Vector3d::Zero();
  int octave = 0;
  double weight = 1.0;  // salient weight w_i, must be > 0
};

/// Isotropic pixel noise, scaled by the keypoint's pyramid octave:
/// sigma(octave) = sigma_px * octave_scale^octave.
struct NoiseModel {
  double sigma_px = 1.0;
  double octave_scale = 1.2;

  void validate() const {
    if (!(sigma_px > 0.0)) {
      throw InvalidArgumentError("noise model: sigma_px must be positive");
    }
    if (!(octave_scale >= 1.0)) {
      throw InvalidArgumentError("noise model: octave_scale must be >= 1");
    }
  }

  double inv_sigma_sq(int octave) const {
    const double s = sigma_px * std::pow(octave_scale, octave);
    return 1.0 / (s * s);
  }
};

/// Huber kernel applied to the weighted squared Mahalanobis norm
/// s = w * e' Sigma^-1 e:
///   rho(s) = s                         for s <= delta_sq
///   rho(s) = 2 sqrt(delta_sq * s) - delta_sq   otherwise.
/// Defaults are the chi-square 95% thresholds for 2 and 3 dof. Setting a
/// threshold to +infinity disables the kernel for that mode.
struct RobustKernel {
  double delta_sq_mono = 5.991;
  double delta_sq_stereo = 7.815;

  static RobustKernel disabled() {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }

  void validate() const {
    if (!(delta_sq_mono > 0.0) || !(delta_sq_stereo > 0.0)) {
      throw InvalidArgumentError("robust kernel: thresholds must be positive");
    }
  }

  double threshold(CameraMode mode) const {
    return mode == CameraMode::kMono ? delta_sq_mono : delta_sq_stereo;
  }

  static double rho(double s, double delta_sq) {
    if (s <= delta_sq) return s;
    return 2.0 * std::sqrt(delta_sq * s) - delta_sq;
  }

  static double rho_deriv(double s, double delta_sq) {
    if (s <= delta_sq) return 1.0;
    return std::sqrt(delta_sq / s);
  }
};

/// Keyframe sets of a local bundle adjustment: active keyframes are
/// optimized, fixed keyframes contribute residuals but stay put, active
/// points are optimized. The sets must be disjoint and every active point
/// must be observed by at least two window keyframes.
struct LocalWindow {
  std::set<std::int64_t> active_keyframes;
  std::set<std::int64_t> fixed_keyframes;
  std::set<std::int64_t> active_points;
};

struct SolverConfig {
  int max_iterations = 20;
  double initial_lambda = 1e-4;
  double lambda_up = 10.0;
  double lambda_down = 10.0;
  double step_tolerance = 1e-10;      // on the update twist norm
  double cost_tolerance = 1e-8;       // relative per-iteration cost decrease
  double max_lambda = 1e12;           // damping ceiling before giving up

  void validate() const {
    if (max_iterations <= 0 || !(initial_lambda > 0.0) ||
        !(lambda_up > 1.0) || !(lambda_down > 1.0) ||
        !(step_tolerance > 0.0) || !(cost_tolerance > 0.0) ||
        !(max_lambda > 0.0)) {
      throw InvalidArgumentError("solver config: all entries must be positive");
    }
  }
};

enum class ConvergenceReason {
  kStepTolerance,
  kCostTolerance,
  kMaxIterations,
  kNoAcceptedStep,
  kRankDeficient,
};

inline std::string to_string(ConvergenceReason reason) {
  switch (reason) {
    case ConvergenceReason::kStepTolerance: return "step_tolerance";
    case ConvergenceReason::kCostTolerance: return "cost_tolerance";
    case ConvergenceReason::kMaxIterations: return "max_iterations";
    case ConvergenceReason::kNoAcceptedStep: return "no_accepted_step";
    case ConvergenceReason::kRankDeficient: return "rank_deficient";
  }
  return "unknown";
}

/// Outcome of one solve. Costs are the robust objective evaluated with the
/// caller's raw weights (see residual.hpp for the internal normalization);
/// the accepted-cost trace is non-increasing and final_cost <= initial_cost.
struct SolveReport {
  int iterations = 0;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  ConvergenceReason reason = ConvergenceReason::kMaxIterations;
  std::vector<double> cost_trace;  // accepted costs, starting at initial
  /// Set when an empty fixed set forced the solver to fix a frame itself.
  std::optional<std::int64_t> gauge_fixed_frame;
};

/// A keyframe pose in the solver's camera-from-world convention.
struct Keyframe {
  std::int64_t id = 0;
  Pose pose;  // x_cam = R * X_world + t
};

/// A self-contained bundle problem: everything the solvers and the snapshot
/// format carry.
struct Problem {
  CameraMode mode = CameraMode::kMono;
  CameraIntrinsics intrinsics;
  std::vector<Keyframe> keyframes;
  std::vector<MapPoint> points;
  std::vector<Observation> observations;
};

}  // namespace sba
