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
#include <set>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "salient_ba/core/camera.hpp"
#include "salient_ba/core/pose.hpp"
#include "salient_ba/core/trajectory.hpp"
#include "salient_ba/error.hpp"
#include "salient_ba/saliency/raster.hpp"
#include "salient_ba/sim/rng.hpp"
#include "salient_ba/solver/types.hpp"

namespace sba {

enum class TrajectoryShape { kLine, kArc, kLoop };

inline std::string to_string(TrajectoryShape shape) {
  switch (shape) {
    case TrajectoryShape::kLine: return "line";
    case TrajectoryShape::kArc: return "arc";
    case TrajectoryShape::kLoop: return "loop";
  }
  return "unknown";
}

inline TrajectoryShape trajectory_shape_from_string(const std::string& s) {
  if (s == "line") return TrajectoryShape::kLine;
  if (s == "arc") return TrajectoryShape::kArc;
  if (s == "loop") return TrajectoryShape::kLoop;
  throw ConfigError("scene.trajectory_shape: unknown value '" + s +
                    "' (expected line|arc|loop)");
}

/// Spacing between keyframe timestamps in exported trajectories, seconds.
constexpr double kFrameDt = 0.1;

struct SceneConfig {
  std::uint64_t seed = 1;
  int n_keyframes = 12;
  int n_points = 150;
  TrajectoryShape trajectory_shape = TrajectoryShape::kLoop;
  /// Landmark box extents (meters), centered on the world origin. Cameras
  /// orbit/track outside the box looking at its center.
  Eigen::Vector3d point_box = Eigen::Vector3d(6.0, 3.0, 6.0);
  CameraIntrinsics intrinsics = CameraIntrinsics(450.0, 450.0, 320.0, 240.0, 0.5);
  int image_width = 640;
  int image_height = 480;

  void validate() const {
    if (n_keyframes < 2) throw ConfigError("scene.n_keyframes: must be >= 2");
    if (n_points < 8) throw ConfigError("scene.n_points: must be >= 8");
    if (!(point_box.minCoeff() > 0.0)) {
      throw ConfigError("scene.point_box: extents must be positive");
    }
    if (image_width <= 0 || image_height <= 0) {
      throw ConfigError("scene.image_size: must be positive");
    }
  }
};

struct NoiseProfile {
  double sigma_min = 0.3;  // pixel std at saliency 1
  double sigma_max = 2.0;  // pixel std at saliency 0
  double outlier_rate_low_saliency = 0.05;
  double outlier_magnitude = 15.0;  // pixels
  double dynamic_point_fraction = 0.05;
  double dynamic_drift = 0.01;  // meters per frame

  void validate() const {
    if (!(sigma_min >= 0.0) || !(sigma_max >= sigma_min)) {
      throw ConfigError("noise.sigma: need 0 <= sigma_min <= sigma_max");
    }
    for (double p : {outlier_rate_low_saliency, dynamic_point_fraction}) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("noise: probabilities must lie in [0, 1]");
      }
    }
    if (!(outlier_magnitude >= 0.0) || !(dynamic_drift >= 0.0)) {
      throw ConfigError("noise: magnitudes must be >= 0");
    }
  }

  /// Pixel noise std for a point of saliency s in [0, 1]; affine and
  /// decreasing, sigma_max at s = 0 down to sigma_min at s = 1.
  double sigma_for(double saliency) const {
    return sigma_max - (sigma_max - sigma_min) * saliency;
  }
};

/// Landmark with the ground-truth saliency score the raster rendering and
/// the oracle solver variant both derive from.
struct WorldPoint {
  std::int64_t id = 0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double saliency = 0.0;  // in [0, 1]
};

/// Points below this saliency count as low-saliency: they are the outlier
/// and dynamic-object candidates.
constexpr double kLowSaliencyThreshold = 0.2;

/// Std of the rendered Gaussian splats, pixels.
constexpr double kSplatSigmaPx = 6.0;

struct World {
  SceneConfig config;
  Trajectory ground_truth;             // camera-to-world, timestamps k*dt
  std::vector<Pose> cam_from_world;    // solver convention, per frame
  std::vector<WorldPoint> points;
  std::vector<std::vector<int>> visible_points;  // per frame, point indices
  std::vector<SaliencyMap> saliency_maps;        // rendered per frame
};

namespace detail {

/// Camera-to-world pose at position `pos` yawed so the optical axis points
/// at `target` (both on the y = 0 plane; camera x right, y down, z forward).
inline Pose look_at_yaw(const Eigen::Vector3d& pos,
                        const Eigen::Vector3d& target) {
  const Eigen::Vector3d f = target - pos;
  const double yaw = std::atan2(f.x(), f.z());
  return Pose(Rotation::exp(Eigen::Vector3d(0.0, yaw, 0.0)), pos);
}

inline std::vector<Pose> make_camera_path(const SceneConfig& config) {
  const double standoff = 0.75 * config.point_box.norm() + 2.0;
  const Eigen::Vector3d center = Eigen::Vector3d::Zero();
  const int n = config.n_keyframes;
  std::vector<Pose> cam_to_world;
  cam_to_world.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double t = n > 1 ? static_cast<double>(k) / (n - 1) : 0.0;
    Eigen::Vector3d pos;
    switch (config.trajectory_shape) {
      case TrajectoryShape::kLine: {
        const double span = std::max(config.point_box.x(), 2.0);
        pos = {(t - 0.5) * span, 0.0, -standoff};
        break;
      }
      case TrajectoryShape::kArc: {
        const double phi = (t - 0.5) * (M_PI / 2.0);  // 90 degree sweep
        pos = {standoff * std::sin(phi), 0.0, -standoff * std::cos(phi)};
        break;
      }
      case TrajectoryShape::kLoop: {
        const double phi = 2.0 * M_PI * static_cast<double>(k) / n;
        pos = {standoff * std::sin(phi), 0.0, -standoff * std::cos(phi)};
        break;
      }
    }
    cam_to_world.push_back(look_at_yaw(pos, center));
  }
  return cam_to_world;
}

inline bool point_visible_in(const Pose& cam_from_world,
                             const Eigen::Vector3d& point,
                             const SceneConfig& config, double margin = 1.0) {
  const Eigen::Vector3d p = cam_from_world * point;
  if (!(p.z() > 0.1)) return false;
  const double u = config.intrinsics.fx * p.x() / p.z() + config.intrinsics.cx;
  const double v = config.intrinsics.fy * p.y() / p.z() + config.intrinsics.cy;
  return u >= margin && u <= config.image_width - 1 - margin && v >= margin &&
         v <= config.image_height - 1 - margin;
}

/// Renders the frame's saliency raster as the max of Gaussian splats, one
/// per visible point. Splats are centred on the nearest pixel so the peak
/// carries the point's saliency exactly (up to 8-bit rounding on save).
inline SaliencyMap render_saliency(const World& world, int frame) {
  const SceneConfig& config = world.config;
  std::vector<double> values(
      static_cast<std::size_t>(config.image_width) * config.image_height, 0.0);
  const double inv_two_sigma_sq = 1.0 / (2.0 * kSplatSigmaPx * kSplatSigmaPx);
  const int radius = static_cast<int>(4.0 * kSplatSigmaPx);

  for (int idx : world.visible_points[frame]) {
    const WorldPoint& wp = world.points[idx];
    const Eigen::Vector3d p = world.cam_from_world[frame] * wp.position;
    const double u = config.intrinsics.fx * p.x() / p.z() + config.intrinsics.cx;
    const double v = config.intrinsics.fy * p.y() / p.z() + config.intrinsics.cy;
    const int cx = static_cast<int>(std::llround(u));
    const int cy = static_cast<int>(std::llround(v));
    const double peak = 255.0 * wp.saliency;
    for (int y = std::max(0, cy - radius);
         y <= std::min(config.image_height - 1, cy + radius); ++y) {
      for (int x = std::max(0, cx - radius);
           x <= std::min(config.image_width - 1, cx + radius); ++x) {
        const double d2 = static_cast<double>(x - cx) * (x - cx) +
                          static_cast<double>(y - cy) * (y - cy);
        const double val = peak * std::exp(-d2 * inv_two_sigma_sq);
        double& cell = values[static_cast<std::size_t>(y) * config.image_width + x];
        if (val > cell) cell = val;
      }
    }
  }
  return SaliencyMap(config.image_width, config.image_height,
                     std::move(values));
}

}  // namespace detail

/// Deterministically generates the ground-truth world: a camera path of the
/// requested shape, landmarks uniform in the point box (resampled until each
/// is visible from at least two keyframes), per-point saliency uniform in
/// [0, 1], and one rendered saliency raster per frame.
inline World generate_world(const SceneConfig& config) {
  config.validate();
  World world;
  world.config = config;

  SplitMix64 rng(config.seed);

  const std::vector<Pose> cam_to_world = detail::make_camera_path(config);
  for (int k = 0; k < config.n_keyframes; ++k) {
    world.ground_truth.push_back(k * kFrameDt, cam_to_world[k]);
    world.cam_from_world.push_back(cam_to_world[k].inverse());
  }

  world.visible_points.assign(config.n_keyframes, {});
  const Eigen::Vector3d half = 0.5 * config.point_box;
  for (int i = 0; i < config.n_points; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      const Eigen::Vector3d pos(rng.uniform(-half.x(), half.x()),
                                rng.uniform(-half.y(), half.y()),
                                rng.uniform(-half.z(), half.z()));
      std::vector<int> seen_by;
      for (int k = 0; k < config.n_keyframes; ++k) {
        if (detail::point_visible_in(world.cam_from_world[k], pos, config)) {
          seen_by.push_back(k);
        }
      }
      if (seen_by.size() < 2) continue;
      WorldPoint wp;
      wp.id = i;
      wp.position = pos;
      wp.saliency = rng.uniform();
      world.points.push_back(wp);
      for (int k : seen_by) world.visible_points[k].push_back(i);
      placed = true;
    }
    if (!placed) {
      throw GenerationError(
          "generate_world: point " + std::to_string(i) +
          " not visible from two keyframes after 100 attempts; "
          "enlarge the box or add keyframes");
    }
  }

  world.saliency_maps.reserve(config.n_keyframes);
  for (int k = 0; k < config.n_keyframes; ++k) {
    world.saliency_maps.push_back(detail::render_saliency(world, k));
  }
  return world;
}

/// Simulated measurements plus their provenance: which points were turned
/// into dynamic objects and which observations were struck by outliers. The
/// per-observation ground-truth weight oracle is the originating point's
/// saliency (world.points[obs.point_id].saliency).
struct SimulatedObservations {
  std::vector<Observation> observations;  // frame-major, point-id order
  std::set<std::int64_t> dynamic_points;
  std::size_t outlier_count = 0;
};

/// Draws noisy observations for every visible (frame, point) pair.
/// Noise std follows sigma_for(saliency); low-saliency points can become
/// gross outliers and a fraction of them drift as dynamic objects while the
/// map keeps their static position (a static-world violation).
inline SimulatedObservations simulate_observations(const World& world,
                                                   const NoiseProfile& noise,
                                                   std::uint64_t seed,
                                                   CameraMode mode) {
  noise.validate();
  if (mode == CameraMode::kStereo && !(world.config.intrinsics.baseline > 0.0)) {
    throw ConfigError("scene.intrinsics.baseline: stereo needs baseline > 0");
  }

  SplitMix64 rng(seed);
  SimulatedObservations out;

  // Dynamic-object selection, one pass in point-id order.
  std::vector<Eigen::Vector3d> drift_dir(world.points.size(),
                                         Eigen::Vector3d::Zero());
  for (const WorldPoint& wp : world.points) {
    if (wp.saliency >= kLowSaliencyThreshold) continue;
    if (rng.uniform() < noise.dynamic_point_fraction) {
      out.dynamic_points.insert(wp.id);
      const double z = rng.uniform(-1.0, 1.0);
      const double phi = rng.uniform(0.0, 2.0 * M_PI);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      drift_dir[wp.id] = {r * std::cos(phi), r * std::sin(phi), z};
    }
  }

  const CameraIntrinsics& k = world.config.intrinsics;
  for (int frame = 0; frame < world.config.n_keyframes; ++frame) {
    for (int idx : world.visible_points[frame]) {
      const WorldPoint& wp = world.points[idx];
      Eigen::Vector3d pos = wp.position;
      if (out.dynamic_points.count(wp.id)) {
        pos += noise.dynamic_drift * frame * drift_dir[wp.id];
      }
      const Eigen::Vector3d p_cam = world.cam_from_world[frame] * pos;
      if (!(p_cam.z() > kDefaultZMin)) continue;  // drifted behind camera

      Observation obs;
      obs.frame_id = frame;
      obs.point_id = wp.id;
      obs.octave = 0;
      obs.weight = 1.0;
      obs.measurement = project(p_cam, k, mode);

      const double sigma = noise.sigma_for(wp.saliency);
      const int dim = measurement_dim(mode);
      for (int d = 0; d < dim; ++d) {
        obs.measurement(d) += sigma * rng.gaussian();
      }
      if (wp.saliency < kLowSaliencyThreshold &&
          rng.uniform() < noise.outlier_rate_low_saliency) {
        const double theta = rng.uniform(0.0, 2.0 * M_PI);
        const double du = noise.outlier_magnitude * std::cos(theta);
        const double dv = noise.outlier_magnitude * std::sin(theta);
        obs.measurement.x() += du;
        obs.measurement.y() += dv;
        if (mode == CameraMode::kStereo) obs.measurement.z() += du;
        ++out.outlier_count;
      }
      out.observations.push_back(obs);
    }
  }
  return out;
}

}  // namespace sba
