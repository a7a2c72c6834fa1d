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
#include <map>
#include <unordered_map>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "salient_ba/core/camera.hpp"
#include "salient_ba/core/pose.hpp"
#include "salient_ba/solver/residual.hpp"
#include "salient_ba/solver/types.hpp"

namespace sba {

struct BundleResult {
  std::vector<Keyframe> keyframes;  // all frames; only active ones moved
  std::vector<MapPoint> points;     // all points; only active ones moved
  SolveReport report;
};

namespace detail {

// Levenberg-Marquardt on a keyframe window with Schur elimination of the
// points: the landmark blocks V are inverted per point and folded into the
// reduced camera system S = U - W V^-1 W^T, which is solved densely. Fixed
// keyframes contribute residuals but receive no update; each iteration
// re-scales the information by the Huber derivative (IRLS).
class BundleSolver {
 public:
  BundleSolver(const LocalWindow& window, const Problem& problem,
               const NoiseModel& noise, const RobustKernel& kernel,
               const SolverConfig& config)
      : problem_(problem),
        noise_(noise),
        kernel_(kernel),
        config_(config),
        dim_(measurement_dim(problem.mode)) {
    noise_.validate();
    kernel_.validate();
    config_.validate();
    window_ = window;

    for (std::int64_t id : window_.active_keyframes) {
      if (window_.fixed_keyframes.count(id)) {
        throw InvalidArgumentError(
            "local window: active and fixed keyframe sets overlap at frame " +
            std::to_string(id));
      }
    }
    if (window_.active_keyframes.empty()) {
      throw InvalidArgumentError("local window: no active keyframes");
    }

    // Gauge handling: with no fixed keyframe the problem has a free global
    // transform, so deterministically pin the lowest-id active frame.
    if (window_.fixed_keyframes.empty()) {
      const std::int64_t anchor = *window_.active_keyframes.begin();
      window_.active_keyframes.erase(anchor);
      window_.fixed_keyframes.insert(anchor);
      report_.gauge_fixed_frame = anchor;
      if (window_.active_keyframes.empty()) {
        throw InvalidArgumentError(
            "local window: nothing left to optimize after gauge fixing");
      }
    }

    index_state();
    select_observations();
  }

  BundleResult solve() {
    double lambda = config_.initial_lambda;
    CostEval current = eval_cost(poses_, points_);
    report_.initial_cost = w_mean_ * current.cost;
    report_.cost_trace.push_back(report_.initial_cost);
    report_.reason = ConvergenceReason::kMaxIterations;

    for (int iter = 0; iter < config_.max_iterations; ++iter) {
      report_.iterations = iter + 1;
      linearize();

      bool accepted = false;
      while (true) {
        std::vector<Pose> cand_poses;
        std::vector<Eigen::Vector3d> cand_points;
        double step_norm = 0.0;
        if (try_step(lambda, cand_poses, cand_points, step_norm)) {
          const CostEval next = eval_cost(cand_poses, cand_points);
          if (next.valid >= current.valid && next.cost <= current.cost) {
            const double prev_cost = current.cost;
            poses_ = std::move(cand_poses);
            points_ = std::move(cand_points);
            current = next;
            lambda = std::max(lambda / config_.lambda_down, 1e-300);
            report_.cost_trace.push_back(w_mean_ * current.cost);
            accepted = true;
            if (step_norm < config_.step_tolerance) {
              report_.reason = ConvergenceReason::kStepTolerance;
            } else if (prev_cost - current.cost <=
                       config_.cost_tolerance * std::max(prev_cost, 1e-300)) {
              report_.reason = ConvergenceReason::kCostTolerance;
            }
            break;
          }
        }
        lambda *= config_.lambda_up;
        if (lambda > config_.max_lambda) break;
      }

      if (!accepted) {
        // Either no step lowered the cost, or the reduced system stayed
        // singular beyond what damping can regularize.
        report_.reason = reduced_system_failed_
                             ? ConvergenceReason::kRankDeficient
                             : ConvergenceReason::kNoAcceptedStep;
        break;
      }
      if (report_.reason == ConvergenceReason::kStepTolerance ||
          report_.reason == ConvergenceReason::kCostTolerance) {
        break;
      }
    }

    report_.final_cost = w_mean_ * current.cost;
    return package_result();
  }

 private:
  struct CostEval {
    double cost = 0.0;
    int valid = 0;
  };

  // ---- setup -------------------------------------------------------------

  void index_state() {
    for (const auto& kf : problem_.keyframes) {
      frame_pose_.emplace(kf.id, kf.pose);
    }
    for (std::int64_t id : window_.active_keyframes) {
      if (!frame_pose_.count(id)) {
        throw InvalidArgumentError("local window: unknown keyframe id " +
                                   std::to_string(id));
      }
      cam_index_.emplace(id, static_cast<int>(cam_ids_.size()));
      cam_ids_.push_back(id);
    }
    for (std::int64_t id : window_.fixed_keyframes) {
      if (!frame_pose_.count(id)) {
        throw InvalidArgumentError("local window: unknown keyframe id " +
                                   std::to_string(id));
      }
    }

    std::unordered_map<std::int64_t, Eigen::Vector3d> point_by_id;
    for (const auto& p : problem_.points) point_by_id.emplace(p.id, p.position);
    for (std::int64_t id : window_.active_points) {
      auto it = point_by_id.find(id);
      if (it == point_by_id.end()) {
        throw InvalidArgumentError("local window: unknown point id " +
                                   std::to_string(id));
      }
      point_index_.emplace(id, static_cast<int>(point_ids_.size()));
      point_ids_.push_back(id);
      points_.push_back(it->second);
    }
    poses_.reserve(cam_ids_.size());
    for (std::int64_t id : cam_ids_) poses_.push_back(frame_pose_.at(id));
  }

  void select_observations() {
    std::map<std::int64_t, std::set<std::int64_t>> frames_seeing_point;
    double weight_sum = 0.0;
    for (const auto& obs : problem_.observations) {
      const bool frame_active = cam_index_.count(obs.frame_id) > 0;
      const bool frame_fixed = window_.fixed_keyframes.count(obs.frame_id) > 0;
      if (!frame_active && !frame_fixed) continue;
      if (!point_index_.count(obs.point_id)) continue;
      if (!(obs.weight > 0.0)) {
        throw InvalidArgumentError("observation weight must be positive");
      }
      selected_.push_back(&obs);
      weight_sum += obs.weight;
      frames_seeing_point[obs.point_id].insert(obs.frame_id);
    }
    for (std::int64_t id : point_ids_) {
      const auto it = frames_seeing_point.find(id);
      if (it == frames_seeing_point.end() || it->second.size() < 2) {
        throw InvalidArgumentError(
            "local window: point " + std::to_string(id) +
            " is observed by fewer than two window keyframes");
      }
    }
    w_mean_ = selected_.empty() ? 1.0 : weight_sum / selected_.size();
  }

  // ---- evaluation --------------------------------------------------------

  const Pose& pose_of(const std::vector<Pose>& poses,
                      std::int64_t frame_id) const {
    const auto it = cam_index_.find(frame_id);
    if (it != cam_index_.end()) return poses[it->second];
    return frame_pose_.at(frame_id);
  }

  CostEval eval_cost(const std::vector<Pose>& poses,
                     const std::vector<Eigen::Vector3d>& points) const {
    CostEval ce;
    ResidualEval r;
    for (const Observation* obs : selected_) {
      const Pose& pose = pose_of(poses, obs->frame_id);
      const Eigen::Vector3d& x = points[point_index_.at(obs->point_id)];
      if (detail::try_residual_and_cost(*obs, pose, x, problem_.intrinsics,
                                        problem_.mode, noise_, kernel_,
                                        obs->weight / w_mean_, r)) {
        ce.cost += r.cost;
        ++ce.valid;
      }
    }
    return ce;
  }

  void linearize() {
    const int n_cams = static_cast<int>(cam_ids_.size());
    const int n_points = static_cast<int>(point_ids_.size());
    u_.assign(n_cams, Eigen::Matrix<double, 6, 6>::Zero());
    g_cam_.assign(n_cams, Eigen::Matrix<double, 6, 1>::Zero());
    v_.assign(n_points, Eigen::Matrix3d::Zero());
    g_point_.assign(n_points, Eigen::Vector3d::Zero());
    w_blocks_.assign(n_points, {});

    ResidualEval r;
    for (const Observation* obs : selected_) {
      const Pose& pose = pose_of(poses_, obs->frame_id);
      const int pi = point_index_.at(obs->point_id);
      const Eigen::Vector3d& x = points_[pi];
      if (!detail::try_residual_and_cost(*obs, pose, x, problem_.intrinsics,
                                         problem_.mode, noise_, kernel_,
                                         obs->weight / w_mean_, r)) {
        continue;
      }
      const ReprojectionJacobians jac =
          reprojection_jacobians(pose, x, problem_.intrinsics, problem_.mode);
      const double m = r.irls_scale * (obs->weight / w_mean_) *
                       noise_.inv_sigma_sq(obs->octave);
      const auto jx = jac.d_point.topRows(dim_);
      v_[pi].noalias() += m * jx.transpose() * jx;
      g_point_[pi].noalias() += m * jx.transpose() * r.residual.head(dim_);

      const auto cam_it = cam_index_.find(obs->frame_id);
      if (cam_it == cam_index_.end()) continue;  // fixed frame
      const int ci = cam_it->second;
      const auto jp = jac.d_pose.topRows(dim_);
      u_[ci].noalias() += m * jp.transpose() * jp;
      g_cam_[ci].noalias() += m * jp.transpose() * r.residual.head(dim_);

      auto& row = w_blocks_[pi];
      auto slot = std::find_if(row.begin(), row.end(),
                               [ci](const auto& e) { return e.first == ci; });
      if (slot == row.end()) {
        row.emplace_back(ci, m * jp.transpose() * jx);
      } else {
        slot->second.noalias() += m * jp.transpose() * jx;
      }
    }
  }

  /// One damped Schur step. Returns false when the reduced camera system
  /// cannot be solved at this damping level.
  bool try_step(double lambda, std::vector<Pose>& cand_poses,
                std::vector<Eigen::Vector3d>& cand_points, double& step_norm) {
    const int n_cams = static_cast<int>(cam_ids_.size());
    const int n_points = static_cast<int>(point_ids_.size());

    // Damped landmark blocks; a point with no valid observation this
    // iteration simply receives no update.
    std::vector<Eigen::Matrix3d> v_inv(n_points);
    std::vector<bool> point_ok(n_points, true);
    for (int p = 0; p < n_points; ++p) {
      Eigen::Matrix3d v = v_[p];
      for (int i = 0; i < 3; ++i) v(i, i) *= (1.0 + lambda);
      const double det = v.determinant();
      if (!(std::abs(det) > 1e-300) || !std::isfinite(det)) {
        point_ok[p] = false;
        v_inv[p].setZero();
        continue;
      }
      v_inv[p] = v.inverse();
      if (!v_inv[p].allFinite()) {
        point_ok[p] = false;
        v_inv[p].setZero();
      }
    }

    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(6 * n_cams, 6 * n_cams);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(6 * n_cams);
    for (int c = 0; c < n_cams; ++c) {
      Eigen::Matrix<double, 6, 6> u = u_[c];
      for (int i = 0; i < 6; ++i) u(i, i) *= (1.0 + lambda);
      s.block<6, 6>(6 * c, 6 * c) = u;
      rhs.segment<6>(6 * c) = -g_cam_[c];
    }
    for (int p = 0; p < n_points; ++p) {
      if (!point_ok[p]) continue;
      const auto& row = w_blocks_[p];
      for (const auto& [ci, w_i] : row) {
        const Eigen::Matrix<double, 6, 3> wv = w_i * v_inv[p];
        rhs.segment<6>(6 * ci).noalias() += wv * g_point_[p];
        for (const auto& [cj, w_j] : row) {
          s.block<6, 6>(6 * ci, 6 * cj).noalias() -= wv * w_j.transpose();
        }
      }
    }

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
    if (ldlt.info() != Eigen::Success) {
      reduced_system_failed_ = true;
      return false;
    }
    const Eigen::VectorXd delta_cam = ldlt.solve(rhs);
    // LDLT happily factors singular systems; verify the solve actually holds.
    if (!delta_cam.allFinite() ||
        (s * delta_cam - rhs).norm() > 1e-8 * (rhs.norm() + 1.0)) {
      reduced_system_failed_ = true;
      return false;
    }
    reduced_system_failed_ = false;

    cand_poses.resize(n_cams);
    double norm_sq = 0.0;
    for (int c = 0; c < n_cams; ++c) {
      const Twist xi = delta_cam.segment<6>(6 * c);
      norm_sq += xi.squaredNorm();
      cand_poses[c] = se3_exp(xi) * poses_[c];
    }

    cand_points = points_;
    for (int p = 0; p < n_points; ++p) {
      if (!point_ok[p]) continue;
      Eigen::Vector3d back = -g_point_[p];
      for (const auto& [ci, w_i] : w_blocks_[p]) {
        back.noalias() -= w_i.transpose() * delta_cam.segment<6>(6 * ci);
      }
      const Eigen::Vector3d delta_point = v_inv[p] * back;
      if (!delta_point.allFinite()) return false;
      norm_sq += delta_point.squaredNorm();
      cand_points[p] += delta_point;
    }
    step_norm = std::sqrt(norm_sq);
    return true;
  }

  BundleResult package_result() {
    BundleResult out;
    out.keyframes.reserve(problem_.keyframes.size());
    for (const auto& kf : problem_.keyframes) {
      const auto it = cam_index_.find(kf.id);
      out.keyframes.push_back(
          {kf.id, it == cam_index_.end() ? kf.pose : poses_[it->second]});
    }
    out.points.reserve(problem_.points.size());
    for (const auto& p : problem_.points) {
      const auto it = point_index_.find(p.id);
      out.points.push_back(
          {p.id, it == point_index_.end() ? p.position : points_[it->second]});
    }
    out.report = report_;
    return out;
  }

  const Problem& problem_;
  NoiseModel noise_;
  RobustKernel kernel_;
  SolverConfig config_;
  int dim_;
  LocalWindow window_;
  SolveReport report_;

  std::unordered_map<std::int64_t, Pose> frame_pose_;  // initial, all frames
  std::unordered_map<std::int64_t, int> cam_index_;
  std::vector<std::int64_t> cam_ids_;
  std::unordered_map<std::int64_t, int> point_index_;
  std::vector<std::int64_t> point_ids_;
  std::vector<const Observation*> selected_;
  double w_mean_ = 1.0;

  std::vector<Pose> poses_;                  // active, by cam index
  std::vector<Eigen::Vector3d> points_;      // active, by point index

  std::vector<Eigen::Matrix<double, 6, 6>> u_;
  std::vector<Eigen::Matrix<double, 6, 1>> g_cam_;
  std::vector<Eigen::Matrix3d> v_;
  std::vector<Eigen::Vector3d> g_point_;
  std::vector<std::vector<std::pair<int, Eigen::Matrix<double, 6, 3>>>>
      w_blocks_;
  bool reduced_system_failed_ = false;
};

}  // namespace detail

/// Local bundle adjustment over a keyframe window: jointly refines the
/// window's active keyframes and points while fixed keyframes anchor the
/// gauge. Returns the full keyframe/point state with only window members
/// updated.
inline BundleResult solve_local_ba(const LocalWindow& window,
                                   const Problem& problem,
                                   const NoiseModel& noise,
                                   const RobustKernel& kernel,
                                   const SolverConfig& config = {}) {
  detail::BundleSolver solver(window, problem, noise, kernel, config);
  return solver.solve();
}

/// Full bundle adjustment: local BA with every keyframe active except a
/// single anchor, and every point active. The anchor pose is returned
/// bit-identical.
inline BundleResult solve_full_ba(const Problem& problem,
                                  std::int64_t anchor_frame,
                                  const NoiseModel& noise,
                                  const RobustKernel& kernel,
                                  const SolverConfig& config = {}) {
  LocalWindow window;
  bool found = false;
  for (const auto& kf : problem.keyframes) {
    if (kf.id == anchor_frame) {
      found = true;
      window.fixed_keyframes.insert(kf.id);
    } else {
      window.active_keyframes.insert(kf.id);
    }
  }
  if (!found) {
    throw InvalidArgumentError("solve_full_ba: unknown anchor frame " +
                               std::to_string(anchor_frame));
  }
  for (const auto& p : problem.points) window.active_points.insert(p.id);
  return solve_local_ba(window, problem, noise, kernel, config);
}

}  // namespace sba
