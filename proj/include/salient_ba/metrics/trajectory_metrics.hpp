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
#include <cmath>
#include <string>
#include <vector>

#include "salient_ba/core/alignment.hpp"
#include "salient_ba/core/trajectory.hpp"
#include "salient_ba/error.hpp"
#include "salient_ba/metrics/stats.hpp"

namespace sba {

struct MatchedPair {
  std::size_t est_index = 0;
  std::size_t gt_index = 0;
  double dt = 0.0;
};

/// Greedy nearest-timestamp association: candidate pairs within max_dt are
/// taken in order of increasing |dt|, each pose matched at most once.
inline std::vector<MatchedPair> associate(const Trajectory& est,
                                          const Trajectory& gt,
                                          double max_dt = 0.02) {
  if (est.empty() || gt.empty()) {
    throw InsufficientDataError("associate: empty trajectory");
  }
  struct Candidate {
    double abs_dt;
    std::size_t ei, gi;
  };
  std::vector<Candidate> candidates;
  // Both trajectories are time-sorted, so a sliding lower bound keeps this
  // near-linear.
  std::size_t lo = 0;
  for (std::size_t ei = 0; ei < est.size(); ++ei) {
    const double t = est[ei].timestamp;
    while (lo < gt.size() && gt[lo].timestamp < t - max_dt) ++lo;
    for (std::size_t gi = lo; gi < gt.size() && gt[gi].timestamp <= t + max_dt;
         ++gi) {
      candidates.push_back({std::abs(gt[gi].timestamp - t), ei, gi});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.abs_dt < b.abs_dt;
                   });

  std::vector<bool> est_used(est.size(), false), gt_used(gt.size(), false);
  std::vector<MatchedPair> pairs;
  for (const auto& c : candidates) {
    if (est_used[c.ei] || gt_used[c.gi]) continue;
    est_used[c.ei] = true;
    gt_used[c.gi] = true;
    pairs.push_back({c.ei, c.gi, c.abs_dt});
  }
  if (pairs.empty()) {
    throw InsufficientDataError("associate: no matches within max_dt");
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const MatchedPair& a, const MatchedPair& b) {
              return a.est_index < b.est_index;
            });
  return pairs;
}

enum class Alignment { kNone, kSe3, kSim3 };

inline std::string to_string(Alignment a) {
  switch (a) {
    case Alignment::kNone: return "none";
    case Alignment::kSe3: return "se3";
    case Alignment::kSim3: return "sim3";
  }
  return "unknown";
}

inline Alignment alignment_from_string(const std::string& s) {
  if (s == "none") return Alignment::kNone;
  if (s == "se3") return Alignment::kSe3;
  if (s == "sim3") return Alignment::kSim3;
  throw ConfigError("align: unknown value '" + s +
                    "' (expected none|se3|sim3)");
}

/// Absolute trajectory error: statistics of per-pose position error after
/// aligning est to gt (none, rigid, or similarity per the mode).
inline ErrorStats ate(const Trajectory& est, const Trajectory& gt,
                      Alignment alignment, double max_dt = 0.02) {
  const std::vector<MatchedPair> pairs = associate(est, gt, max_dt);

  std::vector<Eigen::Vector3d> est_pos, gt_pos;
  est_pos.reserve(pairs.size());
  gt_pos.reserve(pairs.size());
  for (const auto& pr : pairs) {
    est_pos.push_back(est[pr.est_index].pose.translation());
    gt_pos.push_back(gt[pr.gt_index].pose.translation());
  }

  SimTransform transform;  // identity for Alignment::kNone
  if (alignment != Alignment::kNone) {
    if (pairs.size() < 3) {
      throw InsufficientDataError("ate: alignment needs >= 3 matched pairs");
    }
    transform = umeyama_align(est_pos, gt_pos, alignment == Alignment::kSim3);
  }

  std::vector<double> errors;
  errors.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    errors.push_back((gt_pos[i] - transform * est_pos[i]).norm());
  }
  return ErrorStats::from_errors(errors);
}

/// Relative pose error over a delta of whole frames:
/// E_i = (gt_i^-1 gt_{i+d})^-1 (est_i^-1 est_{i+d}); statistics of the
/// translation norm of E_i. With per_meter set, each error is divided by the
/// ground-truth segment length (segments shorter than 1 mm are skipped).
inline ErrorStats rpe(const Trajectory& est, const Trajectory& gt,
                      std::size_t delta = 1, double max_dt = 0.02,
                      bool per_meter = false) {
  if (delta < 1) throw InvalidArgumentError("rpe: delta must be >= 1");
  const std::vector<MatchedPair> pairs = associate(est, gt, max_dt);
  if (pairs.size() < delta + 1) {
    throw InsufficientDataError("rpe: needs at least delta+1 matched pairs");
  }

  std::vector<double> errors;
  errors.reserve(pairs.size() - delta);
  for (std::size_t i = 0; i + delta < pairs.size(); ++i) {
    const Pose& gt_a = gt[pairs[i].gt_index].pose;
    const Pose& gt_b = gt[pairs[i + delta].gt_index].pose;
    const Pose& est_a = est[pairs[i].est_index].pose;
    const Pose& est_b = est[pairs[i + delta].est_index].pose;
    const Pose rel_gt = gt_a.inverse() * gt_b;
    const Pose rel_est = est_a.inverse() * est_b;
    const Pose error = rel_gt.inverse() * rel_est;
    double e = error.translation().norm();
    if (per_meter) {
      const double segment = rel_gt.translation().norm();
      if (segment < 1e-3) continue;
      e /= segment;
    }
    errors.push_back(e);
  }
  if (errors.empty()) {
    throw InsufficientDataError("rpe: no usable segments");
  }
  return ErrorStats::from_errors(errors);
}

}  // namespace sba
