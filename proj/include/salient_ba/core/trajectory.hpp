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

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "salient_ba/core/pose.hpp"
#include "salient_ba/error.hpp"

namespace sba {

/// One trajectory sample.
///
/// CONVENTION: trajectory poses are camera-to-world (the usual trajectory
/// and TUM-file direction): pose.translation() is the camera position in
/// the world frame. The solver's camera-from-world poses must be inverted
/// before they enter a Trajectory.
struct TimedPose {
  double timestamp = 0.0;  // seconds
  Pose pose;               // camera-to-world
};

/// Timestamp-ordered pose sequence. Timestamps must be strictly increasing.
class Trajectory {
 public:
  Trajectory() = default;

  explicit Trajectory(std::vector<TimedPose> samples)
      : samples_(std::move(samples)) {
    for (std::size_t i = 1; i < samples_.size(); ++i) {
      if (!(samples_[i].timestamp > samples_[i - 1].timestamp)) {
        throw InvalidArgumentError(
            "trajectory: timestamps must be strictly increasing");
      }
    }
  }

  void push_back(double timestamp, const Pose& pose) {
    if (!samples_.empty() && !(timestamp > samples_.back().timestamp)) {
      throw InvalidArgumentError(
          "trajectory: timestamps must be strictly increasing");
    }
    samples_.push_back({timestamp, pose});
  }

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const TimedPose& operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<TimedPose>& samples() const { return samples_; }

  std::vector<Eigen::Vector3d> positions() const {
    std::vector<Eigen::Vector3d> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.pose.translation());
    return out;
  }

 private:
  std::vector<TimedPose> samples_;
};

}  // namespace sba
