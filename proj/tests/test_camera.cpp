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
#include <catch2/catch_amalgamated.hpp>

#include "oracles/finite_diff.hpp"
#include "salient_ba/core/camera.hpp"
#include "salient_ba/sim/rng.hpp"

using namespace sba;

TEST_CASE("project_mono on-axis point") {
  const CameraIntrinsics k(1, 1, 0, 0);
  const Eigen::Vector2d px = project_mono({0, 0, 1}, k);
  CHECK(px.x() == 0.0);
  CHECK(px.y() == 0.0);
}

TEST_CASE("project_mono direct substitution") {
  const CameraIntrinsics k(2, 2, 10, 5);
  const Eigen::Vector2d px = project_mono({1, 2, 4}, k);
  CHECK(px.x() == Catch::Approx(10.5).margin(1e-15));
  CHECK(px.y() == Catch::Approx(6.0).margin(1e-15));
}

TEST_CASE("project_mono rejects points behind the camera") {
  const CameraIntrinsics k(2, 2, 10, 5);
  CHECK_THROWS_AS(project_mono({1, 2, -1}, k), BehindCameraError);
  CHECK_THROWS_AS(project_mono({1, 2, 0}, k), BehindCameraError);
  CHECK_THROWS_AS(project_mono({1, 2, 1e-7}, k), BehindCameraError);
}

TEST_CASE("project_stereo direct substitution and disparity") {
  const CameraIntrinsics k(2, 2, 10, 5, 0.5);
  const Eigen::Vector3d px = project_stereo({1, 2, 4}, k);
  CHECK(px.x() == Catch::Approx(10.5).margin(1e-15));
  CHECK(px.y() == Catch::Approx(6.0).margin(1e-15));
  CHECK(px.z() == Catch::Approx(10.25).margin(1e-15));
  CHECK(px.x() - px.z() == Catch::Approx(0.25).margin(1e-15));  // fx*b/z
}

TEST_CASE("project_stereo disparity vanishes at far depth") {
  const CameraIntrinsics k(1, 1, 0, 0, 1.0);
  const Eigen::Vector3d px = project_stereo({0, 0, 1e6}, k);
  CHECK(px.x() - px.z() == Catch::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("project_stereo requires a baseline") {
  const CameraIntrinsics k(2, 2, 10, 5, 0.0);
  CHECK_THROWS_AS(project_stereo({1, 2, 4}, k), InvalidArgumentError);
}

TEST_CASE("stereo disparity is positive for any point in front") {
  SplitMix64 rng(5);
  const CameraIntrinsics k(450, 450, 320, 240, 0.5);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d p(rng.uniform(-10, 10), rng.uniform(-10, 10),
                            rng.uniform(0.2, 50.0));
    const Eigen::Vector3d px = project_stereo(p, k);
    CHECK(px.x() - px.z() > 0.0);
  }
}

TEST_CASE("intrinsics invariants") {
  CHECK_THROWS_AS(CameraIntrinsics(0, 1, 0, 0), InvalidArgumentError);
  CHECK_THROWS_AS(CameraIntrinsics(1, -1, 0, 0), InvalidArgumentError);
  CHECK_THROWS_AS(CameraIntrinsics(1, 1, 0, 0, -0.5), InvalidArgumentError);
}

namespace {

Pose random_viewing_pose(SplitMix64& rng) {
  // Camera near the origin looking roughly down +z, with the point cloud at
  // z in [2, 10]; keeps every draw well conditioned.
  const Eigen::Vector3d axis =
      Eigen::Vector3d(rng.uniform(-1, 1), rng.uniform(-1, 1),
                      rng.uniform(-1, 1))
          .normalized();
  Twist xi;
  xi.head<3>() = axis * rng.uniform(0.0, 0.3);
  xi.tail<3>() = Eigen::Vector3d(rng.uniform(-0.5, 0.5),
                                 rng.uniform(-0.5, 0.5),
                                 rng.uniform(-0.5, 0.5));
  return se3_exp(xi);
}

}  // namespace

TEST_CASE("analytic jacobians match central finite differences") {
  SplitMix64 rng(123);
  const CameraIntrinsics k(450, 420, 320, 240, 0.5);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const CameraMode mode = (i % 2 == 0) ? CameraMode::kMono
                                         : CameraMode::kStereo;
    const Pose pose = random_viewing_pose(rng);
    const Eigen::Vector3d point(rng.uniform(-3, 3), rng.uniform(-3, 3),
                                rng.uniform(2.0, 10.0));
    if (!((pose * point).z() > 0.5)) continue;
    const Eigen::Vector3d meas =
        project(pose * point, k, mode) +
        Eigen::Vector3d(rng.uniform(-2, 2), rng.uniform(-2, 2),
                        mode == CameraMode::kStereo ? rng.uniform(-2, 2) : 0);

    const ReprojectionJacobians jac =
        reprojection_jacobians(pose, point, k, mode);
    const test::FiniteDiffJacobians fd =
        test::finite_diff_jacobians(pose, point, meas, k, mode);

    const int dim = measurement_dim(mode);
    const double scale_pose = jac.d_pose.topRows(dim).norm();
    const double scale_point = jac.d_point.topRows(dim).norm();
    CHECK((jac.d_pose.topRows(dim) - fd.d_pose.topRows(dim)).norm() <
          1e-5 * std::max(scale_pose, 1.0));
    CHECK((jac.d_point.topRows(dim) - fd.d_point.topRows(dim)).norm() <
          1e-5 * std::max(scale_point, 1.0));
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("on-axis point under axial translation has no cross terms") {
  const CameraIntrinsics k(400, 400, 0, 0);
  const ReprojectionJacobians jac = reprojection_jacobians(
      Pose::identity(), Eigen::Vector3d(0, 0, 5), k, CameraMode::kMono);
  // d_point for an on-axis point: du/dy = 0, dv/dx = 0, du/dz = dv/dz = 0.
  CHECK(jac.d_point(0, 1) == 0.0);
  CHECK(jac.d_point(1, 0) == 0.0);
  CHECK(jac.d_point(0, 2) == 0.0);
  CHECK(jac.d_point(1, 2) == 0.0);
}

TEST_CASE("stereo u_right row equals u_left row at the shifted point") {
  // The u_right residual equals the u_left residual of the same camera with
  // the point shifted by the baseline along camera x, so the rows agree
  // after that substitution.
  SplitMix64 rng(9);
  const CameraIntrinsics k(450, 420, 320, 240, 0.5);
  for (int i = 0; i < 20; ++i) {
    const Pose pose = random_viewing_pose(rng);
    const Eigen::Vector3d point(rng.uniform(-3, 3), rng.uniform(-3, 3),
                                rng.uniform(2.0, 10.0));
    const Eigen::Vector3d p_cam = pose * point;
    if (!(p_cam.z() > 0.5)) continue;

    const ReprojectionJacobians stereo =
        reprojection_jacobians(pose, point, k, CameraMode::kStereo);
    // Shift the camera-frame point by -b along x via a shifted world point.
    const Eigen::Vector3d shifted_world =
        pose.inverse() * (p_cam - Eigen::Vector3d(k.baseline, 0, 0));
    const ReprojectionJacobians mono =
        reprojection_jacobians(pose, shifted_world, k, CameraMode::kMono);
    // The pose rows differ only through the point position entering the
    // perturbation lever arm; compare via the projection-derivative chain
    // instead: u_right row of d_point equals mono u row times the same R.
    CHECK((stereo.d_point.row(2) - mono.d_point.row(0)).norm() < 1e-12);
  }
}

TEST_CASE("reprojection_jacobians rejects points behind the camera") {
  const CameraIntrinsics k(450, 420, 320, 240);
  CHECK_THROWS_AS(reprojection_jacobians(Pose::identity(),
                                         Eigen::Vector3d(0, 0, -1), k,
                                         CameraMode::kMono),
                  BehindCameraError);
}
