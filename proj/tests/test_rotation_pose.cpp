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

#include "salient_ba/core/pose.hpp"
#include "salient_ba/core/rotation.hpp"
#include "salient_ba/sim/rng.hpp"

using namespace sba;

namespace {

Twist random_twist(SplitMix64& rng, double max_angle, double max_trans) {
  Eigen::Vector3d axis(rng.uniform(-1, 1), rng.uniform(-1, 1),
                       rng.uniform(-1, 1));
  if (axis.norm() < 1e-6) axis = Eigen::Vector3d::UnitX();
  axis.normalize();
  Twist xi;
  xi.head<3>() = axis * rng.uniform(0.0, max_angle);
  xi.tail<3>() = Eigen::Vector3d(rng.uniform(-max_trans, max_trans),
                                 rng.uniform(-max_trans, max_trans),
                                 rng.uniform(-max_trans, max_trans));
  return xi;
}

}  // namespace

TEST_CASE("se3_exp of the zero twist is the identity") {
  const Pose p = se3_exp(Twist::Zero());
  CHECK(p.rotation().angle() == 0.0);
  CHECK(p.translation().norm() == 0.0);
}

TEST_CASE("se3_exp of a pure z-rotation matches the closed form") {
  Twist xi = Twist::Zero();
  xi(2) = M_PI / 2.0;
  const Pose p = se3_exp(xi);
  CHECK(p.translation().norm() < 1e-15);
  // 90 degrees about z maps x to y.
  const Eigen::Vector3d rotated = p * Eigen::Vector3d::UnitX();
  CHECK((rotated - Eigen::Vector3d::UnitY()).norm() < 1e-12);
  CHECK(p.rotation().angle() == Catch::Approx(M_PI / 2.0).margin(1e-12));
}

TEST_CASE("se3_log of the identity is the zero twist") {
  CHECK(se3_log(Pose::identity()).norm() == 0.0);
}

TEST_CASE("se3_log recovers a 90 degree z-rotation") {
  Twist xi = Twist::Zero();
  xi(2) = M_PI / 2.0;
  const Twist back = se3_log(se3_exp(xi));
  CHECK((back - xi).norm() < 1e-12);
}

TEST_CASE("exp/log round-trip on 100 random twists") {
  SplitMix64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const Twist xi = random_twist(rng, M_PI - 1e-3, 5.0);
    const Twist back = se3_log(se3_exp(xi));
    CHECK((back - xi).norm() < 1e-9);
  }
}

TEST_CASE("exp/log round-trip near the small-angle branch") {
  for (double angle : {0.0, 1e-12, 1e-10, 1e-9, 1e-8, 1e-6, 1e-4}) {
    Twist xi;
    xi << angle, 0.0, 0.0, 0.3, -0.2, 0.9;
    const Twist back = se3_log(se3_exp(xi));
    CHECK((back - xi).norm() < 1e-12);
  }
}

TEST_CASE("se3_log throws near pi") {
  const Rotation r = Rotation::exp(Eigen::Vector3d(M_PI - 1e-9, 0, 0));
  CHECK_THROWS_AS(se3_log(Pose(r, Eigen::Vector3d::Zero())),
                  DegenerateGeometryError);
}

TEST_CASE("compose with inverse yields identity") {
  SplitMix64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const Pose p = se3_exp(random_twist(rng, 3.0, 10.0));
    const Pose e = p * p.inverse();
    CHECK(e.translation().norm() < 1e-10);
    CHECK(e.rotation().angle() < 1e-10);
  }
}

TEST_CASE("composition is associative") {
  SplitMix64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Pose a = se3_exp(random_twist(rng, 2.0, 3.0));
    const Pose b = se3_exp(random_twist(rng, 2.0, 3.0));
    const Pose c = se3_exp(random_twist(rng, 2.0, 3.0));
    const Pose lhs = (a * b) * c;
    const Pose rhs = a * (b * c);
    CHECK(lhs.is_approx(rhs, 1e-12, 1e-10));
  }
}

TEST_CASE("quaternion stays normalized over long composition chains") {
  SplitMix64 rng(13);
  Rotation q;
  const Rotation step = Rotation::exp(Eigen::Vector3d(0.011, -0.007, 0.005));
  for (int i = 0; i < 10000; ++i) q = q * step;
  CHECK(std::abs(q.quaternion().norm() - 1.0) < 1e-9);
}

TEST_CASE("pose action matches homogeneous matrix action") {
  SplitMix64 rng(17);
  for (int i = 0; i < 20; ++i) {
    const Pose p = se3_exp(random_twist(rng, 2.5, 4.0));
    const Eigen::Vector3d x(rng.uniform(-5, 5), rng.uniform(-5, 5),
                            rng.uniform(-5, 5));
    const Eigen::Vector4d xh = p.matrix() * x.homogeneous();
    CHECK((p * x - xh.head<3>()).norm() < 1e-12);
  }
}

TEST_CASE("sim transform with scale 1 acts like a pose") {
  SplitMix64 rng(19);
  const Pose p = se3_exp(random_twist(rng, 1.0, 2.0));
  const SimTransform s(p.rotation(), p.translation(), 1.0);
  const Eigen::Vector3d x(0.4, -1.0, 2.5);
  CHECK((s * x - p * x).norm() < 1e-15);
}

TEST_CASE("sim transform rejects non-positive scale") {
  CHECK_THROWS_AS(SimTransform(Rotation(), Eigen::Vector3d::Zero(), 0.0),
                  InvalidArgumentError);
  CHECK_THROWS_AS(SimTransform(Rotation(), Eigen::Vector3d::Zero(), -2.0),
                  InvalidArgumentError);
}
