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

#include "salient_ba/saliency/fusion.hpp"
#include "salient_ba/saliency/raster.hpp"
#include "salient_ba/saliency/weight.hpp"
#include "salient_ba/sim/rng.hpp"

using namespace sba;

TEST_CASE("fuse_saliency hand example: differing depths") {
  // S = [100, 200], D = [2 m, 1 m], a=1, b=0:
  // S_hat = [50, 200] -> min-max to [0, 255].
  const SaliencyMap s(2, 1, {100.0, 200.0});
  const DepthMap d = DepthMap::from_meters(2, 1, {2.0, 1.0});
  FusionParams params;
  const FusionResult r = fuse_saliency_full(s, d, params);
  CHECK(r.pre_min == Catch::Approx(50.0).margin(1e-12));
  CHECK(r.pre_max == Catch::Approx(200.0).margin(1e-12));
  CHECK(r.map.at(0, 0) == 0.0);
  CHECK(r.map.at(1, 0) == 255.0);
}

TEST_CASE("fuse_saliency hand example: constant after fusion") {
  // S = [100, 200], D = [1 m, 2 m] -> S_hat = [100, 100]: degenerate
  // normalization yields uniform 255.
  const SaliencyMap s(2, 1, {100.0, 200.0});
  const DepthMap d = DepthMap::from_meters(2, 1, {1.0, 2.0});
  const SaliencyMap fused = fuse_saliency(s, d, FusionParams{});
  CHECK(fused.at(0, 0) == 255.0);
  CHECK(fused.at(1, 0) == 255.0);
}

TEST_CASE("fuse_saliency: constant saliency and depth gives uniform 255") {
  const SaliencyMap s(4, 3, 42.0);
  const DepthMap d = DepthMap::from_meters(4, 3, std::vector<double>(12, 2.5));
  const SaliencyMap fused = fuse_saliency(s, d, FusionParams{});
  for (double v : fused.values()) CHECK(v == 255.0);
}

TEST_CASE("fuse_saliency: invalid depths clamp to the floor") {
  // D = 0 uses depth_floor, so a zero-depth pixel amplifies most.
  const SaliencyMap s(2, 1, {100.0, 100.0});
  const DepthMap d = DepthMap::from_meters(2, 1, {0.0, 1.0});
  FusionParams params;
  params.depth_floor = 0.1;
  const FusionResult r = fuse_saliency_full(s, d, params);
  CHECK(r.pre_max == Catch::Approx(1000.0).margin(1e-12));
  CHECK(r.map.at(0, 0) == 255.0);
  CHECK(r.map.at(1, 0) == 0.0);
}

TEST_CASE("fuse_saliency rejects mismatched dimensions") {
  const SaliencyMap s(2, 2, 10.0);
  const DepthMap d(3, 2);
  CHECK_THROWS_AS(fuse_saliency(s, d, FusionParams{}),
                  DimensionMismatchError);
}

TEST_CASE("fuse_saliency output stays in range and preserves ordering") {
  SplitMix64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const int w = 5, h = 4;
    std::vector<double> sv(w * h), dv(w * h);
    for (auto& v : sv) v = rng.uniform(0.0, 255.0);
    for (auto& v : dv) v = rng.uniform(0.0, 10.0);
    const SaliencyMap s(w, h, sv);
    const DepthMap d = DepthMap::from_meters(w, h, dv);
    FusionParams params;
    params.a_fuse = rng.uniform(0.2, 3.0);
    params.b_fuse = rng.uniform(-1.0, 1.0);
    const SaliencyMap fused = fuse_saliency(s, d, params);

    for (double v : fused.values()) {
      CHECK(v >= 0.0);
      CHECK(v <= 255.0);
    }
  }
}

TEST_CASE("fuse_saliency preserves pre-normalization ordering") {
  // Pixels sharing a depth must order by saliency after fusion; pixels
  // sharing a saliency must order by closeness. The min-max rescale is
  // monotone, so the pre-normalization ordering carries through.
  SplitMix64 rng(39);
  const int w = 6, h = 1;
  // Two depth groups and two saliency groups built into one row:
  //   [s=50 d=2] [s=90 d=2] [s=200 d=2] | [s=120 d=4] [s=120 d=1] [s=0 d=3]
  const SaliencyMap s(w, h, {50, 90, 200, 120, 120, 0});
  const DepthMap d = DepthMap::from_meters(w, h, {2, 2, 2, 4, 1, 3});
  for (int rep = 0; rep < 10; ++rep) {
    FusionParams params;
    params.a_fuse = rng.uniform(0.2, 3.0);
    params.b_fuse = rng.uniform(-1.0, 1.0);
    const SaliencyMap fused = fuse_saliency(s, d, params);
    // Same depth, increasing saliency.
    CHECK(fused.at(0, 0) <= fused.at(1, 0));
    CHECK(fused.at(1, 0) <= fused.at(2, 0));
    // Same saliency, smaller depth wins.
    CHECK(fused.at(4, 0) >= fused.at(3, 0));
  }
}

TEST_CASE("sample_saliency is exact at grid nodes") {
  const SaliencyMap m(3, 2, {10, 20, 30, 40, 50, 60});
  CHECK(sample_saliency(m, 0, 0) == 10.0);
  CHECK(sample_saliency(m, 2, 0) == 30.0);
  CHECK(sample_saliency(m, 1, 1) == 50.0);
  CHECK(sample_saliency(m, 2, 1) == 60.0);
}

TEST_CASE("sample_saliency midpoint between 0 and 255") {
  const SaliencyMap m(2, 1, {0.0, 255.0});
  CHECK(sample_saliency(m, 0.5, 0.0) == Catch::Approx(127.5).margin(1e-12));
}

TEST_CASE("sample_saliency of a constant field is constant") {
  const SaliencyMap m(7, 5, 42.0);
  SplitMix64 rng(33);
  for (int i = 0; i < 50; ++i) {
    const double u = rng.uniform(0.0, 6.0);
    const double v = rng.uniform(0.0, 4.0);
    CHECK(sample_saliency(m, u, v) == Catch::Approx(42.0).margin(1e-12));
  }
}

TEST_CASE("sample_saliency is bounded by its four neighbors") {
  SplitMix64 rng(37);
  std::vector<double> vals(12);
  for (auto& v : vals) v = rng.uniform(0.0, 255.0);
  const SaliencyMap m(4, 3, vals);
  for (int i = 0; i < 100; ++i) {
    const double u = rng.uniform(0.0, 3.0);
    const double v = rng.uniform(0.0, 2.0);
    const int x0 = std::min(static_cast<int>(u), 2);
    const int y0 = std::min(static_cast<int>(v), 1);
    double lo = 1e9, hi = -1e9;
    for (int dy = 0; dy <= 1; ++dy) {
      for (int dx = 0; dx <= 1; ++dx) {
        lo = std::min(lo, m.at(x0 + dx, y0 + dy));
        hi = std::max(hi, m.at(x0 + dx, y0 + dy));
      }
    }
    const double s = sample_saliency(m, u, v);
    CHECK(s >= lo - 1e-12);
    CHECK(s <= hi + 1e-12);
  }
}

TEST_CASE("sample_saliency rejects out-of-bounds coordinates") {
  const SaliencyMap m(3, 3, 1.0);
  CHECK_THROWS_AS(sample_saliency(m, -0.1, 0), OutOfBoundsError);
  CHECK_THROWS_AS(sample_saliency(m, 0, 2.01), OutOfBoundsError);
}

TEST_CASE("salient_weight examples") {
  WeightParams p;  // a_w = 1, b_w = 0.1
  CHECK(salient_weight(0.0, p) == Catch::Approx(0.1).margin(1e-15));
  CHECK(salient_weight(255.0, p) == Catch::Approx(1.1).margin(1e-15));

  WeightParams p2;
  p2.a_w = 2.0;
  p2.b_w = 0.5;
  CHECK(salient_weight(127.5, p2) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("salient_weight raw scale reading") {
  WeightParams p;
  p.a_w = 1.0;
  p.b_w = 0.1;
  p.raw_scale = true;
  CHECK(salient_weight(255.0, p) == Catch::Approx(255.0 * 255.0 + 0.1));
}

TEST_CASE("salient_weight is positive and non-decreasing") {
  WeightParams p;
  p.a_w = 0.7;
  p.b_w = 0.05;
  double prev = 0.0;
  for (int s = 0; s <= 255; ++s) {
    const double w = salient_weight(s, p);
    CHECK(w > 0.0);
    CHECK(w >= prev);
    prev = w;
  }
  CHECK(salient_weight(255.0, p) == Catch::Approx(p.a_w + p.b_w));
}

TEST_CASE("weight params validation") {
  WeightParams bad;
  bad.b_w = 0.0;
  CHECK_THROWS_AS(salient_weight(10.0, bad), InvalidArgumentError);
  bad.b_w = 0.1;
  bad.a_w = -1.0;
  CHECK_THROWS_AS(salient_weight(10.0, bad), InvalidArgumentError);
}

TEST_CASE("raster type invariants") {
  CHECK_THROWS_AS(SaliencyMap(2, 2, {0.0, 1.0, 2.0}), DimensionMismatchError);
  CHECK_THROWS_AS(SaliencyMap(2, 1, {0.0, 256.0}), InvalidArgumentError);
  CHECK_THROWS_AS(SaliencyMap(2, 1, {-1.0, 0.0}), InvalidArgumentError);
  CHECK_THROWS_AS(DepthMap::from_meters(1, 1, {-0.5}), InvalidArgumentError);
  CHECK_THROWS_AS(DepthMap(0, 3), InvalidArgumentError);
}
