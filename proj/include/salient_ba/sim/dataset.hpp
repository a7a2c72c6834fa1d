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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "salient_ba/error.hpp"
#include "salient_ba/io/pgm.hpp"
#include "salient_ba/io/snapshot.hpp"
#include "salient_ba/io/tum.hpp"
#include "salient_ba/sim/world.hpp"

namespace sba {

// On-disk dataset layout:
//   groundtruth.tum            camera-to-world trajectory, one line per frame
//   world.txt                  intrinsics, image size, landmarks + saliency
//   saliency/frame_NNNNNN.pgm  rendered per-frame saliency rasters
//   problems/problem_NN.txt    one bundle problem snapshot per run
// Problem snapshots carry the ground-truth poses as the solver's
// initialization and the run's noisy observations (weights neutral at 1;
// the solve variants assign weights).

namespace detail {

inline std::string frame_pgm_name(int frame) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%06d.pgm", frame);
  return buf;
}

inline std::string problem_file_name(int run) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "problem_%02d.txt", run);
  return buf;
}

}  // namespace detail

inline std::string encode_world_file(const World& world) {
  std::string out = "sba-world v1\n";
  out += "image_size " + std::to_string(world.config.image_width) + " " +
         std::to_string(world.config.image_height) + "\n";
  out += "intrinsics";
  const auto& k = world.config.intrinsics;
  for (double v : {k.fx, k.fy, k.cx, k.cy, k.baseline}) {
    out += ' ';
    detail::append_g17(out, v);
  }
  out += "\npoints " + std::to_string(world.points.size()) + "\n";
  for (const auto& p : world.points) {
    out += "wpt " + std::to_string(p.id);
    for (double v : {p.position.x(), p.position.y(), p.position.z(),
                     p.saliency}) {
      out += ' ';
      detail::append_g17(out, v);
    }
    out += '\n';
  }
  return out;
}

inline void export_dataset(const World& world,
                           const std::vector<SimulatedObservations>& runs,
                           CameraMode mode,
                           const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "saliency");
  fs::create_directories(dir / "problems");

  save_tum(world.ground_truth, dir / "groundtruth.tum");
  detail::write_file_bytes(dir / "world.txt", encode_world_file(world));
  for (int k = 0; k < world.config.n_keyframes; ++k) {
    save_raster(world.saliency_maps[k],
                dir / "saliency" / detail::frame_pgm_name(k));
  }

  Problem base;
  base.mode = mode;
  base.intrinsics = world.config.intrinsics;
  for (int k = 0; k < world.config.n_keyframes; ++k) {
    base.keyframes.push_back({k, world.cam_from_world[k]});
  }
  for (const auto& p : world.points) {
    base.points.push_back({p.id, p.position});
  }
  for (std::size_t run = 0; run < runs.size(); ++run) {
    Problem problem = base;
    problem.observations = runs[run].observations;
    save_snapshot(problem,
                  dir / "problems" / detail::problem_file_name(
                                         static_cast<int>(run)));
  }
}

/// In-memory view of an exported dataset.
struct Dataset {
  int image_width = 0;
  int image_height = 0;
  CameraIntrinsics intrinsics;
  std::vector<WorldPoint> points;      // with the saliency oracle
  Trajectory ground_truth;
  std::vector<SaliencyMap> saliency_maps;  // indexed by frame id
  std::vector<Problem> problems;           // one per run, sorted by filename
};

inline Dataset load_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  Dataset ds;

  std::ifstream in(dir / "world.txt");
  if (!in) throw IoError("cannot open " + (dir / "world.txt").string());
  const auto fail = [&](const std::string& why) -> void {
    throw IoError("world file " + (dir / "world.txt").string() + ": " + why);
  };
  std::string line;
  const auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) fail("unexpected end of file");
    return line;
  };
  if (next_line() != "sba-world v1") fail("bad magic/version line");
  {
    std::istringstream ls(next_line());
    std::string tag;
    if (!(ls >> tag >> ds.image_width >> ds.image_height) ||
        tag != "image_size" || ds.image_width <= 0 || ds.image_height <= 0) {
      fail("bad image_size line");
    }
  }
  {
    std::istringstream ls(next_line());
    std::string tag;
    double fx, fy, cx, cy, baseline;
    if (!(ls >> tag >> fx >> fy >> cx >> cy >> baseline) ||
        tag != "intrinsics") {
      fail("bad intrinsics line");
    }
    ds.intrinsics = CameraIntrinsics(fx, fy, cx, cy, baseline);
  }
  {
    std::istringstream ls(next_line());
    std::string tag;
    long long n = -1;
    if (!(ls >> tag >> n) || tag != "points" || n < 0) {
      fail("bad points count line");
    }
    for (long long i = 0; i < n; ++i) {
      std::istringstream pls(next_line());
      std::string ptag;
      WorldPoint wp;
      if (!(pls >> ptag >> wp.id >> wp.position.x() >> wp.position.y() >>
            wp.position.z() >> wp.saliency) ||
          ptag != "wpt") {
        fail("bad point line " + std::to_string(i));
      }
      ds.points.push_back(wp);
    }
  }

  ds.ground_truth = load_tum(dir / "groundtruth.tum");

  for (std::size_t k = 0; k < ds.ground_truth.size(); ++k) {
    const fs::path p =
        dir / "saliency" / detail::frame_pgm_name(static_cast<int>(k));
    ds.saliency_maps.push_back(load_saliency_pgm(p));
  }

  std::vector<fs::path> problem_files;
  const fs::path problems_dir = dir / "problems";
  if (!fs::is_directory(problems_dir)) {
    throw IoError("missing problems directory in " + dir.string());
  }
  for (const auto& entry : fs::directory_iterator(problems_dir)) {
    if (entry.path().extension() == ".txt") {
      problem_files.push_back(entry.path());
    }
  }
  std::sort(problem_files.begin(), problem_files.end());
  if (problem_files.empty()) {
    throw IoError("no problem snapshots in " + problems_dir.string());
  }
  for (const auto& p : problem_files) {
    ds.problems.push_back(load_snapshot(p));
  }
  return ds;
}

}  // namespace sba
