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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "salient_ba/error.hpp"
#include "salient_ba/solver/types.hpp"

namespace sba {

// Problem snapshot, a versioned plain-text schema:
//
//   sba-snapshot v1
//   mode {mono|stereo}
//   intrinsics fx fy cx cy baseline
//   keyframes N
//   kf <frame_id> tx ty tz qx qy qz qw      (camera-from-world)
//   points M
//   pt <point_id> x y z
//   observations K
//   obs <frame_id> <point_id> <octave> <weight> u v [u_right]
//
// Doubles are written with 17 significant digits, so write -> read -> write
// reproduces the numbers bit-exactly.

namespace detail {

inline void append_g17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace detail

inline std::string encode_snapshot(const Problem& problem) {
  std::string out = "sba-snapshot v1\n";
  out += "mode ";
  out += problem.mode == CameraMode::kMono ? "mono" : "stereo";
  out += "\nintrinsics";
  for (double v : {problem.intrinsics.fx, problem.intrinsics.fy,
                   problem.intrinsics.cx, problem.intrinsics.cy,
                   problem.intrinsics.baseline}) {
    out += ' ';
    detail::append_g17(out, v);
  }
  out += "\nkeyframes " + std::to_string(problem.keyframes.size()) + "\n";
  for (const auto& kf : problem.keyframes) {
    out += "kf " + std::to_string(kf.id);
    const auto& t = kf.pose.translation();
    const auto& q = kf.pose.rotation().quaternion();
    for (double v : {t.x(), t.y(), t.z(), q.x(), q.y(), q.z(), q.w()}) {
      out += ' ';
      detail::append_g17(out, v);
    }
    out += '\n';
  }
  out += "points " + std::to_string(problem.points.size()) + "\n";
  for (const auto& p : problem.points) {
    out += "pt " + std::to_string(p.id);
    for (double v : {p.position.x(), p.position.y(), p.position.z()}) {
      out += ' ';
      detail::append_g17(out, v);
    }
    out += '\n';
  }
  out += "observations " + std::to_string(problem.observations.size()) + "\n";
  const int dim = measurement_dim(problem.mode);
  for (const auto& o : problem.observations) {
    out += "obs " + std::to_string(o.frame_id) + " " +
           std::to_string(o.point_id) + " " + std::to_string(o.octave);
    out += ' ';
    detail::append_g17(out, o.weight);
    for (int i = 0; i < dim; ++i) {
      out += ' ';
      detail::append_g17(out, o.measurement(i));
    }
    out += '\n';
  }
  return out;
}

inline void save_snapshot(const Problem& problem,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << encode_snapshot(problem);
  if (!out) throw IoError("short write: " + path.string());
}

inline Problem parse_snapshot(std::istream& in, const std::string& name) {
  const auto fail = [&](const std::string& why) -> void {
    throw IoError("snapshot " + name + ": " + why);
  };

  std::string line;
  const auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) fail("unexpected end of file");
    return line;
  };

  if (next_line() != "sba-snapshot v1") fail("bad magic/version line");

  Problem problem;
  {
    std::istringstream ls(next_line());
    std::string tag, mode;
    if (!(ls >> tag >> mode) || tag != "mode") fail("bad mode line");
    if (mode == "mono") {
      problem.mode = CameraMode::kMono;
    } else if (mode == "stereo") {
      problem.mode = CameraMode::kStereo;
    } else {
      fail("unknown mode '" + mode + "'");
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
    problem.intrinsics = CameraIntrinsics(fx, fy, cx, cy, baseline);
  }

  const auto read_count = [&](const char* keyword) -> std::size_t {
    std::istringstream ls(next_line());
    std::string tag;
    long long n = -1;
    if (!(ls >> tag >> n) || tag != keyword || n < 0) {
      fail(std::string("bad ") + keyword + " count line");
    }
    return static_cast<std::size_t>(n);
  };

  const std::size_t n_kf = read_count("keyframes");
  problem.keyframes.reserve(n_kf);
  for (std::size_t i = 0; i < n_kf; ++i) {
    std::istringstream ls(next_line());
    std::string tag;
    std::int64_t id;
    double tx, ty, tz, qx, qy, qz, qw;
    if (!(ls >> tag >> id >> tx >> ty >> tz >> qx >> qy >> qz >> qw) ||
        tag != "kf") {
      fail("bad keyframe line " + std::to_string(i));
    }
    problem.keyframes.push_back(
        {id, Pose(Rotation(qw, qx, qy, qz), {tx, ty, tz})});
  }

  const std::size_t n_pt = read_count("points");
  problem.points.reserve(n_pt);
  for (std::size_t i = 0; i < n_pt; ++i) {
    std::istringstream ls(next_line());
    std::string tag;
    std::int64_t id;
    double x, y, z;
    if (!(ls >> tag >> id >> x >> y >> z) || tag != "pt") {
      fail("bad point line " + std::to_string(i));
    }
    problem.points.push_back({id, {x, y, z}});
  }

  const std::size_t n_obs = read_count("observations");
  problem.observations.reserve(n_obs);
  const int dim = measurement_dim(problem.mode);
  for (std::size_t i = 0; i < n_obs; ++i) {
    std::istringstream ls(next_line());
    std::string tag;
    Observation o;
    if (!(ls >> tag >> o.frame_id >> o.point_id >> o.octave >> o.weight) ||
        tag != "obs") {
      fail("bad observation line " + std::to_string(i));
    }
    for (int d = 0; d < dim; ++d) {
      if (!(ls >> o.measurement(d))) {
        fail("bad observation line " + std::to_string(i));
      }
    }
    problem.observations.push_back(o);
  }
  return problem;
}

inline Problem load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_snapshot(in, path.string());
}

}  // namespace sba
