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

#include "salient_ba/core/trajectory.hpp"
#include "salient_ba/error.hpp"

namespace sba {

// TUM trajectory format: one pose per line,
//   timestamp tx ty tz qx qy qz qw
// space-separated with 9-significant-digit decimals, '#' comment lines
// allowed. Poses are camera-to-world (see trajectory.hpp).

inline std::string format_tum_line(const TimedPose& sample) {
  const auto& t = sample.pose.translation();
  const auto& q = sample.pose.rotation().quaternion();
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%.9g %.9g %.9g %.9g %.9g %.9g %.9g %.9g\n", sample.timestamp,
                t.x(), t.y(), t.z(), q.x(), q.y(), q.z(), q.w());
  return buf;
}

inline std::string encode_tum(const Trajectory& trajectory) {
  std::string out;
  for (const auto& sample : trajectory.samples()) {
    out += format_tum_line(sample);
  }
  return out;
}

inline void save_tum(const Trajectory& trajectory,
                     const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << encode_tum(trajectory);
  if (!out) throw IoError("short write: " + path.string());
}

inline Trajectory parse_tum(std::istream& in, const std::string& name) {
  std::vector<TimedPose> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double ts, tx, ty, tz, qx, qy, qz, qw;
    if (!(ls >> ts >> tx >> ty >> tz >> qx >> qy >> qz >> qw)) {
      throw IoError("bad TUM line " + std::to_string(line_no) + " in " + name);
    }
    samples.push_back({ts, Pose(Rotation(qw, qx, qy, qz), {tx, ty, tz})});
  }
  try {
    return Trajectory(std::move(samples));
  } catch (const InvalidArgumentError& e) {
    throw IoError(name + ": " + e.what());
  }
}

inline Trajectory load_tum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_tum(in, path.string());
}

}  // namespace sba
