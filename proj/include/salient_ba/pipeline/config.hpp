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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "salient_ba/error.hpp"
#include "salient_ba/metrics/trajectory_metrics.hpp"
#include "salient_ba/saliency/fusion.hpp"
#include "salient_ba/saliency/weight.hpp"
#include "salient_ba/sim/world.hpp"
#include "salient_ba/solver/types.hpp"

namespace sba {

/// Which weighting the solve pipeline applies to observations.
enum class Variant {
  kUniform,        // every observation weight 1
  kSalientOracle,  // weights from the simulator's per-point saliency
  kSalientRaster,  // weights sampled from rendered saliency rasters
};

inline std::string to_string(Variant v) {
  switch (v) {
    case Variant::kUniform: return "uniform";
    case Variant::kSalientOracle: return "salient-oracle";
    case Variant::kSalientRaster: return "salient-raster";
  }
  return "unknown";
}

inline Variant variant_from_string(const std::string& s) {
  if (s == "uniform") return Variant::kUniform;
  if (s == "salient-oracle") return Variant::kSalientOracle;
  if (s == "salient-raster") return Variant::kSalientRaster;
  throw ConfigError("variant: unknown value '" + s +
                    "' (expected uniform|salient-oracle|salient-raster)");
}

/// Everything a sweep needs: scene, noise, weighting, solver settings and
/// the run protocol. Parsed from an INI-style file ([section] headers,
/// key = value lines, '#'/';' comment lines); see the README for the full
/// key list.
struct ExperimentConfig {
  SceneConfig scene;
  NoiseProfile noise;
  WeightParams weight;
  FusionParams fusion;
  SolverConfig solver;
  NoiseModel noise_model;
  RobustKernel kernel;

  int runs = 10;
  CameraMode mode = CameraMode::kMono;
  std::vector<Variant> variants = {Variant::kUniform, Variant::kSalientOracle,
                                   Variant::kSalientRaster};
  Alignment align = Alignment::kSe3;
  std::size_t rpe_delta = 1;
  bool rpe_per_meter = false;
  int window_active = 5;  // sliding local-BA window: active keyframes
  int window_fixed = 2;   // keyframes pinned in front of the window

  void validate() const {
    scene.validate();
    noise.validate();
    weight.validate();
    fusion.validate();
    solver.validate();
    noise_model.validate();
    kernel.validate();
    if (runs < 1) throw ConfigError("experiment.runs: must be >= 1");
    if (variants.empty()) {
      throw ConfigError("experiment.variants: must not be empty");
    }
    if (window_active < 1 || window_fixed < 0) {
      throw ConfigError("experiment.window: bad window sizes");
    }
    if (rpe_delta < 1) throw ConfigError("experiment.rpe_delta: must be >= 1");
  }
};

namespace detail {

struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<ConfigEntry> parse_ini(std::istream& in,
                                          const std::string& name) {
  std::vector<ConfigEntry> entries;
  std::string section, line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError(name + ":" + std::to_string(line_no) +
                          ": unterminated section header");
      }
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(name + ":" + std::to_string(line_no) +
                        ": expected key = value");
    }
    entries.push_back(
        {section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), line_no});
  }
  return entries;
}

inline double config_double(const ConfigEntry& e) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(e.value, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != e.value.size()) {
    throw ConfigError(e.section + "." + e.key + ": not a number: '" + e.value +
                      "'");
  }
  return v;
}

inline long long config_int(const ConfigEntry& e) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(e.value, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != e.value.size()) {
    throw ConfigError(e.section + "." + e.key + ": not an integer: '" +
                      e.value + "'");
  }
  return v;
}

inline bool config_bool(const ConfigEntry& e) {
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  throw ConfigError(e.section + "." + e.key + ": not a boolean: '" + e.value +
                    "'");
}

inline std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string token;
  for (char c : value) {
    if (c == ' ' || c == ',' || c == '\t') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

inline void apply_config_entry(ExperimentConfig& cfg, const ConfigEntry& e) {
  const std::string full = e.section + "." + e.key;
  if (e.section == "scene") {
    if (e.key == "seed") {
      cfg.scene.seed = static_cast<std::uint64_t>(config_int(e));
    } else if (e.key == "n_keyframes") {
      cfg.scene.n_keyframes = static_cast<int>(config_int(e));
    } else if (e.key == "n_points") {
      cfg.scene.n_points = static_cast<int>(config_int(e));
    } else if (e.key == "trajectory_shape") {
      cfg.scene.trajectory_shape = trajectory_shape_from_string(e.value);
    } else if (e.key == "point_box") {
      const auto parts = split_list(e.value);
      if (parts.size() != 3) {
        throw ConfigError(full + ": expected three extents");
      }
      for (int i = 0; i < 3; ++i) {
        cfg.scene.point_box(i) =
            config_double({e.section, e.key, parts[i], e.line});
      }
    } else if (e.key == "image_size") {
      const auto parts = split_list(e.value);
      if (parts.size() != 2) {
        throw ConfigError(full + ": expected width and height");
      }
      cfg.scene.image_width = static_cast<int>(
          config_int({e.section, e.key, parts[0], e.line}));
      cfg.scene.image_height = static_cast<int>(
          config_int({e.section, e.key, parts[1], e.line}));
    } else if (e.key == "fx" || e.key == "fy" || e.key == "cx" ||
               e.key == "cy" || e.key == "baseline") {
      const double v = config_double(e);
      auto& k = cfg.scene.intrinsics;
      CameraIntrinsics next(e.key == "fx" ? v : k.fx,
                            e.key == "fy" ? v : k.fy,
                            e.key == "cx" ? v : k.cx,
                            e.key == "cy" ? v : k.cy,
                            e.key == "baseline" ? v : k.baseline);
      k = next;
    } else {
      throw ConfigError("unknown config key: " + full);
    }
  } else if (e.section == "noise") {
    if (e.key == "sigma_min") cfg.noise.sigma_min = config_double(e);
    else if (e.key == "sigma_max") cfg.noise.sigma_max = config_double(e);
    else if (e.key == "outlier_rate_low_saliency")
      cfg.noise.outlier_rate_low_saliency = config_double(e);
    else if (e.key == "outlier_magnitude")
      cfg.noise.outlier_magnitude = config_double(e);
    else if (e.key == "dynamic_point_fraction")
      cfg.noise.dynamic_point_fraction = config_double(e);
    else if (e.key == "dynamic_drift")
      cfg.noise.dynamic_drift = config_double(e);
    else throw ConfigError("unknown config key: " + full);
  } else if (e.section == "weight") {
    if (e.key == "a_w") cfg.weight.a_w = config_double(e);
    else if (e.key == "b_w") cfg.weight.b_w = config_double(e);
    else if (e.key == "raw_scale") cfg.weight.raw_scale = config_bool(e);
    else throw ConfigError("unknown config key: " + full);
  } else if (e.section == "fusion") {
    if (e.key == "a_fuse") cfg.fusion.a_fuse = config_double(e);
    else if (e.key == "b_fuse") cfg.fusion.b_fuse = config_double(e);
    else if (e.key == "depth_floor") cfg.fusion.depth_floor = config_double(e);
    else throw ConfigError("unknown config key: " + full);
  } else if (e.section == "solver") {
    if (e.key == "max_iterations")
      cfg.solver.max_iterations = static_cast<int>(config_int(e));
    else if (e.key == "initial_lambda")
      cfg.solver.initial_lambda = config_double(e);
    else if (e.key == "lambda_up") cfg.solver.lambda_up = config_double(e);
    else if (e.key == "lambda_down") cfg.solver.lambda_down = config_double(e);
    else if (e.key == "step_tolerance")
      cfg.solver.step_tolerance = config_double(e);
    else if (e.key == "cost_tolerance")
      cfg.solver.cost_tolerance = config_double(e);
    else if (e.key == "sigma_px") cfg.noise_model.sigma_px = config_double(e);
    else if (e.key == "octave_scale")
      cfg.noise_model.octave_scale = config_double(e);
    else if (e.key == "delta_sq_mono")
      cfg.kernel.delta_sq_mono = config_double(e);
    else if (e.key == "delta_sq_stereo")
      cfg.kernel.delta_sq_stereo = config_double(e);
    else throw ConfigError("unknown config key: " + full);
  } else if (e.section == "experiment") {
    if (e.key == "runs") cfg.runs = static_cast<int>(config_int(e));
    else if (e.key == "mode") {
      if (e.value == "mono") cfg.mode = CameraMode::kMono;
      else if (e.value == "stereo") cfg.mode = CameraMode::kStereo;
      else throw ConfigError(full + ": expected mono|stereo");
    } else if (e.key == "variants") {
      cfg.variants.clear();
      for (const auto& v : split_list(e.value)) {
        cfg.variants.push_back(variant_from_string(v));
      }
    } else if (e.key == "align") {
      cfg.align = alignment_from_string(e.value);
    } else if (e.key == "rpe_delta") {
      cfg.rpe_delta = static_cast<std::size_t>(config_int(e));
    } else if (e.key == "rpe_per_meter") {
      cfg.rpe_per_meter = config_bool(e);
    } else if (e.key == "window_active") {
      cfg.window_active = static_cast<int>(config_int(e));
    } else if (e.key == "window_fixed") {
      cfg.window_fixed = static_cast<int>(config_int(e));
    } else {
      throw ConfigError("unknown config key: " + full);
    }
  } else {
    throw ConfigError("unknown config section: [" + e.section + "]");
  }
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(std::istream& in,
                                                const std::string& name) {
  ExperimentConfig cfg;
  for (const auto& e : detail::parse_ini(in, name)) {
    detail::apply_config_entry(cfg, e);
  }
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_experiment_config(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_experiment_config(in, path.string());
}

}  // namespace sba
