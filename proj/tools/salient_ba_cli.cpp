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

// salient-ba: dataset simulation, saliency fusion, weighted BA solves,
// trajectory evaluation and A/B sweeps, all driven by one config file with
// flag overrides.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "salient_ba/salient_ba.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::string> mode;
  std::optional<std::string> align;
  std::optional<std::size_t> rpe_delta;
};

sba::ExperimentConfig make_config(const CommonFlags& flags) {
  sba::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = sba::load_experiment_config(flags.config_path);
  }
  if (flags.seed) cfg.scene.seed = *flags.seed;
  if (flags.runs) cfg.runs = *flags.runs;
  if (flags.mode) {
    if (*flags.mode == "mono") cfg.mode = sba::CameraMode::kMono;
    else if (*flags.mode == "stereo") cfg.mode = sba::CameraMode::kStereo;
    else throw sba::ConfigError("--mode: expected mono|stereo");
  }
  if (flags.align) cfg.align = sba::alignment_from_string(*flags.align);
  if (flags.rpe_delta) cfg.rpe_delta = *flags.rpe_delta;
  cfg.validate();
  return cfg;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path,
                  "Experiment config file (INI sections; see README)");
  cmd->add_option("--seed", flags.seed, "Override scene.seed");
  cmd->add_option("--runs", flags.runs, "Override experiment.runs");
  cmd->add_option("--mode", flags.mode, "Override camera mode (mono|stereo)");
  cmd->add_option("--align", flags.align,
                  "ATE alignment (none|se3|sim3), default se3");
  cmd->add_option("--delta", flags.rpe_delta, "RPE frame delta, default 1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"salient-ba: saliency-weighted bundle adjustment toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;

  // simulate
  auto* sim = app.add_subcommand(
      "simulate", "Generate a synthetic dataset (world + per-run problems)");
  std::string sim_out;
  sim->add_option("--out", sim_out, "Output dataset directory")->required();
  add_common_flags(sim, flags);

  // fuse
  auto* fuse = app.add_subcommand(
      "fuse", "Depth-correct and normalize saliency rasters (per file stem)");
  std::string fuse_saliency, fuse_depth, fuse_out;
  fuse->add_option("--saliency", fuse_saliency, "Directory of 8-bit PGMs")
      ->required();
  fuse->add_option("--depth", fuse_depth, "Directory of 16-bit depth PGMs")
      ->required();
  fuse->add_option("--out", fuse_out, "Output directory")->required();
  add_common_flags(fuse, flags);

  // solve
  auto* solve = app.add_subcommand(
      "solve", "Run the BA back-end over every problem in a dataset");
  std::string solve_dataset, solve_out, solve_variant = "salient-raster";
  solve->add_option("--dataset", solve_dataset, "Dataset directory")
      ->required();
  solve->add_option("--variant", solve_variant,
                    "uniform|salient-oracle|salient-raster");
  solve->add_option("--out", solve_out, "Output directory")->required();
  add_common_flags(solve, flags);

  // eval
  auto* eval = app.add_subcommand(
      "eval", "Evaluate estimated trajectories against ground truth");
  std::string eval_est, eval_gt, eval_out;
  eval->add_option("--est", eval_est, "Directory of est_*.tum files")
      ->required();
  eval->add_option("--gt", eval_gt, "Ground-truth TUM file")->required();
  eval->add_option("--out", eval_out, "Output directory")->required();
  add_common_flags(eval, flags);

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Full A/B experiment: simulate, solve all variants, evaluate");
  std::string sweep_out;
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  add_common_flags(sweep, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      sba::cmd_simulate(make_config(flags), sim_out, std::cout);
    } else if (fuse->parsed()) {
      const sba::ExperimentConfig cfg = make_config(flags);
      sba::cmd_fuse(fuse_saliency, fuse_depth, cfg.fusion, fuse_out,
                    std::cout);
    } else if (solve->parsed()) {
      sba::cmd_solve(solve_dataset, sba::variant_from_string(solve_variant),
                     make_config(flags), solve_out, std::cout);
    } else if (eval->parsed()) {
      sba::cmd_eval(eval_est, eval_gt, make_config(flags), eval_out,
                    std::cout);
    } else if (sweep->parsed()) {
      sba::cmd_sweep(make_config(flags), sweep_out, std::cout);
    }
  } catch (const sba::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
