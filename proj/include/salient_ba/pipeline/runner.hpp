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
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "salient_ba/io/csv.hpp"
#include "salient_ba/io/pgm.hpp"
#include "salient_ba/io/snapshot.hpp"
#include "salient_ba/io/svg.hpp"
#include "salient_ba/io/tum.hpp"
#include "salient_ba/metrics/trajectory_metrics.hpp"
#include "salient_ba/pipeline/config.hpp"
#include "salient_ba/saliency/fusion.hpp"
#include "salient_ba/saliency/weight.hpp"
#include "salient_ba/sim/dataset.hpp"
#include "salient_ba/sim/world.hpp"
#include "salient_ba/solver/bundle.hpp"
#include "salient_ba/solver/motion_only.hpp"

namespace sba {

namespace detail {

/// Worker cap for sweep/solve parallelism; SALIENT_BA_THREADS overrides.
inline int thread_cap() {
  if (const char* env = std::getenv("SALIENT_BA_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(0..n-1) on up to thread_cap() workers. Each index writes only
/// its own output slots, so results do not depend on scheduling.
template <typename Fn>
void parallel_for_index(int n, Fn&& fn) {
  const int workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline std::string run_file_name(const char* prefix, int run,
                                 const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%02d.%s", prefix, run, ext);
  return buf;
}

/// Deterministic world seed decorrelated from the per-run observation
/// streams (runs use scene.seed + k directly).
inline std::uint64_t world_seed(std::uint64_t base) {
  return base ^ 0xD1B54A32D192ED03ull;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22",
                                    "#17becf"};

}  // namespace detail

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

/// Generates the synthetic world and `runs` observation sets (seeds
/// scene.seed + k) and writes the dataset directory.
inline void cmd_simulate(const ExperimentConfig& cfg,
                         const std::filesystem::path& out_dir,
                         std::ostream& log) {
  cfg.validate();
  const SceneConfig scene = [&] {
    SceneConfig s = cfg.scene;
    s.seed = detail::world_seed(cfg.scene.seed);
    return s;
  }();
  const World world = generate_world(scene);

  std::vector<SimulatedObservations> runs;
  runs.reserve(cfg.runs);
  std::size_t total_obs = 0, total_outliers = 0;
  for (int k = 0; k < cfg.runs; ++k) {
    runs.push_back(
        simulate_observations(world, cfg.noise, cfg.scene.seed + k, cfg.mode));
    total_obs += runs.back().observations.size();
    total_outliers += runs.back().outlier_count;
  }
  export_dataset(world, runs, cfg.mode, out_dir);

  log << "dataset: " << cfg.scene.n_keyframes << " keyframes, "
      << world.points.size() << " points, " << cfg.runs << " runs, "
      << total_obs << " observations (" << total_outliers << " outliers), "
      << (cfg.mode == CameraMode::kMono ? "mono" : "stereo") << ", shape "
      << to_string(cfg.scene.trajectory_shape) << "\n";
}

// ---------------------------------------------------------------------------
// fuse
// ---------------------------------------------------------------------------

/// Fuses saliency/depth raster pairs matched by file stem and writes the
/// fused maps plus a manifest of pre-normalization extremes.
inline void cmd_fuse(const std::filesystem::path& saliency_dir,
                     const std::filesystem::path& depth_dir,
                     const FusionParams& params,
                     const std::filesystem::path& out_dir, std::ostream& log) {
  namespace fs = std::filesystem;
  params.validate();

  const auto stems_of = [](const fs::path& dir) {
    if (!fs::is_directory(dir)) {
      throw IoError("not a directory: " + dir.string());
    }
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".pgm") {
        stems.push_back(entry.path().stem().string());
      }
    }
    std::sort(stems.begin(), stems.end());
    return stems;
  };

  const std::vector<std::string> s_stems = stems_of(saliency_dir);
  const std::vector<std::string> d_stems = stems_of(depth_dir);
  if (s_stems != d_stems) {
    std::string diff;
    for (const auto& s : s_stems) {
      if (!std::binary_search(d_stems.begin(), d_stems.end(), s)) {
        diff += " " + s + " (no depth)";
      }
    }
    for (const auto& s : d_stems) {
      if (!std::binary_search(s_stems.begin(), s_stems.end(), s)) {
        diff += " " + s + " (no saliency)";
      }
    }
    throw IoError("unpaired raster files:" + diff);
  }
  if (s_stems.empty()) {
    throw IoError("no .pgm files in " + saliency_dir.string());
  }

  fs::create_directories(out_dir);
  CsvBuilder manifest("sba-fuse-manifest v1");
  manifest.row({"file", "pre_min", "pre_max"});
  for (const auto& stem : s_stems) {
    const SaliencyMap s = load_saliency_pgm(saliency_dir / (stem + ".pgm"));
    const DepthMap d = load_depth_pgm(depth_dir / (stem + ".pgm"));
    const FusionResult fused = fuse_saliency_full(s, d, params);
    save_raster(fused.map, out_dir / (stem + ".pgm"));
    manifest.row({stem, CsvBuilder::num(fused.pre_min),
                  CsvBuilder::num(fused.pre_max)});
  }
  manifest.save(out_dir / "manifest.csv");
  log << "fused " << s_stems.size() << " raster pair(s) into "
      << out_dir.string() << "\n";
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

struct StageReport {
  std::string stage;
  std::int64_t id = 0;
  SolveReport report;
};

struct RunSolveResult {
  Trajectory estimate;  // camera-to-world
  std::vector<StageReport> reports;
};

namespace detail {

inline void assign_variant_weights(Problem& problem, const Dataset& ds,
                                   Variant variant,
                                   const WeightParams& params) {
  params.validate();
  if (variant == Variant::kUniform) {
    for (auto& obs : problem.observations) obs.weight = 1.0;
    return;
  }
  std::unordered_map<std::int64_t, double> saliency_by_id;
  if (variant == Variant::kSalientOracle) {
    for (const auto& p : ds.points) saliency_by_id.emplace(p.id, p.saliency);
  }
  for (auto& obs : problem.observations) {
    double s255 = 0.0;
    if (variant == Variant::kSalientOracle) {
      const auto it = saliency_by_id.find(obs.point_id);
      if (it == saliency_by_id.end()) {
        throw InvalidArgumentError("dataset: no saliency oracle for point " +
                                   std::to_string(obs.point_id));
      }
      s255 = 255.0 * it->second;
    } else {
      const auto frame = static_cast<std::size_t>(obs.frame_id);
      if (frame >= ds.saliency_maps.size()) {
        throw InvalidArgumentError("dataset: no saliency raster for frame " +
                                   std::to_string(obs.frame_id));
      }
      const SaliencyMap& map = ds.saliency_maps[frame];
      // Noisy keypoints can land a little outside the raster.
      const double u =
          std::clamp(obs.measurement.x(), 0.0, double(map.width() - 1));
      const double v =
          std::clamp(obs.measurement.y(), 0.0, double(map.height() - 1));
      s255 = sample_saliency(map, u, v);
    }
    obs.weight = salient_weight(s255, params);
  }
}

}  // namespace detail

/// The per-run back-end: the first keyframe anchors the gauge at its
/// snapshot pose; every later keyframe is initialized by constant-velocity
/// extrapolation and refined by motion-only BA, followed by a sliding local
/// BA over the trailing window (window_active active + window_fixed fixed).
inline RunSolveResult solve_problem_pipeline(const Problem& problem_in,
                                             const Dataset& ds,
                                             Variant variant,
                                             const ExperimentConfig& cfg) {
  Problem problem = problem_in;
  detail::assign_variant_weights(problem, ds, variant, cfg.weight);

  const int n = static_cast<int>(problem.keyframes.size());
  if (n < 2) throw InsufficientDataError("solve: need at least 2 keyframes");

  std::unordered_map<std::int64_t, int> frame_index;
  for (int i = 0; i < n; ++i) frame_index.emplace(problem.keyframes[i].id, i);

  std::vector<std::vector<Observation>> obs_by_frame(n);
  for (const auto& obs : problem.observations) {
    const auto it = frame_index.find(obs.frame_id);
    if (it == frame_index.end()) {
      throw InvalidArgumentError("solve: observation of unknown frame " +
                                 std::to_string(obs.frame_id));
    }
    obs_by_frame[it->second].push_back(obs);
  }

  RunSolveResult out;
  std::vector<Pose> est(n);
  est[0] = problem.keyframes[0].pose;
  std::vector<MapPoint> points_est = problem.points;

  for (int k = 1; k < n; ++k) {
    // Constant-velocity prediction in the camera-from-world convention.
    Pose init = k >= 2 ? (est[k - 1] * est[k - 2].inverse()) * est[k - 1]
                       : est[k - 1];
    try {
      MotionOnlyResult res = solve_motion_only(
          obs_by_frame[k], points_est, init, problem.intrinsics, problem.mode,
          cfg.noise_model, cfg.kernel, cfg.solver);
      est[k] = res.pose;
      out.reports.push_back(
          {"motion_only", problem.keyframes[k].id, std::move(res.report)});
    } catch (const InsufficientDataError&) {
      est[k] = init;  // too few observations; keep the prediction
    }

    // Sliding local BA over the trailing window.
    const int lo = std::max(0, k - (cfg.window_active - 1));
    LocalWindow window;
    for (int f = lo; f <= k; ++f) {
      window.active_keyframes.insert(problem.keyframes[f].id);
    }
    for (int f = std::max(0, lo - cfg.window_fixed); f < lo; ++f) {
      window.fixed_keyframes.insert(problem.keyframes[f].id);
    }
    if (window.fixed_keyframes.empty()) {
      // Early windows: pin the first keyframe instead of dropping gauge
      // handling into the solver.
      window.active_keyframes.erase(problem.keyframes[0].id);
      window.fixed_keyframes.insert(problem.keyframes[0].id);
    }
    if (window.active_keyframes.empty()) continue;

    // Active points: observed by at least two distinct window keyframes.
    std::map<std::int64_t, std::set<std::int64_t>> seen_by;
    for (int f = std::max(0, lo - cfg.window_fixed); f <= k; ++f) {
      for (const auto& obs : obs_by_frame[f]) {
        seen_by[obs.point_id].insert(obs.frame_id);
      }
    }
    for (const auto& [pid, frames] : seen_by) {
      if (frames.size() >= 2) window.active_points.insert(pid);
    }
    if (window.active_points.empty()) continue;

    Problem window_problem;
    window_problem.mode = problem.mode;
    window_problem.intrinsics = problem.intrinsics;
    for (int f = 0; f < n; ++f) {
      window_problem.keyframes.push_back({problem.keyframes[f].id, est[f]});
    }
    window_problem.points = points_est;
    window_problem.observations = problem.observations;

    BundleResult ba = solve_local_ba(window, window_problem, cfg.noise_model,
                                     cfg.kernel, cfg.solver);
    for (int f = 0; f < n; ++f) {
      if (window.active_keyframes.count(problem.keyframes[f].id)) {
        est[f] = ba.keyframes[f].pose;
      }
    }
    points_est = std::move(ba.points);
    out.reports.push_back(
        {"local_ba", problem.keyframes[k].id, std::move(ba.report)});
  }

  for (int k = 0; k < n; ++k) {
    const double ts = k < static_cast<int>(ds.ground_truth.size())
                          ? ds.ground_truth[k].timestamp
                          : k * kFrameDt;
    out.estimate.push_back(ts, est[k].inverse());
  }
  return out;
}

inline void save_stage_reports(const std::vector<StageReport>& reports,
                               const std::filesystem::path& path) {
  CsvBuilder csv("sba-solve-report v1");
  csv.row({"stage", "id", "iterations", "initial_cost", "final_cost", "reason",
           "gauge_fixed_frame"});
  for (const auto& r : reports) {
    csv.row({r.stage, std::to_string(r.id),
             std::to_string(r.report.iterations),
             CsvBuilder::num(r.report.initial_cost),
             CsvBuilder::num(r.report.final_cost), to_string(r.report.reason),
             r.report.gauge_fixed_frame
                 ? std::to_string(*r.report.gauge_fixed_frame)
                 : ""});
  }
  csv.save(path);
}

/// Solves every problem snapshot in the dataset with the given variant,
/// writing est_NN.tum and report_NN.csv per run.
inline void cmd_solve(const std::filesystem::path& dataset_dir,
                      Variant variant, const ExperimentConfig& cfg,
                      const std::filesystem::path& out_dir,
                      std::ostream& log) {
  namespace fs = std::filesystem;
  const Dataset ds = load_dataset(dataset_dir);
  fs::create_directories(out_dir);

  const int n_runs = static_cast<int>(ds.problems.size());
  std::vector<RunSolveResult> results(n_runs);
  detail::parallel_for_index(n_runs, [&](int r) {
    results[r] = solve_problem_pipeline(ds.problems[r], ds, variant, cfg);
  });
  for (int r = 0; r < n_runs; ++r) {
    save_tum(results[r].estimate,
             out_dir / detail::run_file_name("est", r, "tum"));
    save_stage_reports(results[r].reports,
                       out_dir / detail::run_file_name("report", r, "csv"));
  }
  log << "solved " << n_runs << " run(s) with variant " << to_string(variant)
      << " into " << out_dir.string() << "\n";
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalResult {
  std::vector<std::string> run_files;
  std::vector<ErrorStats> ate_per_run;
  std::vector<ErrorStats> rpe_per_run;
  ErrorStats ate_aggregate;
  ErrorStats rpe_aggregate;
};

namespace detail {

inline void stats_cells(std::vector<std::string>& cells, const ErrorStats& s) {
  cells.push_back(CsvBuilder::num(s.rmse));
  cells.push_back(CsvBuilder::num(s.mean));
  cells.push_back(CsvBuilder::num(s.std));
  cells.push_back(CsvBuilder::num(s.median));
  cells.push_back(CsvBuilder::num(s.min));
  cells.push_back(CsvBuilder::num(s.max));
}

}  // namespace detail

/// Evaluates every est_*.tum in est_dir against the ground truth: per-run
/// ATE/RPE, lower-median aggregation, a trajectory overlay SVG (x-z plane)
/// and a per-run RMSE heatmap (CSV + SVG).
inline EvalResult cmd_eval(const std::filesystem::path& est_dir,
                           const std::filesystem::path& gt_file,
                           const ExperimentConfig& cfg,
                           const std::filesystem::path& out_dir,
                           std::ostream& log) {
  namespace fs = std::filesystem;
  const Trajectory gt = load_tum(gt_file);

  std::vector<fs::path> est_files;
  if (!fs::is_directory(est_dir)) {
    throw IoError("not a directory: " + est_dir.string());
  }
  for (const auto& entry : fs::directory_iterator(est_dir)) {
    if (entry.path().extension() == ".tum") est_files.push_back(entry.path());
  }
  std::sort(est_files.begin(), est_files.end());
  if (est_files.empty()) {
    throw IoError("no .tum trajectories in " + est_dir.string());
  }

  fs::create_directories(out_dir);
  EvalResult result;
  CsvBuilder per_run("sba-eval-per-run v1");
  per_run.row({"run", "file", "ate_rmse", "ate_mean", "ate_std", "ate_median",
               "ate_min", "ate_max", "rpe_rmse", "rpe_mean", "rpe_std",
               "rpe_median", "rpe_min", "rpe_max"});

  std::vector<SvgPolyline> overlay;
  {
    SvgPolyline gt_line;
    gt_line.color = "#000000";
    gt_line.label = "ground truth";
    for (const auto& s : gt.samples()) {
      gt_line.points.emplace_back(s.pose.translation().x(),
                                  s.pose.translation().z());
    }
    overlay.push_back(std::move(gt_line));
  }

  for (std::size_t r = 0; r < est_files.size(); ++r) {
    const Trajectory est = load_tum(est_files[r]);
    const ErrorStats a = ate(est, gt, cfg.align);
    const ErrorStats p = rpe(est, gt, cfg.rpe_delta, 0.02, cfg.rpe_per_meter);
    result.run_files.push_back(est_files[r].filename().string());
    result.ate_per_run.push_back(a);
    result.rpe_per_run.push_back(p);

    std::vector<std::string> cells{std::to_string(r),
                                   est_files[r].filename().string()};
    detail::stats_cells(cells, a);
    detail::stats_cells(cells, p);
    per_run.row(cells);

    SvgPolyline line;
    line.color = detail::kPalette[r % std::size(detail::kPalette)];
    line.label = est_files[r].stem().string();
    SimTransform align_tf;
    if (cfg.align != Alignment::kNone) {
      const auto pairs = associate(est, gt);
      std::vector<Eigen::Vector3d> ep, gp;
      for (const auto& pr : pairs) {
        ep.push_back(est[pr.est_index].pose.translation());
        gp.push_back(gt[pr.gt_index].pose.translation());
      }
      align_tf = umeyama_align(ep, gp, cfg.align == Alignment::kSim3);
    }
    for (const auto& s : est.samples()) {
      const Eigen::Vector3d q = align_tf * s.pose.translation();
      line.points.emplace_back(q.x(), q.z());
    }
    overlay.push_back(std::move(line));
  }

  result.ate_aggregate = aggregate_runs(result.ate_per_run);
  result.rpe_aggregate = aggregate_runs(result.rpe_per_run);

  per_run.save(out_dir / "per_run.csv");

  CsvBuilder agg("sba-eval-aggregate v1");
  agg.row({"metric", "rmse", "mean", "std", "median", "min", "max"});
  {
    std::vector<std::string> cells{"ate"};
    detail::stats_cells(cells, result.ate_aggregate);
    agg.row(cells);
    cells = {"rpe"};
    detail::stats_cells(cells, result.rpe_aggregate);
    agg.row(cells);
  }
  agg.save(out_dir / "aggregate.csv");

  CsvBuilder heat("sba-eval-heatmap v1");
  {
    std::vector<std::string> header{"label"};
    for (std::size_t r = 0; r < result.ate_per_run.size(); ++r) {
      header.push_back("run_" + std::to_string(r));
    }
    heat.row(header);
    std::vector<std::string> cells{"ate_rmse"};
    std::vector<double> values;
    for (const auto& s : result.ate_per_run) {
      cells.push_back(CsvBuilder::num(s.rmse));
      values.push_back(s.rmse);
    }
    heat.row(cells);
    save_svg(render_heatmap_svg({"ate_rmse"}, {values}),
             out_dir / "heatmap.svg");
  }
  heat.save(out_dir / "heatmap.csv");
  save_svg(render_trajectory_svg(overlay), out_dir / "overlay.svg");

  log << "evaluated " << est_files.size() << " run(s): median ATE-RMSE "
      << CsvBuilder::num(result.ate_aggregate.rmse) << " m, median RPE-RMSE "
      << CsvBuilder::num(result.rpe_aggregate.rmse) << "\n";
  return result;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepResult {
  std::filesystem::path dataset_dir;
  std::vector<Variant> variants;
  std::map<Variant, EvalResult> eval;
  /// Wins per variant against uniform (count of runs with strictly lower
  /// ATE-RMSE); only filled when uniform is among the variants.
  std::map<Variant, int> wins_vs_uniform;
};

/// The full A/B experiment: one dataset, every variant solved over every
/// run, per-variant evaluation, and a side-by-side median summary with a
/// win/loss count against the uniform baseline.
inline SweepResult cmd_sweep(const ExperimentConfig& cfg,
                             const std::filesystem::path& out_dir,
                             std::ostream& log) {
  namespace fs = std::filesystem;
  cfg.validate();
  SweepResult result;
  result.variants = cfg.variants;
  result.dataset_dir = out_dir / "dataset";

  cmd_simulate(cfg, result.dataset_dir, log);

  for (Variant v : cfg.variants) {
    const fs::path vdir = out_dir / to_string(v);
    cmd_solve(result.dataset_dir, v, cfg, vdir, log);
    result.eval.emplace(
        v, cmd_eval(vdir, result.dataset_dir / "groundtruth.tum", cfg,
                    vdir / "eval", log));
  }

  CsvBuilder summary("sba-sweep-summary v1");
  summary.row({"variant", "ate_rmse", "ate_mean", "ate_std", "rpe_rmse",
               "rpe_mean", "rpe_std"});
  for (Variant v : cfg.variants) {
    const EvalResult& ev = result.eval.at(v);
    summary.row({to_string(v), CsvBuilder::num(ev.ate_aggregate.rmse),
                 CsvBuilder::num(ev.ate_aggregate.mean),
                 CsvBuilder::num(ev.ate_aggregate.std),
                 CsvBuilder::num(ev.rpe_aggregate.rmse),
                 CsvBuilder::num(ev.rpe_aggregate.mean),
                 CsvBuilder::num(ev.rpe_aggregate.std)});
  }
  summary.save(out_dir / "summary.csv");

  const bool has_uniform =
      std::find(cfg.variants.begin(), cfg.variants.end(), Variant::kUniform) !=
      cfg.variants.end();
  CsvBuilder winloss("sba-sweep-winloss v1");
  winloss.row({"variant", "wins", "losses", "ties", "runs"});
  if (has_uniform) {
    const auto& uniform_ate = result.eval.at(Variant::kUniform).ate_per_run;
    for (Variant v : cfg.variants) {
      if (v == Variant::kUniform) continue;
      const auto& per_run = result.eval.at(v).ate_per_run;
      int wins = 0, losses = 0, ties = 0;
      for (std::size_t r = 0;
           r < std::min(per_run.size(), uniform_ate.size()); ++r) {
        if (per_run[r].rmse < uniform_ate[r].rmse) ++wins;
        else if (per_run[r].rmse > uniform_ate[r].rmse) ++losses;
        else ++ties;
      }
      result.wins_vs_uniform[v] = wins;
      winloss.row({to_string(v), std::to_string(wins), std::to_string(losses),
                   std::to_string(ties), std::to_string(uniform_ate.size())});
    }
  }
  winloss.save(out_dir / "winloss.csv");

  // Variant x run ATE-RMSE grid.
  CsvBuilder heat("sba-sweep-heatmap v1");
  std::vector<std::string> labels;
  std::vector<std::vector<double>> grid;
  {
    std::vector<std::string> header{"variant"};
    for (int r = 0; r < cfg.runs; ++r) {
      header.push_back("run_" + std::to_string(r));
    }
    heat.row(header);
    for (Variant v : cfg.variants) {
      std::vector<std::string> cells{to_string(v)};
      std::vector<double> row;
      for (const auto& s : result.eval.at(v).ate_per_run) {
        cells.push_back(CsvBuilder::num(s.rmse));
        row.push_back(s.rmse);
      }
      heat.row(cells);
      labels.push_back(to_string(v));
      grid.push_back(std::move(row));
    }
  }
  heat.save(out_dir / "heatmap.csv");
  save_svg(render_heatmap_svg(labels, grid), out_dir / "heatmap.svg");

  for (Variant v : cfg.variants) {
    log << "variant " << to_string(v) << ": median ATE-RMSE "
        << CsvBuilder::num(result.eval.at(v).ate_aggregate.rmse) << " m\n";
  }
  return result;
}

}  // namespace sba
