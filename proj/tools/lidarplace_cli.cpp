// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
//
// lidarplace: command-line front end over the C API.
//
//   lidarplace --scenario S.json --out DIR optimize
//   lidarplace --scenario S.json --out DIR evaluate --poses P.json
//   lidarplace --scenario S.json --out DIR sweep --counts 1,2,3,4 --models vlp16
//   lidarplace --scenario S.json --out DIR odr (--poses P.json | --samples N)
//   lidarplace --out DIR export-voxels --record DIR/result.json
//
// Errors go to stderr as "error[LP_ERR_*]: message" and the process exits
// with the matching lp_status value.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lidarplace/lidarplace.h"

namespace {

struct Failure {
  lp_status status;
  std::string message;
};

void check(lp_status st) {
  if (st != LP_OK) throw Failure{st, lp_last_error()};
}

[[noreturn]] void usage(const std::string& message) {
  throw Failure{LP_ERR_USAGE, message};
}

struct ScenarioDeleter {
  void operator()(lp_scenario* s) const { lp_scenario_free(s); }
};
struct RunDeleter {
  void operator()(lp_run* r) const { lp_run_free(r); }
};
struct EvaluationDeleter {
  void operator()(lp_evaluation* e) const { lp_evaluation_free(e); }
};
using ScenarioPtr = std::unique_ptr<lp_scenario, ScenarioDeleter>;

ScenarioPtr load(const std::string& path) {
  if (path.empty()) usage("--scenario is required");
  lp_scenario* s = nullptr;
  check(lp_scenario_load(path.c_str(), &s));
  return ScenarioPtr(s);
}

double parse_angle(std::string text) {
  double scale = 1.0;
  if (text.ends_with("deg")) {
    scale = std::numbers::pi / 180.0;
    text.resize(text.size() - 3);
  } else if (text.ends_with("rad")) {
    text.resize(text.size() - 3);
  }
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument(text);
  return v * scale;
}

// "x,y,z,yaw,pitch,roll"; angles may carry a deg/rad suffix.
lp_pose parse_pose(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 6) usage("--pose expects x,y,z,yaw,pitch,roll: " + text);
  try {
    return {std::stod(parts[0]),     std::stod(parts[1]),
            std::stod(parts[2]),     parse_angle(parts[3]),
            parse_angle(parts[4]),   parse_angle(parts[5])};
  } catch (const std::exception&) {
    usage("cannot parse --pose " + text);
  }
}

std::vector<lp_pose> gather_poses(const std::string& file,
                                  const std::vector<std::string>& inline_poses) {
  std::vector<lp_pose> poses;
  if (!file.empty()) {
    lp_pose* buf = nullptr;
    std::size_t n = 0;
    check(lp_poses_load(file.c_str(), &buf, &n));
    poses.assign(buf, buf + n);
    lp_poses_free(buf);
  }
  for (const auto& p : inline_poses) poses.push_back(parse_pose(p));
  return poses;
}

void print_poses(const std::vector<lp_pose>& poses) {
  std::printf("  %-4s %9s %9s %9s %9s %9s %9s\n", "#", "x", "y", "z", "yaw",
              "pitch", "roll");
  for (std::size_t i = 0; i < poses.size(); ++i) {
    const auto& p = poses[i];
    std::printf("  %-4zu %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f\n", i, p.x, p.y,
                p.z, p.yaw, p.pitch, p.roll);
  }
}

struct Globals {
  std::string scenario;
  std::string out = "out";
  std::uint64_t seed = 0;
  bool has_seed = false;
  int threads = 1;
};

int run_optimize(const Globals& g) {
  auto s = load(g.scenario);
  lp_run_options opts{g.has_seed ? 1 : 0, g.seed, g.threads};
  lp_run* raw = nullptr;
  check(lp_optimize(s.get(), &opts, &raw));
  std::unique_ptr<lp_run, RunDeleter> run(raw);
  check(lp_run_write(run.get(), g.out.c_str()));

  std::vector<lp_pose> poses(lp_run_pose_count(run.get()));
  for (std::size_t i = 0; i < poses.size(); ++i) {
    check(lp_run_pose(run.get(), i, &poses[i]));
  }
  std::printf("objective (max VSR): %.10g m\n", lp_run_objective(run.get()));
  std::printf("subspaces: %zu  seed: %llu  wall: %.2f s\n",
              lp_run_subspace_count(run.get()),
              static_cast<unsigned long long>(lp_run_seed(run.get())),
              lp_run_wall_seconds(run.get()));
  print_poses(poses);
  std::printf("results written to %s\n", g.out.c_str());
  return 0;
}

int run_evaluate(const Globals& g, const std::string& poses_file,
                 const std::vector<std::string>& inline_poses) {
  auto s = load(g.scenario);
  const auto poses = gather_poses(poses_file, inline_poses);
  if (poses.empty()) usage("evaluate needs --poses FILE or --pose x,y,z,yaw,pitch,roll");
  lp_evaluation* raw = nullptr;
  check(lp_evaluate(s.get(), poses.data(), poses.size(), &raw));
  std::unique_ptr<lp_evaluation, EvaluationDeleter> ev(raw);
  for (std::size_t i = 0; i < lp_evaluation_warning_count(ev.get()); ++i) {
    std::fprintf(stderr, "warning: %s\n", lp_evaluation_warning(ev.get(), i));
  }
  check(lp_evaluation_write(ev.get(), g.out.c_str()));
  std::printf("objective (max VSR): %.10g m\n", lp_evaluation_objective(ev.get()));
  std::printf("subspaces: %zu  distinct codes: %zu of %llu\n",
              lp_evaluation_subspace_count(ev.get()),
              lp_evaluation_distinct_codes(ev.get()),
              static_cast<unsigned long long>(lp_evaluation_code_space_size(ev.get())));
  print_poses(poses);
  std::printf("results written to %s\n", g.out.c_str());
  return 0;
}

int run_sweep(const Globals& g, const std::vector<std::size_t>& counts,
              const std::vector<std::string>& models,
              std::vector<std::uint64_t> seeds) {
  if (counts.empty()) usage("sweep: --counts must list at least one count");
  if (models.empty()) usage("sweep: --models must list at least one model");
  auto s = load(g.scenario);
  if (seeds.empty()) seeds.push_back(g.has_seed ? g.seed : lp_scenario_seed(s.get()));
  std::vector<const char*> names;
  for (const auto& m : models) names.push_back(m.c_str());
  std::size_t failed = 0;
  check(lp_sweep(s.get(), names.data(), names.size(), counts.data(),
                 counts.size(), seeds.data(), seeds.size(), g.threads,
                 g.out.c_str(), &failed));
  std::printf("sweep: %zu cells, %zu failed; see %s/sweep.csv\n",
              counts.size() * models.size(), failed, g.out.c_str());
  return failed == 0 ? 0 : static_cast<int>(LP_ERR_INVALID_ARGUMENT);
}

int run_odr(const Globals& g, const std::string& poses_file,
            const std::vector<std::string>& inline_poses, std::size_t samples) {
  auto s = load(g.scenario);
  const std::uint64_t seed = g.has_seed ? g.seed : lp_scenario_seed(s.get());
  const auto poses = gather_poses(poses_file, inline_poses);
  if (poses.empty() && samples == 0) {
    usage("odr needs --poses FILE, --pose ..., or --samples N");
  }
  if (!poses.empty()) {
    lp_odr_report report{};
    check(lp_odr(s.get(), poses.data(), poses.size(), seed, g.threads,
                 g.out.c_str(), &report));
    std::printf("max VSR: %.10g m  ODR: %.6f (%zu/%zu, thres %zu)\n",
                report.max_vsr, report.odr, report.detections, report.trials,
                report.threshold);
  }
  if (samples > 0) {
    double rho = 0.0;
    check(lp_odr_scatter(s.get(), samples, seed, g.threads, g.out.c_str(), &rho));
    std::printf("scatter: %zu configurations, spearman(max VSR, ODR) = %.4f\n",
                samples, rho);
  }
  std::printf("results written to %s\n", g.out.c_str());
  return 0;
}

int run_export(const Globals& g, const std::string& record) {
  if (record.empty()) usage("export-voxels needs --record PATH");
  std::size_t rows = 0;
  check(lp_export_voxels(record.c_str(), g.out.c_str(), &rows));
  std::printf("wrote %zu voxels to %s/voxels.csv and voxels.ply\n", rows,
              g.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-LiDAR placement by min-max volume-to-surface ratio"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--scenario", g.scenario, "Scenario JSON file");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed (overrides scenario)");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  std::string poses_file, record;
  std::vector<std::string> inline_poses;
  std::vector<std::size_t> counts;
  std::vector<std::string> models;
  std::vector<std::uint64_t> seeds;
  std::size_t samples = 0;

  auto* opt = app.add_subcommand("optimize", "Run the bee colony optimizer");
  auto* ev = app.add_subcommand("evaluate", "Score explicit poses");
  ev->add_option("--poses", poses_file, "JSON with a 'configuration' array");
  ev->add_option("--pose", inline_poses, "x,y,z,yaw,pitch,roll (repeatable)");
  auto* sw = app.add_subcommand("sweep", "Optimize over lidar counts and models");
  sw->add_option("--counts", counts, "Lidar counts")->delimiter(',');
  sw->add_option("--models", models, "Model names from the scenario")->delimiter(',');
  sw->add_option("--seeds", seeds, "Seeds per cell")->delimiter(',');
  auto* od = app.add_subcommand("odr", "Estimate object detection rate");
  od->add_option("--poses", poses_file, "JSON with a 'configuration' array");
  od->add_option("--pose", inline_poses, "x,y,z,yaw,pitch,roll (repeatable)");
  od->add_option("--samples", samples, "Random in-bounds configurations to scatter");
  auto* ex = app.add_subcommand("export-voxels", "Write voxel CSV/PLY for a run record");
  ex->add_option("--record", record, "result.json or evaluation.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error[%s]: %s\n", lp_status_name(LP_ERR_USAGE), e.what());
    return LP_ERR_USAGE;
  }
  g.has_seed = seed_opt->count() > 0;

  try {
    if (*opt) return run_optimize(g);
    if (*ev) return run_evaluate(g, poses_file, inline_poses);
    if (*sw) return run_sweep(g, counts, models, seeds);
    if (*od) return run_odr(g, poses_file, inline_poses, samples);
    if (*ex) return run_export(g, record);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error[%s]: %s\n", lp_status_name(f.status),
                 f.message.c_str());
    return f.status;
  }
  return LP_ERR_USAGE;
}
