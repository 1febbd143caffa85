// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "lidarplace/error.hpp"
#include "lidarplace/placement.hpp"

namespace lidarplace::commands {
namespace {

using nlohmann::json;

constexpr std::uint64_t kScatterPhase = 0x5CA7;

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + (dir / name).string());
  return out;
}

void write_text(const fs::path& dir, const std::string& name,
                const std::string& text) {
  auto out = open_out(dir, name);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + (dir / name).string());
}

json metrics_json(const cost::SubspaceMetrics& m) {
  return {{"component", m.component_id},
          {"code", m.code.to_string()},
          {"voxels", m.voxel_count},
          {"volume", m.volume},
          {"surface_area", m.surface_area},
          {"vsr", m.vsr},
          {"inscribed_radius", m.inscribed_radius_estimate}};
}

json evaluation_summary(const cost::Evaluation& ev) {
  json table = json::array();
  for (const auto& m : ev.table) table.push_back(metrics_json(m));
  return {{"objective", ev.objective},
          {"worst_component", ev.worst_component},
          {"subspace_count", ev.table.size()},
          {"distinct_codes", segmentation::distinct_code_count(ev.labels)},
          {"code_space_size", ev.labels.space.size()},
          {"subspaces", table}};
}

std::string subspaces_csv(const cost::Evaluation& ev) {
  std::ostringstream os;
  os << "component,code,voxels,volume,surface_area,vsr,inscribed_radius\n";
  for (const auto& m : ev.table) {
    os << m.component_id << ',' << m.code.to_string() << ',' << m.voxel_count
       << ',' << format_double(m.volume) << ',' << format_double(m.surface_area)
       << ',' << format_double(m.vsr) << ','
       << format_double(m.inscribed_radius_estimate) << '\n';
  }
  return os.str();
}

std::array<int, 3> component_color(std::int32_t id) {
  std::uint64_t h = static_cast<std::uint64_t>(id) * 0x9e3779b97f4a7c15ULL;
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 32;
  return {static_cast<int>(64 + (h & 0xBF)), static_cast<int>(64 + ((h >> 8) & 0xBF)),
          static_cast<int>(64 + ((h >> 16) & 0xBF))};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void check_pose_count(const scenario::Scenario& s,
                      const geometry::ConfigSet& configuration) {
  if (configuration.size() != s.lidar_count()) {
    throw Error(ErrorCode::kUsage,
                "got " + std::to_string(configuration.size()) +
                    " poses but the scenario has " +
                    std::to_string(s.lidar_count()) + " lidars");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

RunRecord optimize(const scenario::Scenario& s, std::uint64_t seed,
                   int threads) {
  const auto start = std::chrono::steady_clock::now();
  s.validate();
  const placement::PlacementProblem problem(s.roi, s.expanded_models(),
                                            s.bounds);
  abc::AbcParams params = s.abc;
  params.rng_seed = seed;
  params.threads = threads;
  const abc::SolveResult solved = problem.solve(params);

  RunRecord run;
  run.scenario = s;
  run.scenario_digest = scenario::digest(s);
  run.seed = seed;
  run.configuration = problem.decode(solved.best_solution);
  run.evaluation =
      cost::evaluate(run.configuration, problem.models(), problem.grid());
  run.history = solved.history;
  run.evaluations = solved.evaluations;
  run.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return run;
}

void write_run(const RunRecord& run, const fs::path& out_dir) {
  json doc = evaluation_summary(run.evaluation);
  doc["kind"] = "optimize";
  doc["scenario_digest"] = run.scenario_digest;
  doc["seed"] = run.seed;
  doc["evaluations"] = run.evaluations;
  doc["configuration"] = scenario::poses_to_json(
      run.configuration, run.scenario.expanded_model_names());
  doc["scenario"] = scenario::to_json(run.scenario);
  write_text(out_dir, "result.json", doc.dump(2) + "\n");

  std::ostringstream conv;
  conv << "iter,best,mean\n";
  for (std::size_t i = 0; i < run.history.size(); ++i) {
    conv << (i + 1) << ',' << format_double(run.history[i].best_cost) << ','
         << format_double(run.history[i].mean_cost) << '\n';
  }
  write_text(out_dir, "convergence.csv", conv.str());
  write_text(out_dir, "subspaces.csv", subspaces_csv(run.evaluation));
  write_voxels(geometry::VoxelGrid(run.scenario.roi), run.evaluation, out_dir);

  const json timing = {{"scenario_digest", run.scenario_digest},
                       {"wall_seconds", run.wall_seconds}};
  write_text(out_dir, "timing.json", timing.dump(2) + "\n");
}

EvaluationRecord evaluate(const scenario::Scenario& s,
                          const geometry::ConfigSet& configuration) {
  s.validate();
  check_pose_count(s, configuration);
  EvaluationRecord rec;
  rec.scenario = s;
  rec.scenario_digest = scenario::digest(s);
  rec.configuration = configuration;
  for (std::size_t i = 0; i < configuration.size(); ++i) {
    if (!configuration[i].position.allFinite() ||
        !std::isfinite(configuration[i].yaw) ||
        !std::isfinite(configuration[i].pitch) ||
        !std::isfinite(configuration[i].roll)) {
      throw Error(ErrorCode::kSchema,
                  "configuration[" + std::to_string(i) + "] is not finite");
    }
    if (!s.bounds.contains(configuration[i])) {
      rec.warnings.push_back("configuration[" + std::to_string(i) +
                             "] lies outside the scenario bounds");
    }
  }
  const geometry::VoxelGrid grid(s.roi);
  const auto models = s.expanded_models();
  rec.evaluation = cost::evaluate(configuration, models, grid);
  return rec;
}

void write_evaluation(const EvaluationRecord& rec, const fs::path& out_dir) {
  json doc = evaluation_summary(rec.evaluation);
  doc["kind"] = "evaluate";
  doc["scenario_digest"] = rec.scenario_digest;
  doc["warnings"] = rec.warnings;
  doc["configuration"] = scenario::poses_to_json(
      rec.configuration, rec.scenario.expanded_model_names());
  doc["scenario"] = scenario::to_json(rec.scenario);
  write_text(out_dir, "evaluation.json", doc.dump(2) + "\n");
  write_text(out_dir, "subspaces.csv", subspaces_csv(rec.evaluation));
}

std::vector<SweepCell> sweep(const scenario::Scenario& s,
                             const std::vector<std::string>& models,
                             const std::vector<std::size_t>& counts,
                             const std::vector<std::uint64_t>& seeds,
                             int threads, const fs::path& out_dir) {
  if (models.empty()) throw Error(ErrorCode::kUsage, "sweep: empty models list");
  if (counts.empty()) throw Error(ErrorCode::kUsage, "sweep: empty counts list");
  if (seeds.empty()) throw Error(ErrorCode::kUsage, "sweep: empty seeds list");

  std::vector<SweepCell> cells;
  for (const auto& model : models) {
    for (std::size_t count : counts) {
      SweepCell cell{model, count, seeds, {}, 0.0, {}};
      try {
        scenario::Scenario cs = s;
        cs.lidars = {{model, count}};
        cs.validate();
        for (std::uint64_t seed : seeds) {
          cell.best_max_vsr.push_back(optimize(cs, seed, threads).objective());
        }
        cell.median = median(cell.best_max_vsr);
      } catch (const Error& e) {
        cell.error = e.what();
        cell.best_max_vsr.clear();
        cell.median = std::nan("");
      }
      cells.push_back(std::move(cell));
    }
  }

  if (!out_dir.empty()) {
    std::ostringstream summary, runs, failures;
    summary << "model,count,best_max_vsr\n";
    runs << "model,count,seed,best_max_vsr\n";
    failures << "model,count,error\n";
    bool any_failed = false;
    for (const auto& c : cells) {
      summary << c.model << ',' << c.count << ',' << format_double(c.median) << '\n';
      for (std::size_t i = 0; i < c.best_max_vsr.size(); ++i) {
        runs << c.model << ',' << c.count << ',' << c.seeds[i] << ','
             << format_double(c.best_max_vsr[i]) << '\n';
      }
      if (!c.error.empty()) {
        any_failed = true;
        std::string msg = c.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        failures << c.model << ',' << c.count << ',' << msg << '\n';
      }
    }
    write_text(out_dir, "sweep.csv", summary.str());
    write_text(out_dir, "sweep_runs.csv", runs.str());
    if (any_failed) write_text(out_dir, "sweep_failures.csv", failures.str());
  }
  return cells;
}

OdrRun odr_for(const scenario::Scenario& s,
               const geometry::ConfigSet& configuration, std::uint64_t seed,
               int threads) {
  s.validate();
  check_pose_count(s, configuration);
  const geometry::VoxelGrid grid(s.roi);
  const auto models = s.expanded_models();
  const auto ev = cost::evaluate(configuration, models, grid);
  OdrRun run;
  run.scenario_digest = scenario::digest(s);
  run.configuration = configuration;
  run.max_vsr = ev.objective;
  run.report = odr::estimate_odr(ev.segmentation, grid, s.roi, s.odr.object,
                                 s.odr.trials, s.odr.threshold, seed, threads);
  return run;
}

void write_odr(const scenario::Scenario& s, const OdrRun& run,
               const fs::path& out_dir) {
  const json doc = {
      {"kind", "odr"},
      {"scenario_digest", run.scenario_digest},
      {"configuration",
       scenario::poses_to_json(run.configuration, s.expanded_model_names())},
      {"max_vsr", run.max_vsr},
      {"trials", run.report.trials},
      {"detections", run.report.detections},
      {"threshold", run.report.threshold},
      {"odr", run.report.odr},
      {"object_dims", json::array({s.odr.object.dims.x(), s.odr.object.dims.y(),
                                   s.odr.object.dims.z()})}};
  write_text(out_dir, "odr.json", doc.dump(2) + "\n");
  write_text(out_dir, "odr_scatter.csv",
             "max_vsr,odr\n" + format_double(run.max_vsr) + "," +
                 format_double(run.report.odr) + "\n");
}

std::vector<ScatterPoint> odr_scatter(const scenario::Scenario& s,
                                      std::size_t samples, std::uint64_t seed,
                                      int threads, const fs::path& out_dir) {
  if (samples < 2) throw Error(ErrorCode::kUsage, "odr: need at least 2 samples");
  s.validate();
  const placement::PlacementProblem problem(s.roi, s.expanded_models(), s.bounds);
  const abc::Bounds box = problem.decision_bounds();

  std::vector<ScatterPoint> points;
  for (std::size_t i = 0; i < samples; ++i) {
    abc::Rng rng(abc::substream_seed(seed, i, kScatterPhase, 0));
    std::vector<double> x(box.dim());
    for (std::size_t j = 0; j < x.size(); ++j) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      x[j] = box.lower[j] + u(rng) * (box.upper[j] - box.lower[j]);
    }
    box.clamp(x);
    const auto configs = problem.decode(x);
    const auto ev = cost::evaluate(configs, problem.models(), problem.grid());
    const auto report =
        odr::estimate_odr(ev.segmentation, problem.grid(), s.roi, s.odr.object,
                          s.odr.trials, s.odr.threshold, seed, threads);
    points.push_back({ev.objective, report.odr});
  }

  if (!out_dir.empty()) {
    std::vector<double> vsr, rate;
    std::ostringstream csv;
    csv << "max_vsr,odr\n";
    for (const auto& p : points) {
      csv << format_double(p.max_vsr) << ',' << format_double(p.odr) << '\n';
      vsr.push_back(p.max_vsr);
      rate.push_back(p.odr);
    }
    write_text(out_dir, "odr_scatter.csv", csv.str());
    const double rho = odr::spearman(vsr, rate);
    const json doc = {{"kind", "odr_scatter"},
                      {"scenario_digest", scenario::digest(s)},
                      {"samples", samples},
                      {"seed", seed},
                      {"trials", s.odr.trials},
                      {"threshold", s.odr.threshold},
                      {"spearman", std::isfinite(rho) ? json(rho) : json(nullptr)}};
    write_text(out_dir, "odr_scatter.json", doc.dump(2) + "\n");
  }
  return points;
}

std::size_t write_voxels(const geometry::VoxelGrid& grid,
                         const cost::Evaluation& ev, const fs::path& out_dir) {
  std::ostringstream csv, verts;
  csv << "x,y,z,code,component\n";
  std::size_t rows = 0;
  for (std::size_t n : grid.active_indices()) {
    const auto c = grid.center(n);
    const std::int32_t id = ev.segmentation.component_of(n);
    const auto code = ev.labels.space.unpack(static_cast<std::uint64_t>(ev.labels.key[n]));
    const std::string x = format_double(c.x()), y = format_double(c.y()),
                      z = format_double(c.z());
    csv << x << ',' << y << ',' << z << ',' << code.to_string() << ',' << id << '\n';
    const auto rgb = component_color(id);
    verts << x << ' ' << y << ' ' << z << ' ' << rgb[0] << ' ' << rgb[1] << ' '
          << rgb[2] << '\n';
    ++rows;
  }
  write_text(out_dir, "voxels.csv", csv.str());

  std::ostringstream ply;
  ply << "ply\nformat ascii 1.0\ncomment lidarplace voxel centers\n"
      << "element vertex " << rows << "\n"
      << "property float x\nproperty float y\nproperty float z\n"
      << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      << "end_header\n"
      << verts.str();
  write_text(out_dir, "voxels.ply", ply.str());
  return rows;
}

std::size_t export_voxels(const fs::path& record, const fs::path& out_dir) {
  if (!fs::exists(record)) {
    throw Error(ErrorCode::kUsage, "run record not found: " + record.string());
  }
  const json doc = scenario::read_json_file(record);
  if (!doc.is_object() || !doc.contains("scenario") || !doc.contains("configuration")) {
    throw Error(ErrorCode::kSchema,
                record.string() + ": not a run record (needs 'scenario' and 'configuration')");
  }
  const auto s = scenario::parse_scenario(doc["scenario"]);
  if (doc.contains("scenario_digest") &&
      doc["scenario_digest"] != scenario::digest(s)) {
    throw Error(ErrorCode::kSchema, record.string() + ": scenario digest mismatch");
  }
  const auto configuration = scenario::parse_poses(doc);
  check_pose_count(s, configuration);
  const geometry::VoxelGrid grid(s.roi);
  const auto models = s.expanded_models();
  const auto ev = cost::evaluate(configuration, models, grid);
  return write_voxels(grid, ev, out_dir);
}

}  // namespace lidarplace::commands
