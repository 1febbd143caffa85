// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario-level commands behind the CLI: optimize, evaluate, sweep, odr and
// voxel export, plus the writers for their result files. Every file except
// timing.json is a pure function of (scenario, seed), so repeated runs are
// byte-identical regardless of thread count.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lidarplace/abc.hpp"
#include "lidarplace/cost.hpp"
#include "lidarplace/odr.hpp"
#include "lidarplace/scenario.hpp"

namespace lidarplace::commands {

namespace fs = std::filesystem;

struct RunRecord {
  scenario::Scenario scenario;
  std::string scenario_digest;
  std::uint64_t seed = 0;
  geometry::ConfigSet configuration;
  cost::Evaluation evaluation;
  std::vector<abc::IterationStats> history;
  std::size_t evaluations = 0;
  double wall_seconds = 0.0;

  double objective() const { return evaluation.objective; }
};

struct EvaluationRecord {
  scenario::Scenario scenario;
  std::string scenario_digest;
  geometry::ConfigSet configuration;
  cost::Evaluation evaluation;
  /// Poses outside the scenario bounds (evaluated anyway).
  std::vector<std::string> warnings;
};

RunRecord optimize(const scenario::Scenario& s, std::uint64_t seed,
                   int threads);
/// result.json, convergence.csv, subspaces.csv, voxels.csv, voxels.ply and
/// timing.json.
void write_run(const RunRecord& run, const fs::path& out_dir);

EvaluationRecord evaluate(const scenario::Scenario& s,
                          const geometry::ConfigSet& configuration);
/// evaluation.json and subspaces.csv.
void write_evaluation(const EvaluationRecord& rec, const fs::path& out_dir);

struct SweepCell {
  std::string model;
  std::size_t count = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> best_max_vsr;  // per seed
  double median = 0.0;
  std::string error;  // non-empty when the cell failed
};

/// Optimizes every (model, count) cell for each seed. Failed cells are
/// recorded and the sweep continues. Writes sweep.csv (median per cell),
/// sweep_runs.csv (per seed) and sweep_failures.csv when out_dir is set.
std::vector<SweepCell> sweep(const scenario::Scenario& s,
                             const std::vector<std::string>& models,
                             const std::vector<std::size_t>& counts,
                             const std::vector<std::uint64_t>& seeds,
                             int threads, const fs::path& out_dir);

struct OdrRun {
  std::string scenario_digest;
  geometry::ConfigSet configuration;
  double max_vsr = 0.0;
  odr::OdrReport report;
};

OdrRun odr_for(const scenario::Scenario& s,
               const geometry::ConfigSet& configuration, std::uint64_t seed,
               int threads);
void write_odr(const scenario::Scenario& s, const OdrRun& run,
               const fs::path& out_dir);

struct ScatterPoint {
  double max_vsr = 0.0;
  double odr = 0.0;
};

/// Samples configurations uniformly inside the scenario bounds and pairs
/// each one's max VSR with its estimated ODR. Writes odr_scatter.csv and
/// odr_scatter.json (with the Spearman correlation) when out_dir is set.
std::vector<ScatterPoint> odr_scatter(const scenario::Scenario& s,
                                      std::size_t samples, std::uint64_t seed,
                                      int threads, const fs::path& out_dir);

/// Reloads a result.json / evaluation.json and writes voxels.csv and
/// voxels.ply. Returns the number of rows written.
std::size_t export_voxels(const fs::path& record, const fs::path& out_dir);

std::size_t write_voxels(const geometry::VoxelGrid& grid,
                         const cost::Evaluation& ev, const fs::path& out_dir);

/// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace lidarplace::commands
