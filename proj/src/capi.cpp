// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/lidarplace.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "lidarplace/commands.hpp"
#include "lidarplace/error.hpp"

struct lp_scenario {
  lidarplace::scenario::Scenario value;
};

struct lp_run {
  lidarplace::commands::RunRecord value;
};

struct lp_evaluation {
  lidarplace::commands::EvaluationRecord value;
  std::size_t active_voxels = 0;
};

namespace {

using lidarplace::Error;
using lidarplace::ErrorCode;
namespace geometry = lidarplace::geometry;

thread_local std::string g_last_error;

lp_status fail(lp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
lp_status guarded(Fn&& fn) {
  try {
    fn();
    return LP_OK;
  } catch (const Error& e) {
    return fail(static_cast<lp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LP_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kUsage, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lp_pose to_c(const geometry::PoseConfig& p) {
  return {p.position.x(), p.position.y(), p.position.z(), p.yaw, p.pitch, p.roll};
}

geometry::ConfigSet from_c(const lp_pose* poses, std::size_t count) {
  require(poses != nullptr || count == 0, "poses is NULL");
  geometry::ConfigSet out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i].position = {poses[i].x, poses[i].y, poses[i].z};
    out[i].yaw = poses[i].yaw;
    out[i].pitch = poses[i].pitch;
    out[i].roll = poses[i].roll;
  }
  return out;
}

std::filesystem::path out_path(const char* out_dir) {
  return out_dir ? std::filesystem::path(out_dir) : std::filesystem::path();
}

}  // namespace

extern "C" {

const char* lp_version(void) { return "1.0.0"; }

const char* lp_status_name(lp_status status) {
  switch (status) {
    case LP_OK:
      return "LP_OK";
    case LP_ERR_USAGE:
      return "LP_ERR_USAGE";
    case LP_ERR_SCHEMA:
      return "LP_ERR_SCHEMA";
    case LP_ERR_IO:
      return "LP_ERR_IO";
    case LP_ERR_INVALID_ARGUMENT:
      return "LP_ERR_INVALID_ARGUMENT";
    case LP_ERR_INTERNAL:
      return "LP_ERR_INTERNAL";
  }
  return "LP_ERR_UNKNOWN";
}

const char* lp_last_error(void) { return g_last_error.c_str(); }

void lp_string_free(char* s) { std::free(s); }

lp_status lp_scenario_load(const char* path, lp_scenario** out) {
  return guarded([&] {
    require(path && out, "lp_scenario_load: NULL argument");
    *out = new lp_scenario{lidarplace::scenario::load_scenario(path)};
  });
}

lp_status lp_scenario_parse(const char* json_text, lp_scenario** out) {
  return guarded([&] {
    require(json_text && out, "lp_scenario_parse: NULL argument");
    *out = new lp_scenario{lidarplace::scenario::parse_scenario_text(json_text)};
  });
}

void lp_scenario_free(lp_scenario* s) { delete s; }

lp_status lp_scenario_canonical_json(const lp_scenario* s, char** out) {
  return guarded([&] {
    require(s && out, "lp_scenario_canonical_json: NULL argument");
    *out = dup_string(lidarplace::scenario::canonical_text(s->value));
  });
}

lp_status lp_scenario_digest(const lp_scenario* s, char out[65]) {
  return guarded([&] {
    require(s && out, "lp_scenario_digest: NULL argument");
    const std::string d = lidarplace::scenario::digest(s->value);
    std::memcpy(out, d.c_str(), 65);
  });
}

size_t lp_scenario_lidar_count(const lp_scenario* s) {
  return s ? s->value.lidar_count() : 0;
}

uint64_t lp_scenario_seed(const lp_scenario* s) {
  return s ? s->value.abc.rng_seed : 0;
}

lp_status lp_poses_load(const char* path, lp_pose** poses, size_t* count) {
  return guarded([&] {
    require(path && poses && count, "lp_poses_load: NULL argument");
    const auto configs = lidarplace::scenario::load_poses(path);
    auto* buf = static_cast<lp_pose*>(std::malloc(sizeof(lp_pose) * configs.size()));
    if (!buf) throw std::bad_alloc();
    for (std::size_t i = 0; i < configs.size(); ++i) buf[i] = to_c(configs[i]);
    *poses = buf;
    *count = configs.size();
  });
}

void lp_poses_free(lp_pose* poses) { std::free(poses); }

lp_status lp_optimize(const lp_scenario* s, const lp_run_options* opts,
                      lp_run** out) {
  return guarded([&] {
    require(s && out, "lp_optimize: NULL argument");
    const std::uint64_t seed =
        opts && opts->has_seed ? opts->seed : s->value.abc.rng_seed;
    const int threads = opts ? opts->threads : 1;
    *out = new lp_run{lidarplace::commands::optimize(s->value, seed, threads)};
  });
}

void lp_run_free(lp_run* run) { delete run; }

double lp_run_objective(const lp_run* run) {
  return run ? run->value.objective() : 0.0;
}

uint64_t lp_run_seed(const lp_run* run) { return run ? run->value.seed : 0; }

double lp_run_wall_seconds(const lp_run* run) {
  return run ? run->value.wall_seconds : 0.0;
}

size_t lp_run_pose_count(const lp_run* run) {
  return run ? run->value.configuration.size() : 0;
}

lp_status lp_run_pose(const lp_run* run, size_t i, lp_pose* out) {
  return guarded([&] {
    require(run && out, "lp_run_pose: NULL argument");
    if (i >= run->value.configuration.size()) {
      throw Error(ErrorCode::kInvalidArgument, "lp_run_pose: index out of range");
    }
    *out = to_c(run->value.configuration[i]);
  });
}

size_t lp_run_history_length(const lp_run* run) {
  return run ? run->value.history.size() : 0;
}

lp_status lp_run_history(const lp_run* run, size_t i, double* best,
                         double* mean) {
  return guarded([&] {
    require(run, "lp_run_history: NULL run");
    if (i >= run->value.history.size()) {
      throw Error(ErrorCode::kInvalidArgument, "lp_run_history: index out of range");
    }
    if (best) *best = run->value.history[i].best_cost;
    if (mean) *mean = run->value.history[i].mean_cost;
  });
}

size_t lp_run_subspace_count(const lp_run* run) {
  return run ? run->value.evaluation.table.size() : 0;
}

lp_status lp_run_write(const lp_run* run, const char* out_dir) {
  return guarded([&] {
    require(run && out_dir, "lp_run_write: NULL argument");
    lidarplace::commands::write_run(run->value, out_dir);
  });
}

lp_status lp_evaluate(const lp_scenario* s, const lp_pose* poses, size_t count,
                      lp_evaluation** out) {
  return guarded([&] {
    require(s && out, "lp_evaluate: NULL argument");
    auto rec = lidarplace::commands::evaluate(s->value, from_c(poses, count));
    const std::size_t active = geometry::VoxelGrid(s->value.roi).active_count();
    *out = new lp_evaluation{std::move(rec), active};
  });
}

void lp_evaluation_free(lp_evaluation* ev) { delete ev; }

double lp_evaluation_objective(const lp_evaluation* ev) {
  return ev ? ev->value.evaluation.objective : 0.0;
}

size_t lp_evaluation_subspace_count(const lp_evaluation* ev) {
  return ev ? ev->value.evaluation.table.size() : 0;
}

lp_status lp_evaluation_subspace(const lp_evaluation* ev, size_t i,
                                 lp_subspace_metrics* out) {
  return guarded([&] {
    require(ev && out, "lp_evaluation_subspace: NULL argument");
    const auto& table = ev->value.evaluation.table;
    if (i >= table.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "lp_evaluation_subspace: index out of range");
    }
    const auto& m = table[i];
    *out = {m.component_id, m.voxel_count,  m.volume,
            m.surface_area, m.vsr,          m.inscribed_radius_estimate};
  });
}

size_t lp_evaluation_distinct_codes(const lp_evaluation* ev) {
  return ev ? lidarplace::segmentation::distinct_code_count(ev->value.evaluation.labels)
            : 0;
}

uint64_t lp_evaluation_code_space_size(const lp_evaluation* ev) {
  return ev ? ev->value.evaluation.labels.space.size() : 0;
}

size_t lp_evaluation_active_voxels(const lp_evaluation* ev) {
  return ev ? ev->active_voxels : 0;
}

size_t lp_evaluation_warning_count(const lp_evaluation* ev) {
  return ev ? ev->value.warnings.size() : 0;
}

const char* lp_evaluation_warning(const lp_evaluation* ev, size_t i) {
  if (!ev || i >= ev->value.warnings.size()) return nullptr;
  return ev->value.warnings[i].c_str();
}

lp_status lp_evaluation_write(const lp_evaluation* ev, const char* out_dir) {
  return guarded([&] {
    require(ev && out_dir, "lp_evaluation_write: NULL argument");
    lidarplace::commands::write_evaluation(ev->value, out_dir);
  });
}

lp_status lp_sweep(const lp_scenario* s, const char* const* models,
                   size_t model_count, const size_t* counts, size_t count_count,
                   const uint64_t* seeds, size_t seed_count, int threads,
                   const char* out_dir, size_t* failed_cells) {
  return guarded([&] {
    require(s != nullptr, "lp_sweep: NULL scenario");
    require(models || model_count == 0, "lp_sweep: NULL models");
    require(counts || count_count == 0, "lp_sweep: NULL counts");
    require(seeds || seed_count == 0, "lp_sweep: NULL seeds");
    std::vector<std::string> m(models, models + model_count);
    std::vector<std::size_t> c(counts, counts + count_count);
    std::vector<std::uint64_t> sd(seeds, seeds + seed_count);
    const auto cells =
        lidarplace::commands::sweep(s->value, m, c, sd, threads, out_path(out_dir));
    if (failed_cells) {
      *failed_cells = 0;
      for (const auto& cell : cells) *failed_cells += cell.error.empty() ? 0 : 1;
    }
  });
}

lp_status lp_odr(const lp_scenario* s, const lp_pose* poses, size_t count,
                 uint64_t seed, int threads, const char* out_dir,
                 lp_odr_report* out) {
  return guarded([&] {
    require(s != nullptr, "lp_odr: NULL scenario");
    require(poses != nullptr && count > 0, "lp_odr: poses are required");
    const auto run =
        lidarplace::commands::odr_for(s->value, from_c(poses, count), seed, threads);
    if (out_dir) lidarplace::commands::write_odr(s->value, run, out_dir);
    if (out) {
      *out = {run.report.trials, run.report.detections, run.report.threshold,
              run.report.odr, run.max_vsr};
    }
  });
}

lp_status lp_odr_scatter(const lp_scenario* s, size_t samples, uint64_t seed,
                         int threads, const char* out_dir, double* spearman) {
  return guarded([&] {
    require(s != nullptr, "lp_odr_scatter: NULL scenario");
    const auto points = lidarplace::commands::odr_scatter(
        s->value, samples, seed, threads, out_path(out_dir));
    if (spearman) {
      std::vector<double> v, r;
      for (const auto& p : points) {
        v.push_back(p.max_vsr);
        r.push_back(p.odr);
      }
      *spearman = lidarplace::odr::spearman(v, r);
    }
  });
}

lp_status lp_export_voxels(const char* record_path, const char* out_dir,
                           size_t* rows) {
  return guarded([&] {
    require(record_path && out_dir, "lp_export_voxels: NULL argument");
    const std::size_t n = lidarplace::commands::export_voxels(record_path, out_dir);
    if (rows) *rows = n;
  });
}

}  // extern "C"
