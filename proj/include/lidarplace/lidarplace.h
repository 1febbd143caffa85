/*
 * Copyright 2026 The lidarplace Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to liblidarplace: multi-LiDAR placement by min-max
 * volume-to-surface ratio (VSR) of non-detectable subspaces.
 *
 * Objects are opaque handles created by lp_*_load / lp_optimize / lp_evaluate
 * and released with the matching lp_*_free. Every fallible call returns an
 * lp_status; on failure lp_last_error() holds a message for the calling
 * thread until its next failing call.
 */
#ifndef LIDARPLACE_H_
#define LIDARPLACE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LIDARPLACE_BUILDING)
#define LP_API __declspec(dllexport)
#else
#define LP_API __declspec(dllimport)
#endif
#else
#define LP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum lp_status {
  LP_OK = 0,
  LP_ERR_USAGE = 2,
  LP_ERR_SCHEMA = 3,
  LP_ERR_IO = 4,
  LP_ERR_INVALID_ARGUMENT = 5,
  LP_ERR_INTERNAL = 6
} lp_status;

typedef struct lp_scenario lp_scenario;
typedef struct lp_run lp_run;
typedef struct lp_evaluation lp_evaluation;

/* Position in meters, angles in radians. */
typedef struct lp_pose {
  double x, y, z;
  double yaw, pitch, roll;
} lp_pose;

typedef struct lp_subspace_metrics {
  int32_t component_id;
  size_t voxel_count;
  double volume;
  double surface_area;
  double vsr;
  double inscribed_radius;
} lp_subspace_metrics;

typedef struct lp_odr_report {
  size_t trials;
  size_t detections;
  size_t threshold;
  double odr;
  double max_vsr;
} lp_odr_report;

typedef struct lp_run_options {
  int has_seed;  /* nonzero: use `seed` instead of the scenario's seed */
  uint64_t seed;
  int threads;   /* 0 = runtime default */
} lp_run_options;

LP_API const char* lp_version(void);
LP_API const char* lp_status_name(lp_status status);
LP_API const char* lp_last_error(void);

/* Strings returned through char** are owned by the caller. */
LP_API void lp_string_free(char* s);

/* ---- scenarios ---------------------------------------------------------- */

LP_API lp_status lp_scenario_load(const char* path, lp_scenario** out);
LP_API lp_status lp_scenario_parse(const char* json_text, lp_scenario** out);
LP_API void lp_scenario_free(lp_scenario* s);
LP_API lp_status lp_scenario_canonical_json(const lp_scenario* s, char** out);
/* Writes 64 hex characters plus NUL into out. */
LP_API lp_status lp_scenario_digest(const lp_scenario* s, char out[65]);
LP_API size_t lp_scenario_lidar_count(const lp_scenario* s);
LP_API uint64_t lp_scenario_seed(const lp_scenario* s);

/* Reads poses from a JSON file holding a "configuration" array (as in
 * result.json / evaluation.json) or a bare array. Free with lp_poses_free. */
LP_API lp_status lp_poses_load(const char* path, lp_pose** poses, size_t* count);
LP_API void lp_poses_free(lp_pose* poses);

/* ---- optimize ----------------------------------------------------------- */

LP_API lp_status lp_optimize(const lp_scenario* s, const lp_run_options* opts,
                             lp_run** out);
LP_API void lp_run_free(lp_run* run);
LP_API double lp_run_objective(const lp_run* run);
LP_API uint64_t lp_run_seed(const lp_run* run);
LP_API double lp_run_wall_seconds(const lp_run* run);
LP_API size_t lp_run_pose_count(const lp_run* run);
LP_API lp_status lp_run_pose(const lp_run* run, size_t i, lp_pose* out);
LP_API size_t lp_run_history_length(const lp_run* run);
LP_API lp_status lp_run_history(const lp_run* run, size_t i, double* best,
                                double* mean);
LP_API size_t lp_run_subspace_count(const lp_run* run);
/* Writes result.json, convergence.csv, subspaces.csv, voxels.csv,
 * voxels.ply and timing.json. */
LP_API lp_status lp_run_write(const lp_run* run, const char* out_dir);

/* ---- evaluate ----------------------------------------------------------- */

LP_API lp_status lp_evaluate(const lp_scenario* s, const lp_pose* poses,
                             size_t count, lp_evaluation** out);
LP_API void lp_evaluation_free(lp_evaluation* ev);
LP_API double lp_evaluation_objective(const lp_evaluation* ev);
LP_API size_t lp_evaluation_subspace_count(const lp_evaluation* ev);
LP_API lp_status lp_evaluation_subspace(const lp_evaluation* ev, size_t i,
                                        lp_subspace_metrics* out);
LP_API size_t lp_evaluation_distinct_codes(const lp_evaluation* ev);
LP_API uint64_t lp_evaluation_code_space_size(const lp_evaluation* ev);
LP_API size_t lp_evaluation_active_voxels(const lp_evaluation* ev);
LP_API size_t lp_evaluation_warning_count(const lp_evaluation* ev);
LP_API const char* lp_evaluation_warning(const lp_evaluation* ev, size_t i);
/* Writes evaluation.json and subspaces.csv. */
LP_API lp_status lp_evaluation_write(const lp_evaluation* ev,
                                     const char* out_dir);

/* ---- sweep -------------------------------------------------------------- */

/* Optimizes each (model, count) cell once per seed and writes sweep.csv,
 * sweep_runs.csv and, if any cell failed, sweep_failures.csv. */
LP_API lp_status lp_sweep(const lp_scenario* s, const char* const* models,
                          size_t model_count, const size_t* counts,
                          size_t count_count, const uint64_t* seeds,
                          size_t seed_count, int threads, const char* out_dir,
                          size_t* failed_cells);

/* ---- object detection rate ---------------------------------------------- */

/* Writes odr.json and a one-row odr_scatter.csv when out_dir is non-NULL. */
LP_API lp_status lp_odr(const lp_scenario* s, const lp_pose* poses,
                        size_t count, uint64_t seed, int threads,
                        const char* out_dir, lp_odr_report* out);
/* Random in-bounds configurations; writes odr_scatter.csv / .json. */
LP_API lp_status lp_odr_scatter(const lp_scenario* s, size_t samples,
                                uint64_t seed, int threads,
                                const char* out_dir, double* spearman);

/* ---- export ------------------------------------------------------------- */

LP_API lp_status lp_export_voxels(const char* record_path, const char* out_dir,
                                  size_t* rows);

#ifdef __cplusplus
}
#endif

#endif /* LIDARPLACE_H_ */
