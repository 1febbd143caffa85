// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
//
// Volume, surface area and volume-to-surface ratio (VSR) of voxel sets, and
// the min-max placement objective: the largest VSR over all subspaces.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lidarplace/geometry.hpp"
#include "lidarplace/segmentation.hpp"

namespace lidarplace::cost {

using geometry::Vec3;
using geometry::VoxelIndex;

/// Face plane whose area an axis pass accumulates. kXY faces are stacked
/// along z, kXZ along y, kYZ along x.
enum class Plane { kXY, kXZ, kYZ };

double volume(std::span<const VoxelIndex> voxels, const Vec3& resolution);

/// Sort-and-scan surface area for one face plane: sorts the voxels so the
/// stacking axis varies fastest, counts consecutive face-sharing pairs `cnt`
/// and returns 2 (size - cnt) * face_area.
double surface_area_axis(std::span<const VoxelIndex> voxels,
                         const Vec3& resolution, Plane plane);

/// Sum of the kXY, kXZ and kYZ contributions, in that order.
double surface_area(std::span<const VoxelIndex> voxels, const Vec3& resolution);

double vsr(std::span<const VoxelIndex> voxels, const Vec3& resolution);

struct SubspaceMetrics {
  int component_id = 0;
  segmentation::SubspaceCode code;
  std::size_t voxel_count = 0;
  double volume = 0.0;
  double surface_area = 0.0;
  double vsr = 0.0;
  /// 3 V / S, reported for interpretation only.
  double inscribed_radius_estimate = 0.0;
};

SubspaceMetrics metrics(const segmentation::SubspaceSet& s,
                        const Vec3& resolution);

/// Full pipeline output for one configuration set.
struct Evaluation {
  segmentation::Labels labels;
  segmentation::Segmentation segmentation;
  std::vector<SubspaceMetrics> table;  // indexed by component id
  double objective = 0.0;
  std::size_t worst_component = 0;
};

Evaluation evaluate(const geometry::ConfigSet& configs,
                    std::span<const geometry::LidarModel> models,
                    const geometry::VoxelGrid& grid);

/// max_j VSR(S_j) for the configuration set on a prebuilt grid.
double max_vsr(const geometry::ConfigSet& configs,
               std::span<const geometry::LidarModel> models,
               const geometry::VoxelGrid& grid);

double max_vsr(const geometry::ConfigSet& configs,
               std::span<const geometry::LidarModel> models,
               const geometry::RoiSpec& roi);

}  // namespace lidarplace::cost
