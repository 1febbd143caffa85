// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/cost.hpp"

#include <algorithm>

#include "lidarplace/error.hpp"

namespace lidarplace::cost {
namespace {

// (outer, middle, stacking) axes for each face plane.
constexpr std::array<std::array<int, 3>, 3> kScanOrder = {{
    {0, 1, 2},  // kXY: scan along z
    {0, 2, 1},  // kXZ: scan along y
    {1, 2, 0},  // kYZ: scan along x
}};

double face_area(const Vec3& e, Plane plane) {
  switch (plane) {
    case Plane::kXY:
      return e.x() * e.y();
    case Plane::kXZ:
      return e.x() * e.z();
    case Plane::kYZ:
      return e.y() * e.z();
  }
  return 0.0;
}

void require_non_empty(std::span<const VoxelIndex> voxels) {
  if (voxels.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty voxel set");
  }
}

}  // namespace

double volume(std::span<const VoxelIndex> voxels, const Vec3& resolution) {
  require_non_empty(voxels);
  return resolution.x() * resolution.y() * resolution.z() *
         static_cast<double>(voxels.size());
}

double surface_area_axis(std::span<const VoxelIndex> voxels,
                         const Vec3& resolution, Plane plane) {
  require_non_empty(voxels);
  const auto& order = kScanOrder[static_cast<int>(plane)];
  std::vector<VoxelIndex> sorted;
  sorted.reserve(voxels.size());
  for (const auto& v : voxels) sorted.push_back({v[order[0]], v[order[1]], v[order[2]]});
  std::sort(sorted.begin(), sorted.end());

  std::size_t cnt = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const auto& prev = sorted[i - 1];
    const auto& cur = sorted[i];
    if (cur[0] == prev[0] && cur[1] == prev[1] && cur[2] == prev[2] + 1) ++cnt;
  }
  const std::size_t sz = sorted.size();
  return static_cast<double>(2 * (sz - cnt)) * face_area(resolution, plane);
}

double surface_area(std::span<const VoxelIndex> voxels, const Vec3& resolution) {
  return surface_area_axis(voxels, resolution, Plane::kXY) +
         surface_area_axis(voxels, resolution, Plane::kXZ) +
         surface_area_axis(voxels, resolution, Plane::kYZ);
}

double vsr(std::span<const VoxelIndex> voxels, const Vec3& resolution) {
  return volume(voxels, resolution) / surface_area(voxels, resolution);
}

SubspaceMetrics metrics(const segmentation::SubspaceSet& s,
                        const Vec3& resolution) {
  SubspaceMetrics m;
  m.component_id = s.component_id;
  m.code = s.code;
  m.voxel_count = s.voxel_indices.size();
  m.volume = volume(s.voxel_indices, resolution);
  m.surface_area = surface_area(s.voxel_indices, resolution);
  m.vsr = m.volume / m.surface_area;
  m.inscribed_radius_estimate = 3.0 * m.vsr;
  return m;
}

Evaluation evaluate(const geometry::ConfigSet& configs,
                    std::span<const geometry::LidarModel> models,
                    const geometry::VoxelGrid& grid) {
  Evaluation ev;
  ev.labels = segmentation::first_level_labels(configs, models, grid);
  ev.segmentation = segmentation::connected_components(ev.labels, grid);
  const std::size_t count = ev.segmentation.component_count();
  ev.table.reserve(count);
  for (std::size_t id = 0; id < count; ++id) {
    ev.table.push_back(
        metrics(ev.segmentation.subspace(id, grid, ev.labels.space),
                grid.resolution()));
    if (id == 0 || ev.table[id].vsr > ev.objective) {
      ev.objective = ev.table[id].vsr;
      ev.worst_component = id;
    }
  }
  return ev;
}

double max_vsr(const geometry::ConfigSet& configs,
               std::span<const geometry::LidarModel> models,
               const geometry::VoxelGrid& grid) {
  const auto labels = segmentation::first_level_labels(configs, models, grid);
  const auto seg = segmentation::connected_components(labels, grid);
  const Vec3& e = grid.resolution();
  double worst = 0.0;
  std::vector<VoxelIndex> voxels;
  for (std::size_t id = 0; id < seg.component_count(); ++id) {
    voxels.clear();
    for (std::size_t n : seg.members(id)) voxels.push_back(grid.index(n));
    worst = std::max(worst, vsr(voxels, e));
  }
  return worst;
}

double max_vsr(const geometry::ConfigSet& configs,
               std::span<const geometry::LidarModel> models,
               const geometry::RoiSpec& roi) {
  return max_vsr(configs, models, geometry::build_voxel_grid(roi));
}

}  // namespace lidarplace::cost
