// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
//
// Two-level segmentation of a voxel grid into non-detectable subspaces.
//
// First level: every active voxel gets one digit per LiDAR telling which
// inter-beam band its center falls in (0 below the lowest cone, N_b above the
// highest). The digit vector is the voxel's base-n code.
//
// Second level: voxels sharing a code are split into face-connected (6-way)
// components by breadth-first search. Each component is one subspace.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lidarplace/geometry.hpp"

namespace lidarplace::segmentation {

using geometry::ConfigSet;
using geometry::LidarModel;
using geometry::Vec3;
using geometry::VoxelGrid;
using geometry::VoxelIndex;

/// Digit for a point already expressed in the LiDAR's local frame. Returns
/// the number of beam cones at or below the point, i.e. the unique k in
/// [0, N_b] with tan(p[k-1]) r <= z < tan(p[k]) r.
int beam_digit(const LidarModel& model, const Vec3& local_point);

struct SubspaceCode {
  std::vector<int> digits;

  bool operator==(const SubspaceCode&) const = default;
  /// Digits joined with '_', e.g. "3_0_16".
  std::string to_string() const;
};

/// Mixed-radix packing of codes; radix i is beam_count(i) + 1.
class CodeSpace {
 public:
  CodeSpace() = default;
  explicit CodeSpace(std::span<const LidarModel> models);

  /// Number of representable codes, prod(N_b_i + 1).
  std::uint64_t size() const { return size_; }
  std::size_t lidar_count() const { return radices_.size(); }

  std::uint64_t pack(const SubspaceCode& code) const;
  SubspaceCode unpack(std::uint64_t key) const;

 private:
  std::vector<std::uint64_t> radices_;
  std::uint64_t size_ = 1;
};

/// Per-voxel packed codes; -1 marks inactive voxels.
struct Labels {
  CodeSpace space;
  std::vector<std::int64_t> key;
};

Labels first_level_labels(const ConfigSet& configs,
                          std::span<const LidarModel> models,
                          const VoxelGrid& grid);

/// Number of distinct codes present among active voxels.
std::size_t distinct_code_count(const Labels& labels);

struct SubspaceSet {
  std::vector<VoxelIndex> voxel_indices;
  SubspaceCode code;
  int component_id = 0;
};

/// Second-level result. Component ids follow the lexicographic order of each
/// component's minimum voxel index.
class Segmentation {
 public:
  std::size_t component_count() const { return members_.size(); }
  /// Component of a voxel by linear index, -1 for inactive voxels.
  std::int32_t component_of(std::size_t linear) const {
    return component_of_[linear];
  }
  std::span<const std::int32_t> component_map() const { return component_of_; }
  /// Member voxels of a component in increasing linear order.
  std::span<const std::size_t> members(std::size_t id) const {
    return members_[id];
  }
  std::uint64_t code_key(std::size_t id) const { return codes_[id]; }

  SubspaceSet subspace(std::size_t id, const VoxelGrid& grid,
                       const CodeSpace& space) const;
  std::vector<SubspaceSet> subspaces(const VoxelGrid& grid,
                                     const CodeSpace& space) const;

 private:
  friend Segmentation connected_components(const Labels&, const VoxelGrid&);

  std::vector<std::int32_t> component_of_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::uint64_t> codes_;
};

Segmentation connected_components(const Labels& labels, const VoxelGrid& grid);

}  // namespace lidarplace::segmentation
