// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
//
// Binds the max-VSR objective to the ABC optimizer. A decision vector holds
// (x, y, z, pitch, roll) per LiDAR; yaw is not optimized because the sensor
// spins a full turn, so it is pinned to the bound-clamped value of 0.
#pragma once

#include <span>
#include <vector>

#include "lidarplace/abc.hpp"
#include "lidarplace/geometry.hpp"

namespace lidarplace::placement {

inline constexpr std::size_t kParamsPerLidar = 5;

class PlacementProblem {
 public:
  PlacementProblem(const geometry::RoiSpec& roi,
                   std::vector<geometry::LidarModel> models,
                   const geometry::PoseBounds& bounds);

  std::size_t lidar_count() const { return models_.size(); }
  std::size_t dimension() const { return kParamsPerLidar * models_.size(); }
  const geometry::VoxelGrid& grid() const { return grid_; }
  std::span<const geometry::LidarModel> models() const { return models_; }
  const geometry::PoseBounds& pose_bounds() const { return bounds_; }
  double fixed_yaw() const { return yaw_; }

  abc::Bounds decision_bounds() const;
  geometry::ConfigSet decode(std::span<const double> x) const;
  std::vector<double> encode(const geometry::ConfigSet& configs) const;

  /// Max-VSR objective of a decision vector. Pure and thread-safe.
  double operator()(std::span<const double> x) const;

  abc::SolveResult solve(const abc::AbcParams& params) const;

 private:
  geometry::VoxelGrid grid_;
  std::vector<geometry::LidarModel> models_;
  geometry::PoseBounds bounds_;
  double yaw_ = 0.0;
};

}  // namespace lidarplace::placement
