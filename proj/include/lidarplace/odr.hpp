// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo object detection rate (ODR). An axis-aligned cuboid object is
// dropped uniformly at random inside a placement region; a drop counts as a
// detection when the object's box holds voxel centers from more than
// `threshold` distinct subspaces.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "lidarplace/cost.hpp"
#include "lidarplace/geometry.hpp"
#include "lidarplace/segmentation.hpp"

namespace lidarplace::odr {

using geometry::Box;
using geometry::Vec3;

struct ObjectSpec {
  Vec3 dims{0.5, 0.5, 1.7};
  /// Box the whole object must stay inside; the ROI extent when unset.
  std::optional<Box> placement_region;

  Box region(const geometry::RoiSpec& roi) const;
  void validate(const geometry::RoiSpec& roi) const;
};

struct OdrReport {
  std::size_t trials = 0;
  std::size_t detections = 0;
  double odr = 0.0;
  std::size_t threshold = 0;
};

/// Number of distinct subspaces with at least one voxel center inside the
/// closed object box.
std::size_t count_occupied_subspaces(const Box& object_box,
                                     const segmentation::Segmentation& seg,
                                     const geometry::VoxelGrid& grid);

OdrReport estimate_odr(const segmentation::Segmentation& seg,
                       const geometry::VoxelGrid& grid,
                       const geometry::RoiSpec& roi, const ObjectSpec& object,
                       std::size_t trials, std::size_t threshold,
                       std::uint64_t seed, int threads = 1);

OdrReport estimate_odr(const geometry::ConfigSet& configs,
                       std::span<const geometry::LidarModel> models,
                       const geometry::RoiSpec& roi, const ObjectSpec& object,
                       std::size_t trials, std::size_t threshold,
                       std::uint64_t seed, int threads = 1);

/// Spearman rank correlation with average ranks for ties. Returns NaN when
/// either input has zero rank variance.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace lidarplace::odr
