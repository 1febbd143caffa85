// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "brute_force.hpp"
#include "lidarplace/cost.hpp"

namespace lidarplace::cost {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

TEST(Volume, CountsTimesVoxelVolume) {
  const Vec3 e(1, 0.5, 0.2);
  const std::vector<VoxelIndex> one{{0, 0, 0}};
  EXPECT_DOUBLE_EQ(volume(one, e), 0.1);
  std::vector<VoxelIndex> many(48000, VoxelIndex{0, 0, 0});
  EXPECT_NEAR(volume(many, e), 4800.0, 1e-9);
  std::vector<VoxelIndex> cube;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) cube.push_back({i, j, k});
  EXPECT_DOUBLE_EQ(volume(cube, Vec3(1, 1, 1)), 27.0);
}

TEST(SurfaceArea, StackedPairAlongZ) {
  const Vec3 e(1, 0.5, 0.2);
  const std::vector<VoxelIndex> pair{{0, 0, 0}, {0, 0, 1}};
  EXPECT_NEAR(surface_area_axis(pair, e, Plane::kXY), 1.0, 1e-12);
  EXPECT_NEAR(surface_area_axis(pair, e, Plane::kXZ), 0.8, 1e-12);
  EXPECT_NEAR(surface_area_axis(pair, e, Plane::kYZ), 0.4, 1e-12);
  EXPECT_NEAR(surface_area(pair, e), 2.2, 1e-12);
}

TEST(SurfaceArea, SingleVoxelAndFullRoi) {
  const Vec3 e(1, 0.5, 0.2);
  const std::vector<VoxelIndex> one{{4, 7, 2}};
  EXPECT_NEAR(surface_area(one, e), 1.6, 1e-12);
  std::vector<VoxelIndex> all;
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 40; ++j)
      for (int k = 0; k < 20; ++k) all.push_back({i, j, k});
  EXPECT_NEAR(surface_area(all, e), 2 * (60 * 20 + 60 * 4 + 20 * 4), 1e-9);
  EXPECT_NEAR(surface_area(all, e), 3040.0, 1e-9);
}

TEST(Vsr, ReferenceValues) {
  EXPECT_NEAR(vsr(std::vector<VoxelIndex>{{0, 0, 0}}, Vec3(1, 0.5, 0.2)),
              0.1 / 1.6, 1e-15);
  std::vector<VoxelIndex> all;
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 40; ++j)
      for (int k = 0; k < 20; ++k) all.push_back({i, j, k});
  const Vec3 e(1, 0.5, 0.2);
  EXPECT_NEAR(vsr(all, e), 4800.0 / 3040.0, 1e-12);

  segmentation::SubspaceSet s;
  s.voxel_indices = all;
  const SubspaceMetrics m = metrics(s, e);
  EXPECT_EQ(m.voxel_count, 48000u);
  EXPECT_NEAR(m.inscribed_radius_estimate, 3 * 4800.0 / 3040.0, 1e-9);
  EXPECT_NEAR(m.inscribed_radius_estimate, 4.737, 1e-3);
}

TEST(SurfaceArea, MatchesExposedFaceOracleOnRandomBlobs) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(1, 300);
  std::uniform_int_distribution<int> span(1, 9);
  std::uniform_real_distribution<double> res(0.05, 2.0);
  for (int t = 0; t < 50; ++t) {
    const int sp = span(rng);
    const std::size_t n = std::min<std::size_t>(size(rng), sp * sp * sp);
    const auto blob = oracle::random_blob(rng, n, sp);
    const Vec3 e(res(rng), res(rng), res(rng));
    EXPECT_EQ(surface_area(blob, e), oracle::exposed_face_area(blob, e))
        << "blob " << t;
  }
}

TEST(SurfaceArea, IndependentOfInputOrder) {
  std::mt19937_64 rng(5);
  auto blob = oracle::random_blob(rng, 120, 6);
  const Vec3 e(0.3, 0.7, 1.1);
  const double reference = surface_area(blob, e);
  for (int t = 0; t < 10; ++t) {
    std::shuffle(blob.begin(), blob.end(), rng);
    EXPECT_EQ(surface_area(blob, e), reference);
  }
}

TEST(SurfaceArea, SeparatedVoxelsAddUp) {
  const Vec3 e(1, 1, 1);
  const std::vector<VoxelIndex> apart{{0, 0, 0}, {2, 0, 0}, {0, 0, 2}};
  EXPECT_DOUBLE_EQ(surface_area(apart, e), 18.0);
  // Face-adjacent in y only.
  const std::vector<VoxelIndex> row{{0, 0, 0}, {0, 1, 0}, {0, 2, 0}};
  EXPECT_DOUBLE_EQ(surface_area(row, e), 14.0);
}

geometry::RoiSpec cube_roi(double side) {
  geometry::RoiSpec roi;
  roi.extent = {side, side, side};
  return roi;
}

TEST(Evaluate, FlatBeamThroughCubeCenterMatchesBruteForce) {
  const auto roi = cube_roi(4);
  geometry::PoseConfig pose;
  pose.position = {2, 2, 2};
  const std::vector<geometry::LidarModel> models{geometry::LidarModel({0.0})};
  const geometry::VoxelGrid grid(roi);
  const Evaluation ev = evaluate({pose}, models, grid);
  const auto brute = oracle::brute_force_pipeline({pose}, models, roi);
  // Two 4x4x2 slabs: V = 32, S = 2*16 + 4*8 = 64.
  EXPECT_EQ(ev.segmentation.component_count(), 2u);
  EXPECT_EQ(brute.components, 2u);
  EXPECT_DOUBLE_EQ(ev.objective, 0.5);
  EXPECT_EQ(ev.objective, brute.max_vsr);
}

TEST(Evaluate, BeamsAboveRoiGiveSingleSubspace) {
  const auto roi = cube_roi(4);
  geometry::PoseConfig pose;
  pose.position = {2, 2, -10};
  // The lowest cone at 60 degrees clears the whole ROI from below.
  const std::vector<geometry::LidarModel> models{
      geometry::LidarModel({60 * kDeg, 70 * kDeg})};
  const Evaluation ev = evaluate({pose}, models, geometry::VoxelGrid(roi));
  ASSERT_EQ(ev.segmentation.component_count(), 1u);
  EXPECT_DOUBLE_EQ(ev.objective, 64.0 / 96.0);
  EXPECT_EQ(ev.worst_component, 0u);
}

TEST(Evaluate, DuplicateLidarAddsNothing) {
  geometry::RoiSpec roi;
  roi.extent = {8, 8, 4};
  const geometry::VoxelGrid grid(roi);
  const auto model = geometry::LidarModel::evenly_spaced(-20 * kDeg, 20 * kDeg, 4);
  geometry::PoseConfig pose;
  pose.position = {3.3, 4.1, 2.2};
  pose.pitch = 0.2;
  pose.roll = -0.1;
  const std::vector<geometry::LidarModel> one{model}, two{model, model};
  EXPECT_EQ(max_vsr({pose}, one, grid), max_vsr({pose, pose}, two, grid));
}

TEST(Evaluate, VolumeIsConservedAndTableIsConsistent) {
  geometry::RoiSpec roi;
  roi.extent = {8, 8, 4};
  roi.resolution = {0.5, 1, 0.5};
  roi.excluded_boxes.push_back({{3, 3, 0}, {5, 5, 4}});
  const geometry::VoxelGrid grid(roi);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(0.5, 7.5), ang(-0.5, 0.5);
  const auto model = geometry::LidarModel::evenly_spaced(-20 * kDeg, 20 * kDeg, 4);
  for (int t = 0; t < 10; ++t) {
    geometry::ConfigSet configs(2);
    for (auto& c : configs) {
      c.position = {pos(rng), pos(rng), pos(rng) / 2};
      c.pitch = ang(rng);
      c.roll = ang(rng);
    }
    const std::vector<geometry::LidarModel> models(2, model);
    const Evaluation ev = evaluate(configs, models, grid);
    double total = 0.0, worst = 0.0;
    for (const auto& m : ev.table) {
      total += m.volume;
      worst = std::max(worst, m.vsr);
      EXPECT_GT(m.surface_area, 0.0);
    }
    const double expected = grid.active_count() * 0.25;
    EXPECT_NEAR(total, expected, 1e-9 * expected);
    EXPECT_EQ(ev.objective, worst);
    EXPECT_EQ(ev.table[ev.worst_component].vsr, worst);
    EXPECT_EQ(ev.objective, max_vsr(configs, models, roi));
  }
}

}  // namespace
}  // namespace lidarplace::cost
