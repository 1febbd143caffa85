// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "brute_force.hpp"
#include "lidarplace/error.hpp"
#include "lidarplace/segmentation.hpp"

namespace lidarplace::segmentation {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

LidarModel two_beam() { return LidarModel({-15 * kDeg, 15 * kDeg}); }

TEST(BeamDigit, TwoBeamExamples) {
  const auto m = two_beam();
  EXPECT_EQ(beam_digit(m, Vec3(1, 0, 0)), 1);
  EXPECT_EQ(beam_digit(m, Vec3(1, 0, 1)), 2);
  EXPECT_EQ(beam_digit(m, Vec3(1, 0, -1)), 0);
}

TEST(BeamDigit, OnVerticalAxis) {
  // Every cone collapses to z = 0 at r = 0.
  const auto m = two_beam();
  EXPECT_EQ(beam_digit(m, Vec3(0, 0, 0.5)), 2);
  EXPECT_EQ(beam_digit(m, Vec3(0, 0, 0.0)), 2);
  EXPECT_EQ(beam_digit(m, Vec3(0, 0, -0.5)), 0);
}

TEST(BeamDigit, ConeSurfaceBelongsToBandAbove) {
  const LidarModel m({0.0});
  EXPECT_EQ(beam_digit(m, Vec3(3, 4, 0)), 1);
  EXPECT_EQ(beam_digit(m, Vec3(3, 4, -1e-12)), 0);
}

TEST(BeamDigit, MatchesLiteralCasesAndIsMonotoneInZ) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_int_distribution<int> beams(1, 16);
  for (int t = 0; t < 200; ++t) {
    const int nb = beams(rng);
    const auto m = geometry::LidarModel::evenly_spaced(-30 * kDeg, 25 * kDeg, nb);
    const double x = u(rng), y = u(rng);
    int previous = -1;
    for (double z = -12.0; z <= 12.0; z += 0.37) {
      const Vec3 p(x, y, z);
      const int d = beam_digit(m, p);
      ASSERT_GE(d, 0);
      ASSERT_LE(d, nb);
      EXPECT_EQ(d, oracle::literal_digit(m, p));
      EXPECT_GE(d, previous);
      previous = d;
    }
  }
}

TEST(CodeSpace, SizesAndPacking) {
  const auto b16 = LidarModel::evenly_spaced(-15 * kDeg, 15 * kDeg, 16);
  const std::vector<LidarModel> two(2, b16), four(4, b16);
  EXPECT_EQ(CodeSpace(two).size(), 289u);
  EXPECT_EQ(CodeSpace(four).size(), 83521u);

  const std::vector<LidarModel> mixed{two_beam(), b16, LidarModel({0.1})};
  const CodeSpace space(mixed);
  EXPECT_EQ(space.size(), 3u * 17u * 2u);
  std::set<std::uint64_t> keys;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 16; ++b)
      for (int c = 0; c <= 1; ++c) {
        const SubspaceCode code{{a, b, c}};
        const auto key = space.pack(code);
        EXPECT_LT(key, space.size());
        EXPECT_EQ(space.unpack(key), code);
        keys.insert(key);
      }
  EXPECT_EQ(keys.size(), space.size());
  EXPECT_THROW(space.pack(SubspaceCode{{3, 0, 0}}), Error);
  EXPECT_EQ((SubspaceCode{{3, 0, 16}}).to_string(), "3_0_16");
}

TEST(FirstLevelLabels, SingleFlatBeamSplitsAtSensorHeight) {
  geometry::RoiSpec roi;
  roi.extent = {6, 6, 4};
  const geometry::VoxelGrid grid(roi);
  geometry::PoseConfig pose;
  pose.position = {3, 3, 4};  // grid top
  const std::vector<LidarModel> models{LidarModel({0.0})};
  const Labels labels = first_level_labels({pose}, models, grid);
  for (std::size_t n = 0; n < grid.voxel_count(); ++n) {
    const Vec3 local = geometry::world_to_lidar(pose, grid.center(n));
    const int expected = local.z() < 0.0 ? 0 : 1;
    EXPECT_EQ(labels.key[n], expected);
  }
  EXPECT_EQ(distinct_code_count(labels), 1u);  // all below the sensor
}

TEST(FirstLevelLabels, InactiveVoxelsStayUnlabeled) {
  geometry::RoiSpec roi;
  roi.extent = {4, 4, 2};
  roi.excluded_boxes.push_back({{0, 0, 0}, {2, 2, 2}});
  const geometry::VoxelGrid grid(roi);
  const std::vector<LidarModel> models{two_beam()};
  geometry::PoseConfig pose;
  pose.position = {1, 1, 1};
  const Labels labels = first_level_labels({pose}, models, grid);
  for (std::size_t n = 0; n < grid.voxel_count(); ++n) {
    EXPECT_EQ(labels.key[n] < 0, !grid.active(n));
  }
}

TEST(FirstLevelLabels, RejectsMismatchedInputs) {
  geometry::RoiSpec roi;
  const geometry::VoxelGrid grid(roi);
  const std::vector<LidarModel> models{two_beam()};
  EXPECT_THROW(first_level_labels({}, {}, grid), Error);
  EXPECT_THROW(first_level_labels({{}, {}}, models, grid), Error);
}

TEST(FirstLevelLabels, DistinctCodesWithinBound) {
  geometry::RoiSpec roi;
  roi.extent = {10, 10, 4};
  roi.resolution = {0.5, 0.5, 0.25};
  const geometry::VoxelGrid grid(roi);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pos(0.0, 10.0), ang(-0.6, 0.6);
  for (int nl = 1; nl <= 3; ++nl) {
    const std::vector<LidarModel> models(
        nl, LidarModel::evenly_spaced(-15 * kDeg, 15 * kDeg, 4));
    geometry::ConfigSet configs(nl);
    for (auto& c : configs) {
      c.position = {pos(rng), pos(rng), 0.4 * pos(rng)};
      c.pitch = ang(rng);
      c.roll = ang(rng);
    }
    const Labels labels = first_level_labels(configs, models, grid);
    const auto bound = static_cast<std::size_t>(std::pow(5, nl));
    EXPECT_LE(distinct_code_count(labels), bound);
    EXPECT_EQ(labels.space.size(), bound);
  }
}

// Dense label helper for hand-built grids.
struct Hand {
  geometry::VoxelGrid grid;
  Labels labels;
};

Hand hand_grid(int nx, int ny, int nz, const std::vector<std::int64_t>& keys) {
  geometry::RoiSpec roi;
  roi.extent = {double(nx), double(ny), double(nz)};
  Hand h{geometry::VoxelGrid(roi), {}};
  h.labels.key = keys;
  return h;
}

TEST(ConnectedComponents, EdgeContactDoesNotConnect) {
  // 2x2x1 grid; same code only on the diagonal.
  auto h = hand_grid(2, 2, 1, {0, 1, 1, 0});
  const auto seg = connected_components(h.labels, h.grid);
  EXPECT_EQ(seg.component_count(), 4u);
  EXPECT_NE(seg.component_of(0), seg.component_of(3));
}

TEST(ConnectedComponents, UniformBlockIsOneComponent) {
  auto h = hand_grid(3, 3, 3, std::vector<std::int64_t>(27, 5));
  const auto seg = connected_components(h.labels, h.grid);
  ASSERT_EQ(seg.component_count(), 1u);
  EXPECT_EQ(seg.members(0).size(), 27u);
  EXPECT_EQ(seg.code_key(0), 5u);
}

TEST(ConnectedComponents, BandSplitsSameCode) {
  // Code 0 on both sides of a code-1 wall at i = 2.
  std::vector<std::int64_t> keys(5 * 3 * 2, 0);
  geometry::RoiSpec roi;
  roi.extent = {5, 3, 2};
  const geometry::VoxelGrid grid(roi);
  for (std::size_t n = 0; n < keys.size(); ++n) {
    if (grid.index(n)[0] == 2) keys[n] = 1;
  }
  Labels labels;
  labels.key = keys;
  const auto seg = connected_components(labels, grid);
  EXPECT_EQ(seg.component_count(), 3u);
  // Ids follow the minimum voxel: left block, wall, right block.
  EXPECT_EQ(seg.component_of(0), 0);
  EXPECT_EQ(seg.code_key(1), 1u);
  EXPECT_EQ(seg.code_key(2), 0u);
}

TEST(ConnectedComponents, ExcludedVoxelsNeverBridge) {
  geometry::RoiSpec roi;
  roi.extent = {3, 1, 1};
  roi.excluded_boxes.push_back({{1, 0, 0}, {2, 1, 1}});
  const geometry::VoxelGrid grid(roi);
  ASSERT_EQ(grid.active_count(), 2u);
  Labels labels;
  labels.key = {0, -1, 0};
  const auto seg = connected_components(labels, grid);
  EXPECT_EQ(seg.component_count(), 2u);
  EXPECT_EQ(seg.component_of(1), -1);
}

TEST(ConnectedComponents, MatchesFloodFillOracleOnRandomGrids) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 20; ++t) {
    std::uniform_int_distribution<int> dim(2, 7), codes(1, 4), drop(0, 9);
    const int nx = dim(rng), ny = dim(rng), nz = dim(rng);
    const int nc = codes(rng);
    std::uniform_int_distribution<int> code(0, nc - 1);
    std::vector<int> dense(static_cast<std::size_t>(nx) * ny * nz);
    for (auto& d : dense) d = drop(rng) == 0 ? -1 : code(rng);

    geometry::RoiSpec roi;
    roi.extent = {double(nx), double(ny), double(nz)};
    const geometry::VoxelGrid grid(roi);
    Labels labels;
    labels.key.assign(dense.begin(), dense.end());
    const auto seg = connected_components(labels, grid);
    EXPECT_EQ(seg.component_count(), oracle::flood_fill_count(dense, nx, ny, nz))
        << "grid " << t;

    // Partition: every labeled voxel in exactly one component.
    std::vector<int> hits(dense.size(), 0);
    for (std::size_t id = 0; id < seg.component_count(); ++id) {
      for (std::size_t n : seg.members(id)) {
        ++hits[n];
        EXPECT_EQ(labels.key[n], static_cast<std::int64_t>(seg.code_key(id)));
      }
    }
    for (std::size_t n = 0; n < dense.size(); ++n) {
      EXPECT_EQ(hits[n], dense[n] < 0 ? 0 : 1);
    }
  }
}

TEST(ConnectedComponents, InvariantUnderCodeRelabeling) {
  // Permuting code values changes visitation of equal-code runs but must
  // leave the component sets untouched.
  std::mt19937_64 rng(8);
  geometry::RoiSpec roi;
  roi.extent = {6, 5, 4};
  const geometry::VoxelGrid grid(roi);
  std::uniform_int_distribution<int> code(0, 2);
  Labels a;
  a.key.resize(grid.voxel_count());
  for (auto& k : a.key) k = code(rng);
  Labels b = a;
  const std::array<std::int64_t, 3> perm{2, 0, 1};
  for (auto& k : b.key) k = perm[k];
  const auto sa = connected_components(a, grid);
  const auto sb = connected_components(b, grid);
  ASSERT_EQ(sa.component_count(), sb.component_count());
  for (std::size_t n = 0; n < grid.voxel_count(); ++n) {
    EXPECT_EQ(sa.component_of(n), sb.component_of(n));
  }
}

TEST(ConnectedComponents, IdsOrderedByMinimumVoxel) {
  std::mt19937_64 rng(12);
  geometry::RoiSpec roi;
  roi.extent = {5, 5, 5};
  const geometry::VoxelGrid grid(roi);
  Labels labels;
  labels.key.resize(grid.voxel_count());
  std::uniform_int_distribution<int> code(0, 3);
  for (auto& k : labels.key) k = code(rng);
  const auto seg = connected_components(labels, grid);
  for (std::size_t id = 1; id < seg.component_count(); ++id) {
    EXPECT_LT(seg.members(id - 1).front(), seg.members(id).front());
  }
  const auto sets = seg.subspaces(grid, CodeSpace{});
  ASSERT_EQ(sets.size(), seg.component_count());
  EXPECT_EQ(sets[0].voxel_indices.front(), (VoxelIndex{0, 0, 0}));
}

}  // namespace
}  // namespace lidarplace::segmentation
