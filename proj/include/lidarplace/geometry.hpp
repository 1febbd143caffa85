// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
//
// Pose math, the rotating-beam cone model, and voxelization of the region of
// interest. Angles are radians throughout.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace lidarplace::geometry {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// 6-DoF mounting pose. Angles are kept as given (no wrapping).
struct PoseConfig {
  Vec3 position = Vec3::Zero();
  double yaw = 0.0;    // alpha, about z
  double pitch = 0.0;  // beta, about y
  double roll = 0.0;   // gamma, about x

  bool operator==(const PoseConfig&) const = default;
};

using ConfigSet = std::vector<PoseConfig>;

struct PoseBounds {
  PoseConfig lower;
  PoseConfig upper;

  /// Throws Error(kSchema) unless lower <= upper componentwise.
  void validate() const;
  bool contains(const PoseConfig& pose) const;
};

/// A LiDAR type: strictly increasing beam pitches in (-pi/2, pi/2).
class LidarModel {
 public:
  LidarModel() = default;
  explicit LidarModel(std::vector<double> beam_pitches);

  /// Pitches evenly spaced over [min_pitch, max_pitch], inclusive.
  static LidarModel evenly_spaced(double min_pitch, double max_pitch,
                                  std::size_t beams);

  std::span<const double> pitches() const { return pitches_; }
  std::span<const double> slopes() const { return slopes_; }
  std::size_t beam_count() const { return pitches_.size(); }

  bool operator==(const LidarModel& other) const {
    return pitches_ == other.pitches_;
  }

 private:
  std::vector<double> pitches_;
  std::vector<double> slopes_;  // tan(pitch)
};

struct Box {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();

  /// Closed containment test.
  bool contains(const Vec3& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() &&
           p.y() <= max.y() && p.z() >= min.z() && p.z() <= max.z();
  }
  bool operator==(const Box& other) const {
    return min == other.min && max == other.max;
  }
};

/// Region of interest anchored with one corner at the world origin.
struct RoiSpec {
  Vec3 extent = Vec3::Ones();
  std::vector<Box> excluded_boxes;
  Vec3 resolution = Vec3::Ones();

  /// Throws Error(kSchema) naming the violated constraint.
  void validate() const;
  bool operator==(const RoiSpec&) const = default;
};

using VoxelIndex = std::array<std::int32_t, 3>;

/// Regular voxelization of an RoiSpec. Linear index order is i-major,
/// (i * ny + j) * nz + k, so linear order equals lexicographic (i, j, k).
class VoxelGrid {
 public:
  explicit VoxelGrid(const RoiSpec& roi);

  const std::array<std::int32_t, 3>& dims() const { return dims_; }
  const Vec3& resolution() const { return resolution_; }
  std::size_t voxel_count() const { return active_.size(); }
  std::size_t active_count() const { return active_indices_.size(); }

  std::size_t linear(const VoxelIndex& v) const {
    return (static_cast<std::size_t>(v[0]) * dims_[1] + v[1]) * dims_[2] +
           v[2];
  }
  VoxelIndex index(std::size_t linear) const {
    const auto k = static_cast<std::int32_t>(linear % dims_[2]);
    linear /= dims_[2];
    const auto j = static_cast<std::int32_t>(linear % dims_[1]);
    return {static_cast<std::int32_t>(linear / dims_[1]), j, k};
  }
  Vec3 center(const VoxelIndex& v) const {
    return {(v[0] + 0.5) * resolution_.x(), (v[1] + 0.5) * resolution_.y(),
            (v[2] + 0.5) * resolution_.z()};
  }
  Vec3 center(std::size_t linear) const { return center(index(linear)); }
  bool active(std::size_t linear) const { return active_[linear] != 0; }

  /// Active voxels in increasing linear order.
  std::span<const std::size_t> active_indices() const {
    return active_indices_;
  }

  /// Voxel containing a point inside the extent; the upper faces belong to
  /// the last voxel along each axis. Throws Error(kInvalidArgument) outside.
  VoxelIndex locate(const Vec3& point) const;

 private:
  std::array<std::int32_t, 3> dims_{};
  Vec3 resolution_;
  Vec3 extent_;
  std::vector<std::uint8_t> active_;
  std::vector<std::size_t> active_indices_;
};

/// Rotation R = Rz(yaw) * Ry(pitch) * Rx(roll), lidar frame to world frame.
Mat3 rotation_matrix(const PoseConfig& pose);

/// X_l = T_wl^-1 X_w where T_wl = [R t; 0 1] maps lidar to world.
Vec3 world_to_lidar(const PoseConfig& pose, const Vec3& point_world);
Vec3 lidar_to_world(const PoseConfig& pose, const Vec3& point_lidar);

/// Height of the beam cone with the given pitch at radius sqrt(x^2 + y^2).
inline double beam_surface_z(double pitch, double x, double y) {
  return std::tan(pitch) * std::sqrt(x * x + y * y);
}

VoxelGrid build_voxel_grid(const RoiSpec& roi);

}  // namespace lidarplace::geometry
