// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "lidarplace/error.hpp"

namespace lidarplace::geometry {
namespace {

constexpr double kDivisibilityTol = 1e-9;

bool finite(const Vec3& v) { return v.allFinite(); }

std::string fmt_vec(const Vec3& v) {
  std::ostringstream os;
  os << "[" << v.x() << ", " << v.y() << ", " << v.z() << "]";
  return os.str();
}

std::array<double, 6> components(const PoseConfig& p) {
  return {p.position.x(), p.position.y(), p.position.z(),
          p.yaw,          p.pitch,        p.roll};
}

}  // namespace

void PoseBounds::validate() const {
  static constexpr const char* kNames[] = {"x",   "y",     "z",
                                           "yaw", "pitch", "roll"};
  const auto lo = components(lower);
  const auto hi = components(upper);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) {
      throw Error(ErrorCode::kSchema,
                  std::string("bounds: non-finite ") + kNames[i]);
    }
    if (lo[i] > hi[i]) {
      throw Error(ErrorCode::kSchema,
                  std::string("bounds: lower ") + kNames[i] +
                      " exceeds upper (bounds inversion)");
    }
  }
}

bool PoseBounds::contains(const PoseConfig& pose) const {
  const auto lo = components(lower);
  const auto hi = components(upper);
  const auto v = components(pose);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < lo[i] || v[i] > hi[i]) return false;
  }
  return true;
}

LidarModel::LidarModel(std::vector<double> beam_pitches)
    : pitches_(std::move(beam_pitches)) {
  if (pitches_.empty()) {
    throw Error(ErrorCode::kSchema, "lidar model needs at least one beam");
  }
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  for (std::size_t k = 0; k < pitches_.size(); ++k) {
    const double p = pitches_[k];
    if (!std::isfinite(p) || p <= -kHalfPi || p >= kHalfPi) {
      throw Error(ErrorCode::kSchema,
                  "beam pitch " + std::to_string(k) +
                      " must lie strictly inside (-pi/2, pi/2)");
    }
    if (k > 0 && !(p > pitches_[k - 1])) {
      throw Error(ErrorCode::kSchema,
                  "beam pitches must be strictly increasing");
    }
  }
  slopes_.reserve(pitches_.size());
  for (double p : pitches_) slopes_.push_back(std::tan(p));
}

LidarModel LidarModel::evenly_spaced(double min_pitch, double max_pitch,
                                     std::size_t beams) {
  if (beams == 0) {
    throw Error(ErrorCode::kSchema, "lidar model needs at least one beam");
  }
  std::vector<double> p(beams);
  if (beams == 1) {
    p[0] = 0.5 * (min_pitch + max_pitch);
  } else {
    const double step = (max_pitch - min_pitch) / static_cast<double>(beams - 1);
    for (std::size_t k = 0; k < beams; ++k) {
      p[k] = min_pitch + step * static_cast<double>(k);
    }
    p.back() = max_pitch;
  }
  return LidarModel(std::move(p));
}

void RoiSpec::validate() const {
  if (!finite(extent) || (extent.array() <= 0.0).any()) {
    throw Error(ErrorCode::kSchema,
                "roi.extent must be positive, got " + fmt_vec(extent));
  }
  if (!finite(resolution) || (resolution.array() <= 0.0).any()) {
    throw Error(ErrorCode::kSchema,
                "roi.resolution must be positive, got " + fmt_vec(resolution));
  }
  for (int a = 0; a < 3; ++a) {
    const double cells = extent[a] / resolution[a];
    const double n = std::round(cells);
    if (n < 1.0 ||
        std::abs(n * resolution[a] - extent[a]) > kDivisibilityTol * extent[a]) {
      throw Error(ErrorCode::kSchema,
                  "roi: extent " + fmt_vec(extent) +
                      " is not divisible by resolution " + fmt_vec(resolution));
    }
    if (n > 1e7) {
      throw Error(ErrorCode::kSchema, "roi: grid too large");
    }
  }
  for (std::size_t b = 0; b < excluded_boxes.size(); ++b) {
    const Box& box = excluded_boxes[b];
    const auto tol = kDivisibilityTol * extent.array();
    if (!finite(box.min) || !finite(box.max) ||
        (box.min.array() > box.max.array()).any() ||
        (box.min.array() < -tol).any() ||
        (box.max.array() > extent.array() + tol).any()) {
      throw Error(ErrorCode::kSchema, "roi.excluded_boxes[" +
                                          std::to_string(b) +
                                          "] must lie within the extent");
    }
  }
}

VoxelGrid::VoxelGrid(const RoiSpec& roi)
    : resolution_(roi.resolution), extent_(roi.extent) {
  roi.validate();
  for (int a = 0; a < 3; ++a) {
    dims_[a] = static_cast<std::int32_t>(std::round(extent_[a] / resolution_[a]));
  }
  const std::size_t total =
      static_cast<std::size_t>(dims_[0]) * dims_[1] * dims_[2];
  active_.assign(total, 1);
  for (std::size_t n = 0; n < total; ++n) {
    const Vec3 c = center(n);
    for (const Box& box : roi.excluded_boxes) {
      if (box.contains(c)) {
        active_[n] = 0;
        break;
      }
    }
    if (active_[n]) active_indices_.push_back(n);
  }
  if (active_indices_.empty()) {
    throw Error(ErrorCode::kSchema, "roi: every voxel is excluded");
  }
}

VoxelIndex VoxelGrid::locate(const Vec3& point) const {
  VoxelIndex v{};
  for (int a = 0; a < 3; ++a) {
    if (!(point[a] >= 0.0 && point[a] <= extent_[a])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "point " + fmt_vec(point) + " lies outside the roi");
    }
    auto i = static_cast<std::int32_t>(std::floor(point[a] / resolution_[a]));
    v[a] = std::clamp(i, 0, dims_[a] - 1);
  }
  return v;
}

Mat3 rotation_matrix(const PoseConfig& pose) {
  const double ca = std::cos(pose.yaw), sa = std::sin(pose.yaw);
  const double cb = std::cos(pose.pitch), sb = std::sin(pose.pitch);
  const double cg = std::cos(pose.roll), sg = std::sin(pose.roll);
  Mat3 r;
  r << ca * cb, ca * sb * sg - sa * cg, ca * sb * cg + sa * sg,  //
      sa * cb, sa * sb * sg + ca * cg, sa * sb * cg - ca * sg,   //
      -sb, cb * sg, cb * cg;
  return r;
}

Vec3 world_to_lidar(const PoseConfig& pose, const Vec3& point_world) {
  // Inverse of a rigid transform: R^T (X_w - t).
  const Mat3 rt = rotation_matrix(pose).transpose();
  return rt * (point_world - pose.position);
}

Vec3 lidar_to_world(const PoseConfig& pose, const Vec3& point_lidar) {
  return rotation_matrix(pose) * point_lidar + pose.position;
}

VoxelGrid build_voxel_grid(const RoiSpec& roi) { return VoxelGrid(roi); }

}  // namespace lidarplace::geometry
