// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "lidarplace/error.hpp"

namespace lidarplace::segmentation {

int beam_digit(const LidarModel& model, const Vec3& local_point) {
  const double r = std::sqrt(local_point.x() * local_point.x() +
                             local_point.y() * local_point.y());
  const double z = local_point.z();
  // Cone heights tan(p_k) r are non-decreasing in k, so the digit is the
  // count of cones lying at or below z.
  int digit = 0;
  for (double slope : model.slopes()) {
    if (z >= slope * r) {
      ++digit;
    } else {
      break;
    }
  }
  return digit;
}

std::string SubspaceCode::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out.push_back('_');
    out += std::to_string(digits[i]);
  }
  return out;
}

CodeSpace::CodeSpace(std::span<const LidarModel> models) {
  constexpr auto kLimit =
      static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  for (const auto& m : models) {
    const std::uint64_t radix = m.beam_count() + 1;
    if (size_ > kLimit / radix) {
      throw Error(ErrorCode::kInvalidArgument,
                  "too many lidars: code space exceeds 2^63");
    }
    radices_.push_back(radix);
    size_ *= radix;
  }
}

std::uint64_t CodeSpace::pack(const SubspaceCode& code) const {
  if (code.digits.size() != radices_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "code length mismatch");
  }
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    const int d = code.digits[i];
    if (d < 0 || static_cast<std::uint64_t>(d) >= radices_[i]) {
      throw Error(ErrorCode::kInvalidArgument, "code digit out of range");
    }
    key = key * radices_[i] + static_cast<std::uint64_t>(d);
  }
  return key;
}

SubspaceCode CodeSpace::unpack(std::uint64_t key) const {
  SubspaceCode code;
  code.digits.resize(radices_.size());
  for (std::size_t i = radices_.size(); i-- > 0;) {
    code.digits[i] = static_cast<int>(key % radices_[i]);
    key /= radices_[i];
  }
  return code;
}

Labels first_level_labels(const ConfigSet& configs,
                          std::span<const LidarModel> models,
                          const VoxelGrid& grid) {
  if (configs.empty() || configs.size() != models.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "need one lidar model per pose and at least one lidar");
  }
  Labels labels{CodeSpace(models), std::vector<std::int64_t>(grid.voxel_count(), -1)};

  std::vector<geometry::Mat3> rt;
  rt.reserve(configs.size());
  for (const auto& pose : configs) {
    rt.push_back(geometry::rotation_matrix(pose).transpose());
  }

  for (std::size_t n : grid.active_indices()) {
    const Vec3 c = grid.center(n);
    std::int64_t key = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
      const Vec3 local = rt[i] * (c - configs[i].position);
      const auto radix = static_cast<std::int64_t>(models[i].beam_count() + 1);
      key = key * radix + beam_digit(models[i], local);
    }
    labels.key[n] = key;
  }
  return labels;
}

std::size_t distinct_code_count(const Labels& labels) {
  std::unordered_set<std::int64_t> seen;
  for (auto k : labels.key) {
    if (k >= 0) seen.insert(k);
  }
  return seen.size();
}

SubspaceSet Segmentation::subspace(std::size_t id, const VoxelGrid& grid,
                                   const CodeSpace& space) const {
  SubspaceSet s;
  s.component_id = static_cast<int>(id);
  s.code = space.unpack(codes_[id]);
  s.voxel_indices.reserve(members_[id].size());
  for (std::size_t n : members_[id]) s.voxel_indices.push_back(grid.index(n));
  return s;
}

std::vector<SubspaceSet> Segmentation::subspaces(const VoxelGrid& grid,
                                                 const CodeSpace& space) const {
  std::vector<SubspaceSet> out;
  out.reserve(members_.size());
  for (std::size_t id = 0; id < members_.size(); ++id) {
    out.push_back(subspace(id, grid, space));
  }
  return out;
}

Segmentation connected_components(const Labels& labels, const VoxelGrid& grid) {
  if (labels.key.size() != grid.voxel_count()) {
    throw Error(ErrorCode::kInvalidArgument, "labels do not match grid");
  }
  const auto& dims = grid.dims();
  const std::size_t stride_j = static_cast<std::size_t>(dims[2]);
  const std::size_t stride_i = stride_j * static_cast<std::size_t>(dims[1]);

  Segmentation seg;
  seg.component_of_.assign(grid.voxel_count(), -1);
  std::vector<std::size_t> queue;

  // Seeds are visited in increasing linear order, so each component is
  // discovered at its minimum voxel and ids come out sorted.
  for (std::size_t seed : grid.active_indices()) {
    // Negative keys mark unlabeled voxels.
    if (seg.component_of_[seed] >= 0 || labels.key[seed] < 0) continue;
    const auto id = static_cast<std::int32_t>(seg.members_.size());
    const std::int64_t key = labels.key[seed];
    std::vector<std::size_t> members;

    queue.clear();
    queue.push_back(seed);
    seg.component_of_[seed] = id;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t n = queue[head];
      members.push_back(n);
      const VoxelIndex v = grid.index(n);
      auto visit = [&](std::size_t m) {
        if (seg.component_of_[m] < 0 && labels.key[m] == key) {
          seg.component_of_[m] = id;
          queue.push_back(m);
        }
      };
      if (v[0] > 0) visit(n - stride_i);
      if (v[0] + 1 < dims[0]) visit(n + stride_i);
      if (v[1] > 0) visit(n - stride_j);
      if (v[1] + 1 < dims[1]) visit(n + stride_j);
      if (v[2] > 0) visit(n - 1);
      if (v[2] + 1 < dims[2]) visit(n + 1);
    }
    std::sort(members.begin(), members.end());
    seg.members_.push_back(std::move(members));
    seg.codes_.push_back(static_cast<std::uint64_t>(key));
  }
  return seg;
}

}  // namespace lidarplace::segmentation
