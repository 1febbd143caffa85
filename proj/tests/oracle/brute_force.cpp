// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace lidarplace::oracle {

FaceCounts exposed_faces(const std::vector<VoxelIndex>& voxels) {
  const std::set<VoxelIndex> members(voxels.begin(), voxels.end());
  auto absent = [&](VoxelIndex v, int axis, int step) {
    v[axis] += step;
    return members.count(v) == 0;
  };
  FaceCounts f;
  for (const auto& v : members) {
    f.yz += absent(v, 0, -1) + absent(v, 0, +1);
    f.xz += absent(v, 1, -1) + absent(v, 1, +1);
    f.xy += absent(v, 2, -1) + absent(v, 2, +1);
  }
  return f;
}

double exposed_face_area(const std::vector<VoxelIndex>& voxels,
                         const Vec3& e) {
  const FaceCounts f = exposed_faces(voxels);
  return static_cast<double>(f.xy) * (e.x() * e.y()) +
         static_cast<double>(f.xz) * (e.x() * e.z()) +
         static_cast<double>(f.yz) * (e.y() * e.z());
}

int literal_digit(const geometry::LidarModel& model, const Vec3& local) {
  const auto pitches = model.pitches();
  const int nb = static_cast<int>(pitches.size());
  const double z = local.z();
  auto cone = [&](int k) {
    return geometry::beam_surface_z(pitches[k], local.x(), local.y());
  };
  if (z < cone(0)) return 0;
  if (z >= cone(nb - 1)) return nb;
  for (int k = 1; k <= nb - 1; ++k) {
    if (z >= cone(k - 1) && z < cone(k)) return k;
  }
  return -1;  // unreachable for valid models
}

std::size_t flood_fill_count(const std::vector<int>& labels, int nx, int ny,
                             int nz) {
  std::vector<char> seen(labels.size(), 0);
  auto at = [&](int i, int j, int k) {
    return (static_cast<std::size_t>(i) * ny + j) * nz + k;
  };
  std::function<void(int, int, int, int)> fill = [&](int i, int j, int k,
                                                     int label) {
    if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return;
    const std::size_t n = at(i, j, k);
    if (seen[n] || labels[n] != label) return;
    seen[n] = 1;
    fill(i - 1, j, k, label);
    fill(i + 1, j, k, label);
    fill(i, j - 1, k, label);
    fill(i, j + 1, k, label);
    fill(i, j, k - 1, label);
    fill(i, j, k + 1, label);
  };
  std::size_t count = 0;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k < nz; ++k) {
        const std::size_t n = at(i, j, k);
        if (labels[n] < 0 || seen[n]) continue;
        ++count;
        fill(i, j, k, labels[n]);
      }
    }
  }
  return count;
}

BruteResult brute_force_pipeline(const geometry::ConfigSet& configs,
                                 const std::vector<geometry::LidarModel>& models,
                                 const geometry::RoiSpec& roi) {
  const Vec3& e = roi.resolution;
  const int nx = static_cast<int>(std::lround(roi.extent.x() / e.x()));
  const int ny = static_cast<int>(std::lround(roi.extent.y() / e.y()));
  const int nz = static_cast<int>(std::lround(roi.extent.z() / e.z()));

  // Codes as digit vectors, -1 row for excluded voxels.
  std::vector<std::vector<int>> code(static_cast<std::size_t>(nx) * ny * nz);
  auto at = [&](int i, int j, int k) {
    return (static_cast<std::size_t>(i) * ny + j) * nz + k;
  };
  BruteResult out;
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k < nz; ++k) {
        const Vec3 c((i + 0.5) * e.x(), (j + 0.5) * e.y(), (k + 0.5) * e.z());
        bool excluded = false;
        for (const auto& b : roi.excluded_boxes) excluded = excluded || b.contains(c);
        if (excluded) continue;
        ++out.active;
        std::vector<int> digits;
        for (std::size_t l = 0; l < configs.size(); ++l) {
          digits.push_back(
              literal_digit(models[l], geometry::world_to_lidar(configs[l], c)));
        }
        out.codes.insert(digits);
        code[at(i, j, k)] = std::move(digits);
      }
    }
  }

  std::vector<char> seen(code.size(), 0);
  std::function<void(int, int, int, const std::vector<int>&,
                     std::vector<VoxelIndex>&)>
      fill = [&](int i, int j, int k, const std::vector<int>& c,
                 std::vector<VoxelIndex>& set) {
        if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return;
        const std::size_t n = at(i, j, k);
        if (seen[n] || code[n].empty() || code[n] != c) return;
        seen[n] = 1;
        set.push_back({i, j, k});
        fill(i + 1, j, k, c, set);
        fill(i - 1, j, k, c, set);
        fill(i, j + 1, k, c, set);
        fill(i, j - 1, k, c, set);
        fill(i, j, k + 1, c, set);
        fill(i, j, k - 1, c, set);
      };
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      for (int k = 0; k < nz; ++k) {
        const std::size_t n = at(i, j, k);
        if (seen[n] || code[n].empty()) continue;
        std::vector<VoxelIndex> set;
        fill(i, j, k, code[n], set);
        const double v =
            e.x() * e.y() * e.z() * static_cast<double>(set.size());
        const double s = exposed_face_area(set, e);
        out.max_vsr = std::max(out.max_vsr, v / s);
        out.sets.push_back(std::move(set));
      }
    }
  }
  out.components = out.sets.size();
  return out;
}

std::vector<VoxelIndex> random_blob(std::mt19937_64& rng, std::size_t size,
                                    int span) {
  std::uniform_int_distribution<int> coord(0, span - 1);
  std::set<VoxelIndex> s;
  while (s.size() < size) s.insert({coord(rng), coord(rng), coord(rng)});
  std::vector<VoxelIndex> out(s.begin(), s.end());
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace lidarplace::oracle
