// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/odr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "lidarplace/abc.hpp"
#include "lidarplace/error.hpp"

namespace lidarplace::odr {
namespace {

constexpr std::uint64_t kTrialPhase = 0x0D0D;

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

Box ObjectSpec::region(const geometry::RoiSpec& roi) const {
  return placement_region.value_or(Box{Vec3::Zero(), roi.extent});
}

void ObjectSpec::validate(const geometry::RoiSpec& roi) const {
  if (!dims.allFinite() || (dims.array() <= 0.0).any()) {
    throw Error(ErrorCode::kSchema, "odr.object_dims must be positive");
  }
  const Box r = region(roi);
  if ((r.min.array() < 0.0).any() || (r.max.array() > roi.extent.array()).any()) {
    throw Error(ErrorCode::kSchema, "odr.placement_region must lie in the roi");
  }
  if (((r.max - r.min).array() < dims.array()).any()) {
    throw Error(ErrorCode::kSchema,
                "odr: object does not fit inside its placement region");
  }
}

std::size_t count_occupied_subspaces(const Box& object_box,
                                     const segmentation::Segmentation& seg,
                                     const geometry::VoxelGrid& grid) {
  const auto& dims = grid.dims();
  const Vec3& e = grid.resolution();
  std::array<std::int32_t, 3> lo{}, hi{};
  for (int a = 0; a < 3; ++a) {
    // Candidate range padded by one voxel; the exact test is on centers.
    const double first = std::floor(object_box.min[a] / e[a] - 0.5) - 1.0;
    const double last = std::ceil(object_box.max[a] / e[a] - 0.5) + 1.0;
    lo[a] = static_cast<std::int32_t>(std::max(first, 0.0));
    hi[a] = static_cast<std::int32_t>(
        std::min(last, static_cast<double>(dims[a] - 1)));
    if (lo[a] > hi[a]) return 0;
  }
  std::vector<std::int32_t> seen;
  for (std::int32_t i = lo[0]; i <= hi[0]; ++i) {
    for (std::int32_t j = lo[1]; j <= hi[1]; ++j) {
      for (std::int32_t k = lo[2]; k <= hi[2]; ++k) {
        const geometry::VoxelIndex v{i, j, k};
        const std::size_t n = grid.linear(v);
        const std::int32_t id = seg.component_of(n);
        if (id >= 0 && object_box.contains(grid.center(v))) seen.push_back(id);
      }
    }
  }
  std::sort(seen.begin(), seen.end());
  return static_cast<std::size_t>(
      std::unique(seen.begin(), seen.end()) - seen.begin());
}

OdrReport estimate_odr(const segmentation::Segmentation& seg,
                       const geometry::VoxelGrid& grid,
                       const geometry::RoiSpec& roi, const ObjectSpec& object,
                       std::size_t trials, std::size_t threshold,
                       std::uint64_t seed, int threads) {
  if (trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "odr: need at least one trial");
  }
  object.validate(roi);
  const Box region = object.region(roi);
  const Vec3 slack = region.max - region.min - object.dims;

  std::vector<std::uint8_t> hit(trials, 0);
  const auto n = static_cast<std::ptrdiff_t>(trials);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1)
#endif
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    abc::Rng rng(abc::substream_seed(seed, 0, kTrialPhase,
                                     static_cast<std::uint64_t>(t)));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Box placed;
    for (int a = 0; a < 3; ++a) {
      placed.min[a] = region.min[a] + u(rng) * slack[a];
      placed.max[a] = placed.min[a] + object.dims[a];
    }
    hit[t] = count_occupied_subspaces(placed, seg, grid) > threshold ? 1 : 0;
  }
  (void)threads;

  OdrReport report;
  report.trials = trials;
  report.threshold = threshold;
  report.detections = static_cast<std::size_t>(
      std::count(hit.begin(), hit.end(), std::uint8_t{1}));
  report.odr =
      static_cast<double>(report.detections) / static_cast<double>(trials);
  return report;
}

OdrReport estimate_odr(const geometry::ConfigSet& configs,
                       std::span<const geometry::LidarModel> models,
                       const geometry::RoiSpec& roi, const ObjectSpec& object,
                       std::size_t trials, std::size_t threshold,
                       std::uint64_t seed, int threads) {
  const geometry::VoxelGrid grid(roi);
  const auto labels = segmentation::first_level_labels(configs, models, grid);
  const auto seg = segmentation::connected_components(labels, grid);
  return estimate_odr(seg, grid, roi, object, trials, threshold, seed, threads);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "spearman needs two equal-length samples of size >= 2");
  }
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double mean = 0.5 * static_cast<double>(a.size() + 1);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - mean) * (rb[i] - mean);
    saa += (ra[i] - mean) * (ra[i] - mean);
    sbb += (rb[i] - mean) * (rb[i] - mean);
  }
  if (saa == 0.0 || sbb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

}  // namespace lidarplace::odr
