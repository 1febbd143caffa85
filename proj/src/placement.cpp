// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/placement.hpp"

#include <algorithm>

#include "lidarplace/cost.hpp"
#include "lidarplace/error.hpp"

namespace lidarplace::placement {

PlacementProblem::PlacementProblem(const geometry::RoiSpec& roi,
                                   std::vector<geometry::LidarModel> models,
                                   const geometry::PoseBounds& bounds)
    : grid_(roi), models_(std::move(models)), bounds_(bounds) {
  if (models_.empty()) {
    throw Error(ErrorCode::kSchema, "at least one lidar is required");
  }
  bounds_.validate();
  yaw_ = std::clamp(0.0, bounds_.lower.yaw, bounds_.upper.yaw);
}

abc::Bounds PlacementProblem::decision_bounds() const {
  abc::Bounds b;
  const auto& lo = bounds_.lower;
  const auto& hi = bounds_.upper;
  for (std::size_t i = 0; i < models_.size(); ++i) {
    b.lower.insert(b.lower.end(), {lo.position.x(), lo.position.y(),
                                   lo.position.z(), lo.pitch, lo.roll});
    b.upper.insert(b.upper.end(), {hi.position.x(), hi.position.y(),
                                   hi.position.z(), hi.pitch, hi.roll});
  }
  return b;
}

geometry::ConfigSet PlacementProblem::decode(std::span<const double> x) const {
  if (x.size() != dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "decision vector size mismatch");
  }
  geometry::ConfigSet configs(models_.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const double* p = x.data() + kParamsPerLidar * i;
    configs[i].position = {p[0], p[1], p[2]};
    configs[i].yaw = yaw_;
    configs[i].pitch = p[3];
    configs[i].roll = p[4];
  }
  return configs;
}

std::vector<double> PlacementProblem::encode(
    const geometry::ConfigSet& configs) const {
  if (configs.size() != models_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "pose count mismatch");
  }
  std::vector<double> x;
  x.reserve(dimension());
  for (const auto& c : configs) {
    x.insert(x.end(), {c.position.x(), c.position.y(), c.position.z(),
                       c.pitch, c.roll});
  }
  return x;
}

double PlacementProblem::operator()(std::span<const double> x) const {
  return cost::max_vsr(decode(x), models_, grid_);
}

abc::SolveResult PlacementProblem::solve(const abc::AbcParams& params) const {
  return abc::optimize([this](std::span<const double> x) { return (*this)(x); },
                       decision_bounds(), params);
}

}  // namespace lidarplace::placement
