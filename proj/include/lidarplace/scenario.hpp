// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: JSON with an explicit schema_version. Angles are numbers in
// radians or strings carrying a unit suffix ("15deg", "0.2rad"). The canonical
// form written back out uses plain radians and sorted keys, so
// parse -> serialize -> parse is the identity. The schema is described in README.md.
#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lidarplace/abc.hpp"
#include "lidarplace/geometry.hpp"
#include "lidarplace/odr.hpp"

namespace lidarplace::scenario {

inline constexpr int kSchemaVersion = 1;

struct NamedModel {
  std::string name;
  geometry::LidarModel model;

  bool operator==(const NamedModel&) const = default;
};

struct LidarGroup {
  std::string model;
  std::size_t count = 1;

  bool operator==(const LidarGroup&) const = default;
};

struct OdrSettings {
  odr::ObjectSpec object;
  std::size_t trials = 1000;
  std::size_t threshold = 1;
};

struct Scenario {
  std::string name;
  geometry::RoiSpec roi;
  std::vector<NamedModel> lidar_models;
  std::vector<LidarGroup> lidars;
  geometry::PoseBounds bounds;
  abc::AbcParams abc;  // `threads` is a run option, never serialized
  OdrSettings odr;

  /// Throws Error(kSchema) on the first violated invariant.
  void validate() const;

  const geometry::LidarModel& model(std::string_view name) const;
  /// One model per LiDAR, groups expanded in order.
  std::vector<geometry::LidarModel> expanded_models() const;
  std::vector<std::string> expanded_model_names() const;
  std::size_t lidar_count() const;
};

/// Parses "15deg", "0.2rad", "0.2" or a JSON number (radians).
double parse_angle(const nlohmann::json& value, std::string_view field);

Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const Scenario& s);
std::string canonical_text(const Scenario& s);
/// SHA-256 of the canonical text, lowercase hex.
std::string digest(const Scenario& s);

/// Poses under a top-level "configuration" array, as written by results.
geometry::ConfigSet parse_poses(const nlohmann::json& doc);
geometry::ConfigSet load_poses(const std::filesystem::path& path);
nlohmann::json poses_to_json(const geometry::ConfigSet& configs,
                             const std::vector<std::string>& model_names);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace lidarplace::scenario
