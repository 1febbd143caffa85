// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numbers>
#include <string>

#include "lidarplace/error.hpp"
#include "lidarplace/scenario.hpp"

namespace lidarplace::scenario {
namespace {

using nlohmann::json;

const std::string kDir = LP_SCENARIO_DIR;

json minimal() {
  return json::parse(R"({
    "schema_version": 1,
    "roi": {"extent": [4, 4, 2], "resolution": [1, 1, 1]},
    "lidar_models": [{"name": "m", "pitches": ["-10deg", "10deg"]}],
    "lidars": [{"model": "m", "count": 2}],
    "bounds": {"lower": [0, 0, 0, 0, 0, 0], "upper": [4, 4, 2, 0, 0.5, 0.5]}
  })");
}

ErrorCode code_of(const json& doc) {
  try {
    parse_scenario(doc);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;  // no error is a test failure below
}

TEST(Scenario, MinimalDefaults) {
  const Scenario s = parse_scenario(minimal());
  EXPECT_EQ(s.lidar_count(), 2u);
  EXPECT_EQ(s.abc.num_bees, 200u);
  EXPECT_EQ(s.abc.max_iterations, 800u);
  EXPECT_EQ(s.odr.trials, 1000u);
  EXPECT_EQ(s.odr.threshold, 1u);
  EXPECT_EQ(s.odr.object.dims, geometry::Vec3(0.5, 0.5, 1.7));
  EXPECT_NEAR(s.model("m").pitches()[1], 10 * std::numbers::pi / 180, 1e-15);
  EXPECT_DOUBLE_EQ(s.bounds.upper.pitch, 0.5);
}

TEST(Scenario, AngleSyntax) {
  EXPECT_NEAR(parse_angle("15deg", "a"), std::numbers::pi / 12, 1e-15);
  EXPECT_DOUBLE_EQ(parse_angle("0.25rad", "a"), 0.25);
  EXPECT_DOUBLE_EQ(parse_angle(0.25, "a"), 0.25);
  EXPECT_NEAR(parse_angle("-2.5 deg", "a"), -2.5 * std::numbers::pi / 180, 1e-15);
  EXPECT_THROW(parse_angle("fifteen", "a"), Error);
  EXPECT_THROW(parse_angle("deg", "a"), Error);
  EXPECT_THROW(parse_angle(json::array(), "a"), Error);
}

TEST(Scenario, SchemaErrors) {
  auto doc = minimal();
  doc["roi"]["extent"] = {10, 4, 2};
  doc["roi"]["resolution"] = {3, 1, 1};
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  doc = minimal();
  doc["bounds"]["lower"] = {0, 0, 0, 0, 1.0, 0};
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  doc = minimal();
  doc["surprise"] = 1;
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  doc = minimal();
  doc["roi"]["extnt"] = {1, 1, 1};
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  doc = minimal();
  doc["schema_version"] = 2;
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  doc = minimal();
  doc["lidars"][0]["model"] = "nope";
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  doc = minimal();
  doc["lidar_models"][0]["pitches"] = {"10deg", "-10deg"};
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  doc = minimal();
  doc["abc"] = {{"bees", 1}};
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  doc = minimal();
  doc["odr"] = {{"object_dims", {5, 1, 1}}};
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  doc = minimal();
  doc.erase("bounds");
  EXPECT_EQ(code_of(doc), ErrorCode::kSchema);

  EXPECT_THROW(parse_scenario_text("{not json"), Error);
}

TEST(Scenario, MissingFileIsIoError) {
  try {
    load_scenario(kDir + "/does_not_exist.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Scenario, CanonicalRoundTrip) {
  for (const char* name :
       {"reference_60x20x4.json", "scaled_30x20x10.json", "coarse_8x8x4.json"}) {
    const Scenario s = load_scenario(kDir + "/" + name);
    const std::string text = canonical_text(s);
    const Scenario again = parse_scenario_text(text);
    EXPECT_EQ(canonical_text(again), text) << name;
    EXPECT_EQ(digest(again), digest(s)) << name;
    EXPECT_EQ(digest(s).size(), 64u);
  }
}

TEST(Scenario, DigestTracksContent) {
  const Scenario a = parse_scenario(minimal());
  auto doc = minimal();
  doc["notes"] = "comments do not change the scenario";
  EXPECT_EQ(digest(parse_scenario(doc)), digest(a));
  doc["abc"] = {{"seed", 2}};
  EXPECT_NE(digest(parse_scenario(doc)), digest(a));
}

TEST(Scenario, ReferenceFixture) {
  const Scenario s = load_scenario(kDir + "/reference_60x20x4.json");
  const geometry::VoxelGrid grid(s.roi);
  EXPECT_EQ(grid.voxel_count(), 48000u);
  EXPECT_EQ(s.lidar_count(), 4u);
  EXPECT_EQ(s.expanded_models().front().beam_count(), 16u);
  EXPECT_EQ(s.abc.num_bees, 200u);
  EXPECT_EQ(s.abc.max_iterations, 800u);
}

TEST(Poses, ObjectAndArrayForms) {
  const auto doc = json::parse(R"({"configuration": [
    {"position": [1, 2, 3], "pitch": "10deg"},
    [4, 5, 6, 0, 0.1, "-5deg"]
  ]})");
  const auto poses = parse_poses(doc);
  ASSERT_EQ(poses.size(), 2u);
  EXPECT_EQ(poses[0].position, geometry::Vec3(1, 2, 3));
  EXPECT_NEAR(poses[0].pitch, std::numbers::pi / 18, 1e-15);
  EXPECT_DOUBLE_EQ(poses[0].roll, 0.0);
  EXPECT_DOUBLE_EQ(poses[1].pitch, 0.1);
  EXPECT_EQ(parse_poses(doc["configuration"]), poses);
  EXPECT_EQ(parse_poses(poses_to_json(poses, {"a", "b"})), poses);
  EXPECT_THROW(parse_poses(json::parse(R"({"configuration": []})")), Error);
  EXPECT_THROW(parse_poses(json::parse(R"([[1, 2, 3]])")), Error);
}

}  // namespace
}  // namespace lidarplace::scenario
