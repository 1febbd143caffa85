// Copyright 2026 The lidarplace Authors
// SPDX-License-Identifier: Apache-2.0
#include "lidarplace/scenario.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "lidarplace/error.hpp"

namespace lidarplace::scenario {
namespace {

using nlohmann::json;
using geometry::Vec3;

[[noreturn]] void schema_error(std::string_view field, std::string_view what) {
  throw Error(ErrorCode::kSchema, std::string(field) + ": " + std::string(what));
}

void reject_unknown(const json& obj, std::string_view field,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) schema_error(field, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) schema_error(field, "unknown key '" + key + "'");
  }
}

const json& require(const json& obj, std::string_view key,
                    std::string_view field) {
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) {
    schema_error(field, "missing required key '" + std::string(key) + "'");
  }
  return *it;
}

double as_number(const json& v, std::string_view field) {
  if (!v.is_number()) schema_error(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(field, "must be finite");
  return d;
}

std::size_t as_count(const json& v, std::string_view field) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    schema_error(field, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

Vec3 as_vec3(const json& v, std::string_view field) {
  if (!v.is_array() || v.size() != 3) schema_error(field, "expected [x, y, z]");
  return {as_number(v[0], field), as_number(v[1], field),
          as_number(v[2], field)};
}

json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

geometry::Box parse_box(const json& v, std::string_view field) {
  reject_unknown(v, field, {"min", "max"});
  return {as_vec3(require(v, "min", field), std::string(field) + ".min"),
          as_vec3(require(v, "max", field), std::string(field) + ".max")};
}

json box_json(const geometry::Box& b) {
  return {{"min", vec3_json(b.min)}, {"max", vec3_json(b.max)}};
}

geometry::PoseConfig parse_pose(const json& v, std::string_view field) {
  geometry::PoseConfig p;
  if (v.is_array()) {
    if (v.size() != 6) {
      schema_error(field, "expected [x, y, z, yaw, pitch, roll]");
    }
    p.position = {as_number(v[0], field), as_number(v[1], field),
                  as_number(v[2], field)};
    p.yaw = parse_angle(v[3], field);
    p.pitch = parse_angle(v[4], field);
    p.roll = parse_angle(v[5], field);
    return p;
  }
  reject_unknown(v, field, {"position", "yaw", "pitch", "roll", "model"});
  const std::string f(field);
  p.position = as_vec3(require(v, "position", field), f + ".position");
  p.yaw = v.contains("yaw") ? parse_angle(v["yaw"], f + ".yaw") : 0.0;
  p.pitch = v.contains("pitch") ? parse_angle(v["pitch"], f + ".pitch") : 0.0;
  p.roll = v.contains("roll") ? parse_angle(v["roll"], f + ".roll") : 0.0;
  return p;
}

json pose_json(const geometry::PoseConfig& p) {
  return {{"position", vec3_json(p.position)},
          {"yaw", p.yaw},
          {"pitch", p.pitch},
          {"roll", p.roll}};
}

geometry::LidarModel parse_model(const json& v, std::string_view field) {
  const std::string f(field);
  const bool listed = v.contains("pitches");
  const bool spaced = v.contains("evenly_spaced");
  if (listed == spaced) {
    schema_error(field, "give exactly one of 'pitches' or 'evenly_spaced'");
  }
  try {
    if (listed) {
      const json& arr = v["pitches"];
      if (!arr.is_array()) schema_error(f + ".pitches", "expected an array");
      std::vector<double> pitches;
      for (const auto& a : arr) pitches.push_back(parse_angle(a, f + ".pitches"));
      return geometry::LidarModel(std::move(pitches));
    }
    const json& es = v["evenly_spaced"];
    const std::string g = f + ".evenly_spaced";
    reject_unknown(es, g, {"min", "max", "count"});
    return geometry::LidarModel::evenly_spaced(
        parse_angle(require(es, "min", g), g + ".min"),
        parse_angle(require(es, "max", g), g + ".max"),
        as_count(require(es, "count", g), g + ".count"));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSchema) throw;
    schema_error(field, e.what());
  }
}

std::string hex(const unsigned char* data, std::size_t n) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(kDigits[data[i] >> 4]);
    out.push_back(kDigits[data[i] & 0xF]);
  }
  return out;
}

}  // namespace

double parse_angle(const json& value, std::string_view field) {
  if (value.is_number()) return as_number(value, field);
  if (!value.is_string()) schema_error(field, "expected an angle");
  std::string text = value.get<std::string>();
  std::erase_if(text, [](char c) { return c == ' '; });
  double scale = 1.0;
  if (text.ends_with("deg")) {
    scale = std::numbers::pi / 180.0;
    text.resize(text.size() - 3);
  } else if (text.ends_with("rad")) {
    text.resize(text.size() - 3);
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(v)) {
    schema_error(field, "cannot parse angle '" + value.get<std::string>() +
                            "' (use e.g. \"15deg\" or \"0.26rad\")");
  }
  return v * scale;
}

void Scenario::validate() const {
  roi.validate();
  if (lidar_models.empty()) schema_error("lidar_models", "must not be empty");
  std::set<std::string> names;
  for (const auto& m : lidar_models) {
    if (m.name.empty()) schema_error("lidar_models", "model name is empty");
    if (!names.insert(m.name).second) {
      schema_error("lidar_models", "duplicate model name '" + m.name + "'");
    }
  }
  if (lidars.empty() || lidar_count() == 0) {
    schema_error("lidars", "at least one lidar is required");
  }
  for (const auto& g : lidars) {
    if (!names.contains(g.model)) {
      schema_error("lidars", "unknown model '" + g.model + "'");
    }
  }
  bounds.validate();
  try {
    abc.validate();
  } catch (const Error& e) {
    schema_error("abc", e.what());
  }
  odr.object.validate(roi);
  if (odr.trials < 1) schema_error("odr.trials", "must be >= 1");
  // The packed code space must fit in 63 bits.
  double log_size = 0.0;
  for (const auto& m : expanded_models()) {
    log_size += std::log2(static_cast<double>(m.beam_count() + 1));
  }
  if (log_size >= 63.0) schema_error("lidars", "too many lidars/beams");
}

const geometry::LidarModel& Scenario::model(std::string_view name) const {
  for (const auto& m : lidar_models) {
    if (m.name == name) return m.model;
  }
  throw Error(ErrorCode::kSchema, "unknown lidar model '" + std::string(name) + "'");
}

std::vector<geometry::LidarModel> Scenario::expanded_models() const {
  std::vector<geometry::LidarModel> out;
  for (const auto& g : lidars) {
    for (std::size_t i = 0; i < g.count; ++i) out.push_back(model(g.model));
  }
  return out;
}

std::vector<std::string> Scenario::expanded_model_names() const {
  std::vector<std::string> out;
  for (const auto& g : lidars) out.insert(out.end(), g.count, g.model);
  return out;
}

std::size_t Scenario::lidar_count() const {
  std::size_t n = 0;
  for (const auto& g : lidars) n += g.count;
  return n;
}

Scenario parse_scenario(const json& doc) {
  try {
    reject_unknown(doc, "scenario",
                   {"schema_version", "name", "roi", "lidar_models", "lidars",
                    "bounds", "abc", "odr", "notes"});
    const json& version = require(doc, "schema_version", "scenario");
    if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
      schema_error("schema_version",
                   "unsupported version (expected " +
                       std::to_string(kSchemaVersion) + ")");
    }
    Scenario s;
    if (doc.contains("name")) {
      if (!doc["name"].is_string()) schema_error("name", "expected a string");
      s.name = doc["name"].get<std::string>();
    }

    const json& roi = require(doc, "roi", "scenario");
    reject_unknown(roi, "roi", {"extent", "resolution", "excluded_boxes"});
    s.roi.extent = as_vec3(require(roi, "extent", "roi"), "roi.extent");
    s.roi.resolution =
        as_vec3(require(roi, "resolution", "roi"), "roi.resolution");
    if (roi.contains("excluded_boxes")) {
      const json& boxes = roi["excluded_boxes"];
      if (!boxes.is_array()) schema_error("roi.excluded_boxes", "expected an array");
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        s.roi.excluded_boxes.push_back(
            parse_box(boxes[i], "roi.excluded_boxes[" + std::to_string(i) + "]"));
      }
    }

    const json& models = require(doc, "lidar_models", "scenario");
    if (!models.is_array()) schema_error("lidar_models", "expected an array");
    for (std::size_t i = 0; i < models.size(); ++i) {
      const std::string f = "lidar_models[" + std::to_string(i) + "]";
      reject_unknown(models[i], f, {"name", "pitches", "evenly_spaced"});
      const json& name = require(models[i], "name", f);
      if (!name.is_string()) schema_error(f + ".name", "expected a string");
      s.lidar_models.push_back({name.get<std::string>(), parse_model(models[i], f)});
    }

    const json& lidars = require(doc, "lidars", "scenario");
    if (!lidars.is_array()) schema_error("lidars", "expected an array");
    for (std::size_t i = 0; i < lidars.size(); ++i) {
      const std::string f = "lidars[" + std::to_string(i) + "]";
      reject_unknown(lidars[i], f, {"model", "count"});
      const json& model = require(lidars[i], "model", f);
      if (!model.is_string()) schema_error(f + ".model", "expected a string");
      LidarGroup g{model.get<std::string>(), 1};
      if (lidars[i].contains("count")) {
        g.count = as_count(lidars[i]["count"], f + ".count");
      }
      s.lidars.push_back(std::move(g));
    }

    const json& bounds = require(doc, "bounds", "scenario");
    reject_unknown(bounds, "bounds", {"lower", "upper"});
    s.bounds.lower = parse_pose(require(bounds, "lower", "bounds"), "bounds.lower");
    s.bounds.upper = parse_pose(require(bounds, "upper", "bounds"), "bounds.upper");

    if (doc.contains("abc")) {
      const json& a = doc["abc"];
      reject_unknown(a, "abc",
                     {"bees", "iterations", "abandonment_threshold", "seed",
                      "mutate_all_dimensions"});
      if (a.contains("bees")) s.abc.num_bees = as_count(a["bees"], "abc.bees");
      if (a.contains("iterations")) {
        s.abc.max_iterations = as_count(a["iterations"], "abc.iterations");
      }
      if (a.contains("abandonment_threshold")) {
        s.abc.abandonment_threshold =
            as_count(a["abandonment_threshold"], "abc.abandonment_threshold");
      }
      if (a.contains("seed")) {
        const json& seed = a["seed"];
        if (!seed.is_number_unsigned() &&
            !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
          schema_error("abc.seed", "expected an unsigned integer");
        }
        s.abc.rng_seed = a["seed"].get<std::uint64_t>();
      }
      if (a.contains("mutate_all_dimensions")) {
        if (!a["mutate_all_dimensions"].is_boolean()) {
          schema_error("abc.mutate_all_dimensions", "expected a boolean");
        }
        s.abc.mutate_all_dimensions = a["mutate_all_dimensions"].get<bool>();
      }
    }

    if (doc.contains("odr")) {
      const json& o = doc["odr"];
      reject_unknown(o, "odr", {"object_dims", "placement_region", "trials", "threshold"});
      if (o.contains("object_dims")) {
        s.odr.object.dims = as_vec3(o["object_dims"], "odr.object_dims");
      }
      if (o.contains("placement_region")) {
        s.odr.object.placement_region =
            parse_box(o["placement_region"], "odr.placement_region");
      }
      if (o.contains("trials")) s.odr.trials = as_count(o["trials"], "odr.trials");
      if (o.contains("threshold")) {
        s.odr.threshold = as_count(o["threshold"], "odr.threshold");
      }
    }

    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("scenario: ") + e.what());
  }
}

Scenario parse_scenario_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, std::string("scenario: invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchema, path.string() + ": invalid JSON: " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_json_file(path));
}

json to_json(const Scenario& s) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["name"] = s.name;

  json boxes = json::array();
  for (const auto& b : s.roi.excluded_boxes) boxes.push_back(box_json(b));
  doc["roi"] = {{"extent", vec3_json(s.roi.extent)},
                {"resolution", vec3_json(s.roi.resolution)},
                {"excluded_boxes", boxes}};

  json models = json::array();
  for (const auto& m : s.lidar_models) {
    const auto p = m.model.pitches();
    models.push_back({{"name", m.name},
                      {"pitches", std::vector<double>(p.begin(), p.end())}});
  }
  doc["lidar_models"] = models;

  json lidars = json::array();
  for (const auto& g : s.lidars) lidars.push_back({{"model", g.model}, {"count", g.count}});
  doc["lidars"] = lidars;

  doc["bounds"] = {{"lower", pose_json(s.bounds.lower)},
                   {"upper", pose_json(s.bounds.upper)}};
  doc["abc"] = {{"bees", s.abc.num_bees},
                {"iterations", s.abc.max_iterations},
                {"abandonment_threshold", s.abc.abandonment_threshold},
                {"seed", s.abc.rng_seed},
                {"mutate_all_dimensions", s.abc.mutate_all_dimensions}};
  json odr = {{"object_dims", vec3_json(s.odr.object.dims)},
              {"trials", s.odr.trials},
              {"threshold", s.odr.threshold}};
  if (s.odr.object.placement_region) {
    odr["placement_region"] = box_json(*s.odr.object.placement_region);
  }
  doc["odr"] = odr;
  return doc;
}

std::string canonical_text(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

std::string digest(const Scenario& s) {
  const std::string text = canonical_text(s);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInternal, "sha256 failed");
  }
  return hex(md, len);
}

geometry::ConfigSet parse_poses(const json& doc) {
  try {
    const json& arr = doc.is_array() ? doc : require(doc, "configuration", "poses");
    if (!arr.is_array() || arr.empty()) {
      schema_error("configuration", "expected a non-empty array of poses");
    }
    geometry::ConfigSet out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(parse_pose(arr[i], "configuration[" + std::to_string(i) + "]"));
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchema, std::string("poses: ") + e.what());
  }
}

geometry::ConfigSet load_poses(const std::filesystem::path& path) {
  return parse_poses(read_json_file(path));
}

json poses_to_json(const geometry::ConfigSet& configs,
                   const std::vector<std::string>& model_names) {
  json arr = json::array();
  for (std::size_t i = 0; i < configs.size(); ++i) {
    json p = pose_json(configs[i]);
    if (i < model_names.size()) p["model"] = model_names[i];
    arr.push_back(std::move(p));
  }
  return arr;
}

}  // namespace lidarplace::scenario
