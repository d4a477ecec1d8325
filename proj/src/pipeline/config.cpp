// Copyright 2026 The simmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simmap/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "simmap/error.hpp"

namespace simmap
{
namespace
{
using nlohmann::json;

[[noreturn]] void fail(const std::string & message) { throw Error(ErrorKind::config, message); }

double get_number(const json & j, const char * key)
{
  if (!j.is_number()) {
    fail(std::string("'") + key + "' must be a number");
  }
  return j.get<double>();
}

void require_positive(double value, const char * key)
{
  if (!(value > 0.0) || !std::isfinite(value)) {
    fail(std::string("'") + key + "' must be a positive finite number");
  }
}

GeoPoint get_geo(const json & j, const char * key)
{
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(std::string("'") + key + "' must be a [lat, lon] pair");
  }
  GeoPoint p{j[0].get<double>(), j[1].get<double>()};
  if (!is_valid(p)) {
    fail(std::string("'") + key + "' is outside the valid lat/lon range");
  }
  return p;
}
}  // namespace

const char * to_string(NullMode mode) { return mode == NullMode::zero ? "zero" : "remove"; }

std::optional<NullMode> null_mode_from_string(std::string_view s)
{
  if (s == "zero") {
    return NullMode::zero;
  }
  if (s == "remove") {
    return NullMode::remove;
  }
  return std::nullopt;
}

void PipelineConfig::validate() const
{
  require_positive(density, "density");
  require_positive(lane_width, "lane_width");
  require_positive(default_building_height, "default_building_height");
  require_positive(level_height, "level_height");
  require_positive(ground_margin, "ground_margin");
  require_positive(surface_lift, "surface_lift");
  for (const auto & [cls, width] : highway_widths) {
    require_positive(width, ("highway_width_table." + cls).c_str());
  }
  for (const auto & space : parking_spaces) {
    require_positive(space.width, "parking_spaces[].width");
    if (space.from == space.to) {
      fail("parking space endpoints must differ");
    }
  }
  if (output_dir.empty()) {
    fail("'output_dir' must not be empty");
  }
}

PipelineConfig parse_config(std::string_view json_text)
{
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error & e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    fail("config root must be a JSON object");
  }

  PipelineConfig cfg;
  for (const auto & [key, value] : root.items()) {
    if (key == "density") {
      cfg.density = get_number(value, "density");
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        fail("'seed' must be a non-negative integer");
      }
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "null_mode") {
      const auto mode = value.is_string() ? null_mode_from_string(value.get<std::string>())
                                          : std::nullopt;
      if (!mode) {
        fail("'null_mode' must be \"zero\" or \"remove\"");
      }
      cfg.null_mode = *mode;
    } else if (key == "lane_width") {
      cfg.lane_width = get_number(value, "lane_width");
    } else if (key == "highway_width_table") {
      if (!value.is_object()) {
        fail("'highway_width_table' must be an object of class -> metres");
      }
      for (const auto & [cls, width] : value.items()) {
        cfg.highway_widths[cls] = get_number(width, "highway_width_table");
      }
    } else if (key == "default_building_height") {
      cfg.default_building_height = get_number(value, "default_building_height");
    } else if (key == "level_height") {
      cfg.level_height = get_number(value, "level_height");
    } else if (key == "ground_margin") {
      cfg.ground_margin = get_number(value, "ground_margin");
    } else if (key == "surface_lift") {
      cfg.surface_lift = get_number(value, "surface_lift");
    } else if (key == "output_dir") {
      if (!value.is_string()) {
        fail("'output_dir' must be a string");
      }
      cfg.output_dir = value.get<std::string>();
    } else if (key == "emit_color") {
      if (!value.is_boolean()) {
        fail("'emit_color' must be a boolean");
      }
      cfg.emit_color = value.get<bool>();
    } else if (key == "threads") {
      if (!value.is_number_integer() || value.get<long long>() < 0 ||
          value.get<long long>() > 1024) {
        fail("'threads' must be an integer in [0, 1024]");
      }
      cfg.threads = value.get<unsigned>();
    } else if (key == "parking_spaces") {
      if (!value.is_array()) {
        fail("'parking_spaces' must be an array");
      }
      for (const auto & entry : value) {
        if (!entry.is_object()) {
          fail("parking space entries must be objects");
        }
        ParkingSpaceSpec space;
        bool has_from = false;
        bool has_to = false;
        for (const auto & [k, v] : entry.items()) {
          if (k == "from") {
            space.from = get_geo(v, "from");
            has_from = true;
          } else if (k == "to") {
            space.to = get_geo(v, "to");
            has_to = true;
          } else if (k == "width") {
            space.width = get_number(v, "width");
          } else {
            fail("unknown parking space key '" + k + "'");
          }
        }
        if (!has_from || !has_to) {
          fail("parking space entries need 'from' and 'to'");
        }
        cfg.parking_spaces.push_back(space);
      }
    } else {
      fail("unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::optional<std::filesystem::path> & path)
{
  if (!path || path->empty()) {
    return PipelineConfig{};
  }
  std::ifstream in(*path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open config " + path->string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

json to_json(const PipelineConfig & config)
{
  json spaces = json::array();
  for (const auto & s : config.parking_spaces) {
    spaces.push_back({{"from", {s.from.lat, s.from.lon}}, {"to", {s.to.lat, s.to.lon}},
                      {"width", s.width}});
  }
  return {
    {"density", config.density},
    {"seed", config.seed},
    {"null_mode", to_string(config.null_mode)},
    {"lane_width", config.lane_width},
    {"highway_width_table", config.highway_widths},
    {"default_building_height", config.default_building_height},
    {"level_height", config.level_height},
    {"ground_margin", config.ground_margin},
    {"surface_lift", config.surface_lift},
    {"output_dir", config.output_dir.generic_string()},
    {"emit_color", config.emit_color},
    {"parking_spaces", spaces},
    {"threads", config.threads},
  };
}

}  // namespace simmap
