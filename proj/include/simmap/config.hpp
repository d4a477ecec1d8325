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

#ifndef SIMMAP__CONFIG_HPP_
#define SIMMAP__CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "simmap/geodesy.hpp"

namespace simmap
{

/// How geodetic fields are neutralised in the Lanelet2 output.
enum class NullMode {
  zero,    ///< lat/lon attributes kept with value "0.0"
  remove,  ///< lat/lon attributes omitted
};

const char * to_string(NullMode mode);
std::optional<NullMode> null_mode_from_string(std::string_view s);

/// Explicit parking space: centreline between two geographic points plus width.
struct ParkingSpaceSpec
{
  GeoPoint from;
  GeoPoint to;
  double width = 2.5;
};

/// Every tunable of the pipeline. Defaults are the documented values.
struct PipelineConfig
{
  double density = 40.0;  ///< samples per square metre of mesh surface
  std::uint64_t seed = 42;
  NullMode null_mode = NullMode::zero;
  double lane_width = 3.5;
  std::map<std::string, double> highway_widths = {
    {"motorway", 12.0}, {"primary", 10.0}, {"secondary", 8.0},
    {"residential", 6.0}, {"service", 4.0}, {"footway", 2.0},
  };
  double default_building_height = 8.0;
  double level_height = 3.0;
  double ground_margin = 10.0;
  double surface_lift = 0.02;
  std::filesystem::path output_dir = "map_package";
  bool emit_color = false;
  std::vector<ParkingSpaceSpec> parking_spaces;
  unsigned threads = 0;  ///< sampler workers; 0 picks the hardware concurrency

  /// Throws ErrorKind::config naming the first out-of-range field.
  void validate() const;
};

/// Defaults overridden by the keys present in `json_text`. Unknown keys and
/// out-of-range values are rejected.
PipelineConfig parse_config(std::string_view json_text);
/// Defaults when `path` is empty, otherwise parse_config of the file.
PipelineConfig load_config(const std::optional<std::filesystem::path> & path);

nlohmann::json to_json(const PipelineConfig & config);

}  // namespace simmap

#endif  // SIMMAP__CONFIG_HPP_
