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

#ifndef SIMMAP__LANELET_HPP_
#define SIMMAP__LANELET_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "simmap/config.hpp"
#include "simmap/geodesy.hpp"
#include "simmap/osm.hpp"
#include "simmap/xml.hpp"

namespace simmap::lanelet
{

using Id = std::int64_t;

/// Map vertex. Local coordinates are authoritative; lat/lon are optional so
/// that the remove null mode can drop them.
struct Point
{
  Id id = 0;
  std::optional<double> lat;
  std::optional<double> lon;
  double local_x = 0.0;
  double local_y = 0.0;
  double ele = 0.0;
  TagMap tags;                        ///< tags other than local_x/local_y/ele
  xml::AttributeList extra_attributes;  ///< attributes other than id/lat/lon

  friend bool operator==(const Point &, const Point &) = default;
};

struct LineString
{
  Id id = 0;
  std::vector<Id> point_refs;
  TagMap tags;
  xml::AttributeList extra_attributes;

  std::string_view type() const { return tags.get("type"); }

  friend bool operator==(const LineString &, const LineString &) = default;
};

struct Lanelet
{
  Id id = 0;
  Id left = 0;
  Id right = 0;
  TagMap tags;
  std::vector<OsmMember> extra_members;  ///< e.g. regulatory_element references
  xml::AttributeList extra_attributes;

  friend bool operator==(const Lanelet &, const Lanelet &) = default;
};

/// Relation that is not a lanelet (regulatory elements, multipolygons, ...).
/// Carried through untouched and never validated.
struct Relation
{
  Id id = 0;
  std::vector<OsmMember> members;
  TagMap tags;
  xml::AttributeList extra_attributes;

  friend bool operator==(const Relation &, const Relation &) = default;
};

inline constexpr std::string_view kParkingLotType = "parking_lot";
inline constexpr std::string_view kParkingSpaceType = "parking_space";

struct LaneletMap
{
  xml::AttributeList root_attributes{{"version", "0.6"}, {"generator", "simmap"}};
  std::vector<Point> points;
  std::vector<LineString> linestrings;
  std::vector<Lanelet> lanelets;
  std::vector<Relation> other_relations;

  const Point * find_point(Id id) const;
  const LineString * find_linestring(Id id) const;

  /// Closed `type=parking_lot` linestrings.
  std::vector<const LineString *> parking_lots() const;
  /// `type=parking_space` linestrings.
  std::vector<const LineString *> parking_spaces() const;

  friend bool operator==(const LaneletMap &, const LaneletMap &) = default;
};

struct DeriveReport
{
  std::vector<OsmId> skipped_ways;
};

/// One lanelet per `highway=*` way (bounds offset +-lane_width/2 from the
/// centreline, one bound point per centreline point), one parking lot per
/// closed `amenity=parking` way, and parking spaces from the config.
/// Element ids are assigned sequentially from 1.
LaneletMap derive_lanelets(const OsmDocument & doc, const Projection & projection,
                           const PipelineConfig & cfg, DeriveReport * report = nullptr);

struct IngestReport
{
  /// Non-lanelet relations kept verbatim but not checked.
  std::vector<Id> unvalidated_relations;
};

/// Reads a Lanelet2 OSM file (as exported by Vector Map Builder or by
/// write_lanelet_osm). Throws ErrorKind::schema when a lanelet lacks a
/// left/right member or a node lacks local_x/local_y.
LaneletMap ingest_lanelet(std::istream & input, IngestReport * report = nullptr);
LaneletMap ingest_lanelet(std::string_view xml_text, IngestReport * report = nullptr);
LaneletMap load_lanelet(const std::string & path, IngestReport * report = nullptr);

void write_lanelet_osm(const LaneletMap & map, std::ostream & out);
std::string to_osm_string(const LaneletMap & map);
void save_lanelet(const LaneletMap & map, const std::string & path);

/// Zero mode sets every lat/lon to 0.0; remove mode drops them. Nothing else
/// changes, and applying it twice equals applying it once.
LaneletMap nullify_latlon(const LaneletMap & map, NullMode mode);

struct Violation
{
  std::string rule;     ///< "R1".."R5"
  std::string element;  ///< "node", "way" or "relation"
  Id id = 0;
  std::string message;
};

struct ValidationReport
{
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(std::string_view rule) const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// R1 dangling references, R2 crossing (or identical) lanelet bounds,
/// R3 nonzero lat/lon, R4 parking space without a positive width tag,
/// R5 lanelet bound with fewer than two points.
ValidationReport validate_lanelet(const LaneletMap & map);

}  // namespace simmap::lanelet

#endif  // SIMMAP__LANELET_HPP_
