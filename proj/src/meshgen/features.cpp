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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "simmap/error.hpp"
#include "simmap/meshgen.hpp"
#include "simmap/text.hpp"

namespace simmap
{
namespace
{
enum class FeatureClass { none, building, parking, road };

FeatureClass classify_tags(const TagMap & tags)
{
  const std::string * building = tags.find("building");
  if (building != nullptr && *building != "no") {
    return FeatureClass::building;
  }
  if (tags.get("amenity") == "parking") {
    return FeatureClass::parking;
  }
  if (tags.contains("highway")) {
    return FeatureClass::road;
  }
  return FeatureClass::none;
}

std::optional<double> positive_number(std::string_view raw)
{
  const auto value = text::parse_double(text::trim(raw));
  if (value && *value > 0.0 && std::isfinite(*value)) {
    return value;
  }
  return std::nullopt;
}

class Classifier
{
public:
  Classifier(const OsmDocument & doc, const Projection & projection, const PipelineConfig & cfg)
  : doc_(doc), projection_(projection), cfg_(cfg)
  {
  }

  void way(const OsmWay & way)
  {
    const FeatureClass cls = classify_tags(way.tags);
    if (cls == FeatureClass::none) {
      ++report_.unrecognized;
      return;
    }
    const auto points = resolve_way_geometry(doc_, way.id, projection_);
    if (cls == FeatureClass::road) {
      road(way, points);
      return;
    }
    if (!way.is_closed()) {
      skip("way", way.id, cls == FeatureClass::building ? "building way is not closed"
                                                        : "parking way is not closed");
      return;
    }
    area(cls, "way", way.id, way.tags, points);
  }

  void relation(const OsmRelation & relation)
  {
    const FeatureClass cls = classify_tags(relation.tags);
    if (relation.tags.get("type") != "multipolygon" ||
        (cls != FeatureClass::building && cls != FeatureClass::parking)) {
      ++report_.unrecognized;
      return;
    }
    std::vector<const OsmWay *> outers;
    std::size_t inners = 0;
    for (const auto & m : relation.members) {
      if (m.kind != MemberKind::way) {
        continue;
      }
      if (m.role == "inner") {
        ++inners;
        continue;
      }
      if (const OsmWay * w = doc_.find_way(m.ref); w != nullptr) {
        outers.push_back(w);
      }
    }
    if (outers.size() != 1 || !outers.front()->is_closed()) {
      skip("relation", relation.id, "multipolygon outer ring is not a single closed way");
      return;
    }
    if (inners > 0) {
      ++report_.outer_ring_only;
    }
    area(cls, "relation", relation.id, relation.tags,
         resolve_way_geometry(doc_, outers.front()->id, projection_));
  }

  FeatureSet finish()
  {
    auto by_id = [](const auto & a, const auto & b) { return a.source_id < b.source_id; };
    std::stable_sort(features_.roads.begin(), features_.roads.end(), by_id);
    std::stable_sort(features_.buildings.begin(), features_.buildings.end(), by_id);
    std::stable_sort(features_.parking_surfaces.begin(), features_.parking_surfaces.end(), by_id);

    const auto & b = doc_.bounds();
    const LocalPoint lo = projection_.project({b.min_lat, b.min_lon});
    const LocalPoint hi = projection_.project({b.max_lat, b.max_lon});
    features_.ground = GroundRect{
      lo.x - cfg_.ground_margin, lo.y - cfg_.ground_margin, hi.x + cfg_.ground_margin,
      hi.y + cfg_.ground_margin};
    return std::move(features_);
  }

  FeatureReport & report() { return report_; }

private:
  void skip(const char * element, OsmId id, std::string reason)
  {
    report_.skipped.push_back({element, id, std::move(reason)});
  }

  void road(const OsmWay & way, const std::vector<LocalPoint> & points)
  {
    const std::string highway_class(way.tags.get("highway"));
    double width = 0.0;
    if (const auto tagged = positive_number(way.tags.get("width"))) {
      width = *tagged;
    } else if (const auto it = cfg_.highway_widths.find(highway_class);
               it != cfg_.highway_widths.end()) {
      width = it->second;
    } else {
      skip("way", way.id, "no width for highway class '" + highway_class + "'");
      return;
    }

    std::vector<std::vector<LocalPoint>> pieces;
    if (way.is_closed() && points.size() >= 4) {
      // A loop's ribbon encloses a hole; mesh it as two open halves.
      const std::size_t mid = points.size() / 2;
      pieces.emplace_back(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(mid) + 1);
      pieces.emplace_back(points.begin() + static_cast<std::ptrdiff_t>(mid), points.end());
    } else {
      pieces.push_back(points);
    }
    std::vector<RoadFeature> accepted;
    for (auto & piece : pieces) {
      try {
        geometry::triangulate_polygon(geometry::buffer_polyline(piece, width), way.id);
      } catch (const Error & e) {
        skip("way", way.id, std::string("road ribbon unusable: ") + e.what());
        return;
      }
      accepted.push_back({way.id, highway_class, std::move(piece), width});
    }
    for (auto & r : accepted) {
      features_.roads.push_back(std::move(r));
    }
  }

  void area(FeatureClass cls, const char * element, OsmId id, const TagMap & tags,
            const std::vector<LocalPoint> & points)
  {
    geometry::Ring ring = geometry::clean_ring(points).points;
    if (ring.size() < 3) {
      skip(element, id, "outline has fewer than 3 distinct vertices");
      return;
    }
    if (!geometry::is_simple(ring)) {
      skip(element, id, "outline is self-intersecting");
      return;
    }
    if (geometry::signed_area(ring) < 0.0) {
      std::reverse(ring.begin(), ring.end());
    }
    try {
      geometry::triangulate_polygon(ring, id);
    } catch (const Error & e) {
      skip(element, id, e.what());
      return;
    }
    if (cls == FeatureClass::building) {
      features_.buildings.push_back({id, std::move(ring), building_height(tags, cfg_)});
    } else {
      features_.parking_surfaces.push_back({id, std::move(ring)});
    }
  }

  const OsmDocument & doc_;
  const Projection & projection_;
  const PipelineConfig & cfg_;
  FeatureSet features_;
  FeatureReport report_;
};
}  // namespace

double building_height(const TagMap & tags, const PipelineConfig & cfg)
{
  if (const auto height = positive_number(tags.get("height"))) {
    return *height;
  }
  if (const auto levels = positive_number(tags.get("building:levels"))) {
    return *levels * cfg.level_height;
  }
  return cfg.default_building_height;
}

FeatureSet classify_features(
  const OsmDocument & doc, const Projection & projection, const PipelineConfig & cfg,
  FeatureReport * report)
{
  Classifier classifier(doc, projection, cfg);
  for (const auto & way : doc.ways()) {
    classifier.way(way);
  }
  for (const auto & relation : doc.relations()) {
    classifier.relation(relation);
  }
  FeatureSet features = classifier.finish();
  if (report != nullptr) {
    *report = std::move(classifier.report());
  }
  return features;
}

}  // namespace simmap
