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
#include <vector>

#include <spdlog/spdlog.h>

#include "simmap/geometry.hpp"
#include "simmap/lanelet.hpp"
#include "simmap/text.hpp"

namespace simmap::lanelet
{

namespace
{

bool is_building(const TagMap & tags)
{
  const auto * v = tags.find("building");
  return v != nullptr && *v != "no";
}

class Builder
{
public:
  explicit Builder(const Projection & projection) : projection_(projection) {}

  Id add_point(const LocalPoint & local)
  {
    const GeoPoint geo = projection_.unproject(local);
    Point p;
    p.id = next_id_++;
    p.lat = geo.lat;
    p.lon = geo.lon;
    p.local_x = local.x;
    p.local_y = local.y;
    map_.points.push_back(std::move(p));
    return map_.points.back().id;
  }

  std::vector<Id> add_points(const std::vector<LocalPoint> & pts)
  {
    std::vector<Id> ids;
    ids.reserve(pts.size());
    for (const auto & p : pts) {
      ids.push_back(add_point(p));
    }
    return ids;
  }

  Id add_linestring(std::vector<Id> refs, TagMap tags)
  {
    LineString ls;
    ls.id = next_id_++;
    ls.point_refs = std::move(refs);
    ls.tags = std::move(tags);
    map_.linestrings.push_back(std::move(ls));
    return map_.linestrings.back().id;
  }

  void add_lanelet(Id left, Id right)
  {
    Lanelet ll;
    ll.id = next_id_++;
    ll.left = left;
    ll.right = right;
    ll.tags = TagMap{{"type", "lanelet"}, {"subtype", "road"}, {"location", "urban"}};
    map_.lanelets.push_back(std::move(ll));
  }

  LaneletMap take() && { return std::move(map_); }

private:
  const Projection & projection_;
  LaneletMap map_;
  Id next_id_ = 1;
};

}  // namespace

LaneletMap derive_lanelets(
  const OsmDocument & doc, const Projection & projection, const PipelineConfig & cfg,
  DeriveReport * report)
{
  std::vector<const OsmWay *> ways;
  ways.reserve(doc.ways().size());
  for (const auto & w : doc.ways()) {
    ways.push_back(&w);
  }
  std::stable_sort(ways.begin(), ways.end(), [](const OsmWay * a, const OsmWay * b) {
    return a->id < b->id;
  });

  auto skip = [&](OsmId id, const char * why) {
    spdlog::warn("lanelet: skipping way {}: {}", id, why);
    if (report != nullptr) {
      report->skipped_ways.push_back(id);
    }
  };

  Builder builder(projection);
  const double half = cfg.lane_width / 2.0;
  const TagMap bound_tags{{"type", "line_thin"}, {"subtype", "solid"}};

  for (const OsmWay * way : ways) {
    if (!way->tags.contains("highway") || is_building(way->tags) ||
        way->tags.get("amenity") == "parking") {
      continue;
    }
    const auto centerline =
      geometry::dedupe_consecutive(resolve_way_geometry(doc, way->id, projection));
    if (centerline.size() < 2) {
      skip(way->id, "centreline has fewer than two distinct points");
      continue;
    }
    const auto left = geometry::offset_polyline(centerline, half);
    const auto right = geometry::offset_polyline(centerline, -half);
    const auto left_ids = builder.add_points(left);
    const auto right_ids = builder.add_points(right);
    const Id left_ls = builder.add_linestring(left_ids, bound_tags);
    const Id right_ls = builder.add_linestring(right_ids, bound_tags);
    builder.add_lanelet(left_ls, right_ls);
  }

  for (const OsmWay * way : ways) {
    if (way->tags.get("amenity") != "parking" || is_building(way->tags)) {
      continue;
    }
    if (!way->is_closed()) {
      skip(way->id, "parking area is not closed");
      continue;
    }
    auto ring = geometry::dedupe_consecutive(resolve_way_geometry(doc, way->id, projection));
    if (ring.size() >= 2 && ring.front() == ring.back()) {
      ring.pop_back();
    }
    if (ring.size() < 3) {
      skip(way->id, "parking area has fewer than three distinct points");
      continue;
    }
    auto ids = builder.add_points(ring);
    ids.push_back(ids.front());
    builder.add_linestring(std::move(ids), TagMap{{"type", "parking_lot"}, {"area", "yes"}});
  }

  for (const auto & space : cfg.parking_spaces) {
    const Id a = builder.add_point(projection.project(space.from));
    const Id b = builder.add_point(projection.project(space.to));
    builder.add_linestring(
      {a, b}, TagMap{{"type", "parking_space"}, {"width", text::format_decimal(space.width)}});
  }

  LaneletMap map = std::move(builder).take();
  if (map.lanelets.empty() && map.linestrings.empty()) {
    spdlog::warn("lanelet: no highway or parking features, writing an empty map");
  }
  return map;
}

}  // namespace simmap::lanelet
