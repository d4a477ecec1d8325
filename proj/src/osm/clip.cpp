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

#include <string>
#include <unordered_set>

#include "simmap/error.hpp"
#include "simmap/osm.hpp"

namespace simmap
{

OsmDocument clip_bbox(const OsmDocument & doc, const GeoBounds & box)
{
  if (box.is_degenerate()) {
    throw Error(ErrorKind::degenerate_bounds, "clip box is degenerate");
  }
  if (!box.intersects(doc.bounds())) {
    throw Error(ErrorKind::empty_result, "clip box is disjoint from the document bounds");
  }

  std::unordered_set<OsmId> inside;
  for (const auto & node : doc.nodes()) {
    if (box.contains(node.position)) {
      inside.insert(node.id);
    }
  }

  std::unordered_set<OsmId> kept_nodes = inside;
  std::unordered_set<OsmId> kept_ways;
  for (const auto & way : doc.ways()) {
    bool touches = false;
    for (const OsmId ref : way.node_refs) {
      if (inside.count(ref) != 0) {
        touches = true;
        break;
      }
    }
    if (touches) {
      kept_ways.insert(way.id);
      kept_nodes.insert(way.node_refs.begin(), way.node_refs.end());
    }
  }
  if (kept_nodes.empty()) {
    throw Error(ErrorKind::empty_result, "no nodes fall inside the clip box");
  }

  OsmDocument::Builder builder;
  builder.bounds(box);
  for (const auto & node : doc.nodes()) {
    if (kept_nodes.count(node.id) != 0) {
      builder.add_node(node);
    }
  }
  for (const auto & way : doc.ways()) {
    if (kept_ways.count(way.id) != 0) {
      builder.add_way(way);
    }
  }
  for (const auto & relation : doc.relations()) {
    for (const auto & m : relation.members) {
      const bool survives = (m.kind == MemberKind::node && kept_nodes.count(m.ref) != 0) ||
                            (m.kind == MemberKind::way && kept_ways.count(m.ref) != 0);
      if (survives) {
        builder.add_relation(relation);
        break;
      }
    }
  }
  return std::move(builder).build();
}

std::vector<LocalPoint> resolve_way_geometry(
  const OsmDocument & doc, OsmId way_id, const Projection & projection)
{
  const OsmWay * way = doc.find_way(way_id);
  if (way == nullptr) {
    throw Error(ErrorKind::invalid_argument, "unknown way id " + std::to_string(way_id));
  }
  std::vector<LocalPoint> out;
  out.reserve(way->node_refs.size());
  for (const OsmId ref : way->node_refs) {
    const OsmNode * node = doc.find_node(ref);
    if (node == nullptr) {
      throw IntegrityError(
        "way " + std::to_string(way_id) + " references missing node " + std::to_string(ref),
        {way_id});
    }
    out.push_back(projection.project(node->position));
  }
  return out;
}

}  // namespace simmap
