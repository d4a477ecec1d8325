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

#include "simmap/osm.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "simmap/error.hpp"
#include "simmap/text.hpp"
#include "simmap/xml.hpp"

namespace simmap
{
namespace
{
// Half-width applied to a collapsed bounds axis (about 1.1 m of latitude).
constexpr double kCollapsedBoundsPad = 1e-5;

std::string join_ids(const std::vector<OsmId> & ids)
{
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    if (i == 16) {
      out += "... (" + std::to_string(ids.size()) + " total)";
      break;
    }
    out += std::to_string(ids[i]);
  }
  return out;
}

const std::string & require_attr(const xml::Element & e, std::string_view key)
{
  const std::string * value = e.attribute(key);
  if (value == nullptr) {
    throw ParseError("<" + e.name + "> is missing attribute '" + std::string(key) + "'", e.line);
  }
  return *value;
}

OsmId parse_id(const xml::Element & e, std::string_view key)
{
  const auto & raw = require_attr(e, key);
  const auto id = text::parse_int64(raw);
  if (!id) {
    throw ParseError("<" + e.name + "> has non-integer " + std::string(key) + " '" + raw + "'",
                     e.line);
  }
  return *id;
}

double parse_coord(const xml::Element & e, std::string_view key, double limit)
{
  const auto & raw = require_attr(e, key);
  const auto value = text::parse_double(raw);
  if (!value || !std::isfinite(*value)) {
    throw ParseError("<" + e.name + "> has non-numeric " + std::string(key) + " '" + raw + "'",
                     e.line);
  }
  if (*value < -limit || *value > limit) {
    throw ParseError("<" + e.name + "> " + std::string(key) + " " + raw + " out of range",
                     e.line);
  }
  return *value;
}

TagMap parse_tags(const xml::Element & parent)
{
  TagMap tags;
  for (const auto & child : parent.children) {
    if (child.name == "tag") {
      tags.set(require_attr(child, "k"), require_attr(child, "v"));
    }
  }
  return tags;
}

void write_tags(std::ostream & out, const TagMap & tags)
{
  for (const auto & [k, v] : tags.entries()) {
    out << "    <tag k=\"" << xml::escape(k) << "\" v=\"" << xml::escape(v) << "\"/>\n";
  }
}
}  // namespace

TagMap::TagMap(std::initializer_list<Entry> entries)
{
  for (const auto & [k, v] : entries) {
    set(k, v);
  }
}

void TagMap::set(std::string key, std::string value)
{
  for (auto & entry : entries_) {
    if (entry.first == key) {
      entry.second = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

bool TagMap::erase(std::string_view key)
{
  const auto it =
    std::find_if(entries_.begin(), entries_.end(), [&](const Entry & e) { return e.first == key; });
  if (it == entries_.end()) {
    return false;
  }
  entries_.erase(it);
  return true;
}

const std::string * TagMap::find(std::string_view key) const
{
  for (const auto & entry : entries_) {
    if (entry.first == key) {
      return &entry.second;
    }
  }
  return nullptr;
}

std::string_view TagMap::get(std::string_view key, std::string_view fallback) const
{
  const std::string * value = find(key);
  return value != nullptr ? std::string_view(*value) : fallback;
}

const char * to_string(MemberKind kind)
{
  switch (kind) {
    case MemberKind::node:
      return "node";
    case MemberKind::way:
      return "way";
    case MemberKind::relation:
      return "relation";
  }
  return "node";
}

std::optional<MemberKind> member_kind_from_string(std::string_view s)
{
  if (s == "node") {
    return MemberKind::node;
  }
  if (s == "way") {
    return MemberKind::way;
  }
  if (s == "relation") {
    return MemberKind::relation;
  }
  return std::nullopt;
}

const OsmNode * OsmDocument::find_node(OsmId id) const
{
  const auto it = node_index_.find(id);
  return it == node_index_.end() ? nullptr : &nodes_[it->second];
}

const OsmWay * OsmDocument::find_way(OsmId id) const
{
  const auto it = way_index_.find(id);
  return it == way_index_.end() ? nullptr : &ways_[it->second];
}

const OsmRelation * OsmDocument::find_relation(OsmId id) const
{
  const auto it = relation_index_.find(id);
  return it == relation_index_.end() ? nullptr : &relations_[it->second];
}

void OsmDocument::index()
{
  std::vector<OsmId> duplicates;
  auto build = [&](const auto & items, auto & index) {
    index.clear();
    index.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (!index.emplace(items[i].id, i).second) {
        duplicates.push_back(items[i].id);
      }
    }
  };
  build(nodes_, node_index_);
  build(ways_, way_index_);
  build(relations_, relation_index_);
  if (!duplicates.empty()) {
    throw IntegrityError("duplicate element ids: " + join_ids(duplicates), duplicates);
  }
}

OsmDocument::Builder & OsmDocument::Builder::bounds(const GeoBounds & bounds)
{
  bounds_ = bounds;
  return *this;
}

OsmDocument::Builder & OsmDocument::Builder::add_node(OsmNode node)
{
  doc_.nodes_.push_back(std::move(node));
  return *this;
}

OsmDocument::Builder & OsmDocument::Builder::add_way(OsmWay way)
{
  doc_.ways_.push_back(std::move(way));
  return *this;
}

OsmDocument::Builder & OsmDocument::Builder::add_relation(OsmRelation relation)
{
  doc_.relations_.push_back(std::move(relation));
  return *this;
}

OsmDocument OsmDocument::Builder::build() &&
{
  OsmDocument doc = std::move(doc_);
  if (doc.nodes_.empty()) {
    throw Error(ErrorKind::empty_document, "OSM document contains no nodes");
  }
  for (const auto & node : doc.nodes_) {
    if (!is_valid(node.position)) {
      throw Error(ErrorKind::invalid_argument,
                  "node " + std::to_string(node.id) + " has out-of-range coordinates");
    }
  }
  doc.index();

  std::vector<OsmId> broken;
  std::vector<OsmId> dangling_refs;
  for (const auto & way : doc.ways_) {
    bool ok = way.node_refs.size() >= 2;
    for (const OsmId ref : way.node_refs) {
      if (doc.find_node(ref) == nullptr) {
        ok = false;
        dangling_refs.push_back(ref);
      }
    }
    if (!ok) {
      broken.push_back(way.id);
    }
  }
  if (!broken.empty()) {
    if (!options_.lenient) {
      std::string message = "ways with unresolvable or too few node refs: " + join_ids(broken);
      if (!dangling_refs.empty()) {
        message += "; missing nodes: " + join_ids(dangling_refs);
      }
      throw IntegrityError(message, broken);
    }
    std::erase_if(doc.ways_, [&](const OsmWay & w) {
      return std::find(broken.begin(), broken.end(), w.id) != broken.end();
    });
    for (const OsmId id : broken) {
      spdlog::warn("lenient mode: dropped way {} (dangling or too few node refs)", id);
    }
    doc.dropped_ways_ = broken;
    doc.index();
  }

  GeoBounds b;
  if (bounds_) {
    b = *bounds_;
  } else {
    b = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
         -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto & node : doc.nodes_) {
      b.min_lat = std::min(b.min_lat, node.position.lat);
      b.min_lon = std::min(b.min_lon, node.position.lon);
      b.max_lat = std::max(b.max_lat, node.position.lat);
      b.max_lon = std::max(b.max_lon, node.position.lon);
    }
  }
  if (b.min_lat > b.max_lat || b.min_lon > b.max_lon) {
    throw Error(ErrorKind::degenerate_bounds, "bounds are inverted (min > max)");
  }
  if (b.min_lat == b.max_lat) {
    spdlog::warn("bounds collapse in latitude; padding by {} deg", kCollapsedBoundsPad);
    b.min_lat = std::max(-90.0, b.min_lat - kCollapsedBoundsPad);
    b.max_lat = std::min(90.0, b.max_lat + kCollapsedBoundsPad);
  }
  if (b.min_lon == b.max_lon) {
    spdlog::warn("bounds collapse in longitude; padding by {} deg", kCollapsedBoundsPad);
    b.min_lon = std::max(-180.0, b.min_lon - kCollapsedBoundsPad);
    b.max_lon = std::min(180.0, b.max_lon + kCollapsedBoundsPad);
  }
  doc.bounds_ = b;
  return doc;
}

OsmDocument parse_osm(std::istream & input, OsmParseOptions options)
{
  const xml::Element root = xml::parse(input);
  if (root.name != "osm") {
    throw ParseError("root element is <" + root.name + ">, expected <osm>", root.line);
  }
  OsmDocument::Builder builder(options);
  for (const auto & e : root.children) {
    if (e.name == "node") {
      OsmNode node;
      node.id = parse_id(e, "id");
      node.position.lat = parse_coord(e, "lat", 90.0);
      node.position.lon = parse_coord(e, "lon", 180.0);
      node.tags = parse_tags(e);
      builder.add_node(std::move(node));
    } else if (e.name == "way") {
      OsmWay way;
      way.id = parse_id(e, "id");
      for (const auto & child : e.children) {
        if (child.name == "nd") {
          way.node_refs.push_back(parse_id(child, "ref"));
        }
      }
      way.tags = parse_tags(e);
      builder.add_way(std::move(way));
    } else if (e.name == "relation") {
      OsmRelation relation;
      relation.id = parse_id(e, "id");
      for (const auto & child : e.children) {
        if (child.name != "member") {
          continue;
        }
        const auto & type = require_attr(child, "type");
        const auto kind = member_kind_from_string(type);
        if (!kind) {
          throw ParseError("member has unknown type '" + type + "'", child.line);
        }
        const std::string * role = child.attribute("role");
        relation.members.push_back({role ? *role : std::string{}, *kind, parse_id(child, "ref")});
      }
      relation.tags = parse_tags(e);
      builder.add_relation(std::move(relation));
    } else if (e.name == "bounds") {
      builder.bounds({parse_coord(e, "minlat", 90.0), parse_coord(e, "minlon", 180.0),
                      parse_coord(e, "maxlat", 90.0), parse_coord(e, "maxlon", 180.0)});
    }
  }
  return std::move(builder).build();
}

OsmDocument parse_osm(std::string_view xml_text, OsmParseOptions options)
{
  std::istringstream in{std::string(xml_text)};
  return parse_osm(in, options);
}

OsmDocument load_osm(const std::string & path, OsmParseOptions options)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open " + path);
  }
  return parse_osm(in, options);
}

void write_osm(const OsmDocument & doc, std::ostream & out)
{
  using text::format_shortest;
  const auto & b = doc.bounds();
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<osm version=\"0.6\" generator=\"simmap\">\n";
  out << "  <bounds minlat=\"" << format_shortest(b.min_lat) << "\" minlon=\""
      << format_shortest(b.min_lon) << "\" maxlat=\"" << format_shortest(b.max_lat)
      << "\" maxlon=\"" << format_shortest(b.max_lon) << "\"/>\n";
  for (const auto & node : doc.nodes()) {
    out << "  <node id=\"" << node.id << "\" lat=\"" << format_shortest(node.position.lat)
        << "\" lon=\"" << format_shortest(node.position.lon) << "\"";
    if (node.tags.empty()) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    write_tags(out, node.tags);
    out << "  </node>\n";
  }
  for (const auto & way : doc.ways()) {
    out << "  <way id=\"" << way.id << "\">\n";
    for (const OsmId ref : way.node_refs) {
      out << "    <nd ref=\"" << ref << "\"/>\n";
    }
    write_tags(out, way.tags);
    out << "  </way>\n";
  }
  for (const auto & relation : doc.relations()) {
    out << "  <relation id=\"" << relation.id << "\">\n";
    for (const auto & m : relation.members) {
      out << "    <member type=\"" << to_string(m.kind) << "\" ref=\"" << m.ref << "\" role=\""
          << xml::escape(m.role) << "\"/>\n";
    }
    write_tags(out, relation.tags);
    out << "  </relation>\n";
  }
  out << "</osm>\n";
}

}  // namespace simmap
