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

#ifndef SIMMAP__OSM_HPP_
#define SIMMAP__OSM_HPP_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "simmap/geodesy.hpp"

namespace simmap
{

using OsmId = std::int64_t;

/// Ordered key/value tags with unique keys.
class TagMap
{
public:
  using Entry = std::pair<std::string, std::string>;

  TagMap() = default;
  TagMap(std::initializer_list<Entry> entries);

  /// Inserts or overwrites; insertion order of first appearance is kept.
  void set(std::string key, std::string value);
  bool erase(std::string_view key);
  const std::string * find(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }
  /// Value for `key`, or `fallback` when absent.
  std::string_view get(std::string_view key, std::string_view fallback = {}) const;

  const std::vector<Entry> & entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const TagMap &, const TagMap &) = default;

private:
  std::vector<Entry> entries_;
};

struct OsmNode
{
  OsmId id = 0;
  GeoPoint position;
  TagMap tags;

  friend bool operator==(const OsmNode &, const OsmNode &) = default;
};

struct OsmWay
{
  OsmId id = 0;
  std::vector<OsmId> node_refs;
  TagMap tags;

  bool is_closed() const { return node_refs.size() >= 2 && node_refs.front() == node_refs.back(); }

  friend bool operator==(const OsmWay &, const OsmWay &) = default;
};

enum class MemberKind { node, way, relation };

const char * to_string(MemberKind kind);
std::optional<MemberKind> member_kind_from_string(std::string_view s);

struct OsmMember
{
  std::string role;
  MemberKind kind = MemberKind::node;
  OsmId ref = 0;

  friend bool operator==(const OsmMember &, const OsmMember &) = default;
};

struct OsmRelation
{
  OsmId id = 0;
  std::vector<OsmMember> members;
  TagMap tags;

  friend bool operator==(const OsmRelation &, const OsmRelation &) = default;
};

/// Parsed extract. Collections keep document order; lookups by id are O(1).
/// Construct through OsmDocument::Builder, which enforces referential
/// integrity; the finished document is immutable.
class OsmDocument
{
public:
  class Builder;

  const GeoBounds & bounds() const { return bounds_; }
  const std::vector<OsmNode> & nodes() const { return nodes_; }
  const std::vector<OsmWay> & ways() const { return ways_; }
  const std::vector<OsmRelation> & relations() const { return relations_; }

  const OsmNode * find_node(OsmId id) const;
  const OsmWay * find_way(OsmId id) const;
  const OsmRelation * find_relation(OsmId id) const;

  /// Ways that were discarded in lenient mode because of dangling refs.
  const std::vector<OsmId> & dropped_ways() const { return dropped_ways_; }

  friend bool operator==(const OsmDocument & a, const OsmDocument & b)
  {
    return a.bounds_ == b.bounds_ && a.nodes_ == b.nodes_ && a.ways_ == b.ways_ &&
           a.relations_ == b.relations_;
  }

private:
  OsmDocument() = default;
  void index();

  GeoBounds bounds_;
  std::vector<OsmNode> nodes_;
  std::vector<OsmWay> ways_;
  std::vector<OsmRelation> relations_;
  std::vector<OsmId> dropped_ways_;
  std::unordered_map<OsmId, std::size_t> node_index_;
  std::unordered_map<OsmId, std::size_t> way_index_;
  std::unordered_map<OsmId, std::size_t> relation_index_;
};

struct OsmParseOptions
{
  /// Drop ways with unresolvable node refs (logged) instead of failing.
  bool lenient = false;
};

class OsmDocument::Builder
{
public:
  explicit Builder(OsmParseOptions options = {}) : options_(options) {}

  Builder & bounds(const GeoBounds & bounds);
  Builder & add_node(OsmNode node);
  Builder & add_way(OsmWay way);
  Builder & add_relation(OsmRelation relation);

  /// Validates and freezes the document.
  /// Throws empty_document, integrity errors and degenerate_bounds.
  OsmDocument build() &&;

private:
  OsmParseOptions options_;
  std::optional<GeoBounds> bounds_;
  OsmDocument doc_;
};

/// Reads OSM XML (API 0.6 vocabulary). Only node/way/relation/bounds and their
/// tag/nd/member children are interpreted.
OsmDocument parse_osm(std::istream & input, OsmParseOptions options = {});
OsmDocument parse_osm(std::string_view xml_text, OsmParseOptions options = {});
OsmDocument load_osm(const std::string & path, OsmParseOptions options = {});

/// Writes the document back as OSM XML. Coordinates use shortest round-trip text.
void write_osm(const OsmDocument & doc, std::ostream & out);

/// Keeps nodes inside `box`, plus every node used by a way with at least one
/// node inside. Relations survive when a member node or way survives.
/// Throws empty_result when nothing remains.
OsmDocument clip_bbox(const OsmDocument & doc, const GeoBounds & box);

/// Way polyline in projected metres, in node_ref order.
std::vector<LocalPoint> resolve_way_geometry(
  const OsmDocument & doc, OsmId way_id, const Projection & projection);

}  // namespace simmap

#endif  // SIMMAP__OSM_HPP_
