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
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "simmap/error.hpp"
#include "simmap/lanelet.hpp"
#include "simmap/text.hpp"

namespace simmap::lanelet
{

namespace
{

Error schema_error(const std::string & element, Id id, const std::string & what)
{
  return Error(ErrorKind::schema, element + " " + std::to_string(id) + ": " + what);
}

Id read_id(const xml::Element & e)
{
  const auto * raw = e.attribute("id");
  if (raw == nullptr) {
    throw ParseError("<" + e.name + "> without id", e.line);
  }
  const auto id = text::parse_int64(*raw);
  if (!id) {
    throw ParseError("invalid id '" + *raw + "'", e.line);
  }
  return *id;
}

double read_number(const xml::Element & e, const std::string & raw, const char * what)
{
  const auto v = text::parse_double(raw);
  if (!v) {
    throw ParseError(std::string("invalid ") + what + " '" + raw + "'", e.line);
  }
  return *v;
}

xml::AttributeList extra_attributes(
  const xml::Element & e, std::initializer_list<std::string_view> known)
{
  xml::AttributeList out;
  for (const auto & [k, v] : e.attributes) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      out.emplace_back(k, v);
    }
  }
  return out;
}

TagMap read_tags(const xml::Element & e)
{
  TagMap tags;
  for (const auto & child : e.children) {
    if (child.name != "tag") {
      continue;
    }
    const auto * k = child.attribute("k");
    const auto * v = child.attribute("v");
    if (k == nullptr || v == nullptr) {
      throw ParseError("<tag> needs k and v", child.line);
    }
    tags.set(*k, *v);
  }
  return tags;
}

Point read_point(const xml::Element & e)
{
  Point p;
  p.id = read_id(e);
  if (const auto * lat = e.attribute("lat")) {
    p.lat = read_number(e, *lat, "lat");
  }
  if (const auto * lon = e.attribute("lon")) {
    p.lon = read_number(e, *lon, "lon");
  }
  p.extra_attributes = extra_attributes(e, {"id", "lat", "lon"});
  TagMap tags = read_tags(e);
  const auto * x = tags.find("local_x");
  const auto * y = tags.find("local_y");
  if (x == nullptr || y == nullptr) {
    throw schema_error("node", p.id, "missing local_x/local_y tags");
  }
  p.local_x = read_number(e, *x, "local_x");
  p.local_y = read_number(e, *y, "local_y");
  if (const auto * ele = tags.find("ele")) {
    p.ele = read_number(e, *ele, "ele");
  }
  tags.erase("local_x");
  tags.erase("local_y");
  tags.erase("ele");
  p.tags = std::move(tags);
  return p;
}

LineString read_linestring(const xml::Element & e)
{
  LineString ls;
  ls.id = read_id(e);
  ls.extra_attributes = extra_attributes(e, {"id"});
  for (const auto & child : e.children) {
    if (child.name != "nd") {
      continue;
    }
    const auto * ref = child.attribute("ref");
    const auto id = ref ? text::parse_int64(*ref) : std::nullopt;
    if (!id) {
      throw ParseError("<nd> without a valid ref", child.line);
    }
    ls.point_refs.push_back(*id);
  }
  ls.tags = read_tags(e);
  return ls;
}

std::vector<OsmMember> read_members(const xml::Element & e)
{
  std::vector<OsmMember> members;
  for (const auto & child : e.children) {
    if (child.name != "member") {
      continue;
    }
    const auto * type = child.attribute("type");
    const auto * ref = child.attribute("ref");
    const auto * role = child.attribute("role");
    const auto kind = type ? member_kind_from_string(*type) : std::nullopt;
    const auto id = ref ? text::parse_int64(*ref) : std::nullopt;
    if (!kind || !id) {
      throw ParseError("<member> needs a valid type and ref", child.line);
    }
    members.push_back(OsmMember{role ? *role : std::string{}, *kind, *id});
  }
  return members;
}

Lanelet to_lanelet(Id id, std::vector<OsmMember> members, TagMap tags, xml::AttributeList extra)
{
  Lanelet ll;
  ll.id = id;
  ll.tags = std::move(tags);
  ll.extra_attributes = std::move(extra);
  bool has_left = false;
  bool has_right = false;
  for (auto & m : members) {
    if (m.kind == MemberKind::way && m.role == "left" && !has_left) {
      ll.left = m.ref;
      has_left = true;
    } else if (m.kind == MemberKind::way && m.role == "right" && !has_right) {
      ll.right = m.ref;
      has_right = true;
    } else {
      ll.extra_members.push_back(std::move(m));
    }
  }
  if (!has_left) {
    throw schema_error("relation", id, "lanelet without a left bound member");
  }
  if (!has_right) {
    throw schema_error("relation", id, "lanelet without a right bound member");
  }
  return ll;
}

LaneletMap from_root(const xml::Element & root, IngestReport * report)
{
  if (root.name != "osm") {
    throw ParseError("root element is <" + root.name + ">, expected <osm>", root.line);
  }
  LaneletMap map;
  map.root_attributes = root.attributes;
  for (const auto & e : root.children) {
    if (e.name == "node") {
      map.points.push_back(read_point(e));
    } else if (e.name == "way") {
      map.linestrings.push_back(read_linestring(e));
    } else if (e.name == "relation") {
      const Id id = read_id(e);
      auto members = read_members(e);
      auto tags = read_tags(e);
      auto extra = extra_attributes(e, {"id"});
      if (tags.get("type") == "lanelet") {
        map.lanelets.push_back(to_lanelet(id, std::move(members), std::move(tags), std::move(extra)));
      } else {
        map.other_relations.push_back(
          Relation{id, std::move(members), std::move(tags), std::move(extra)});
        if (report != nullptr) {
          report->unvalidated_relations.push_back(id);
        }
      }
    }
  }
  return map;
}

void write_attributes(std::ostream & out, const xml::AttributeList & attributes)
{
  for (const auto & [k, v] : attributes) {
    out << ' ' << k << "=\"" << xml::escape(v) << '"';
  }
}

void write_tag(std::ostream & out, std::string_view k, std::string_view v)
{
  out << "    <tag k=\"" << xml::escape(k) << "\" v=\"" << xml::escape(v) << "\"/>\n";
}

void write_tags(std::ostream & out, const TagMap & tags)
{
  for (const auto & [k, v] : tags.entries()) {
    write_tag(out, k, v);
  }
}

void write_member(std::ostream & out, const OsmMember & m)
{
  out << "    <member type=\"" << to_string(m.kind) << "\" ref=\"" << m.ref << "\" role=\""
      << xml::escape(m.role) << "\"/>\n";
}

}  // namespace

LaneletMap ingest_lanelet(std::istream & input, IngestReport * report)
{
  return from_root(xml::parse(input), report);
}

LaneletMap ingest_lanelet(std::string_view xml_text, IngestReport * report)
{
  return from_root(xml::parse(xml_text), report);
}

LaneletMap load_lanelet(const std::string & path, IngestReport * report)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open " + path);
  }
  return ingest_lanelet(in, report);
}

void write_lanelet_osm(const LaneletMap & map, std::ostream & out)
{
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<osm";
  write_attributes(out, map.root_attributes);
  out << ">\n";

  for (const auto & p : map.points) {
    out << "  <node id=\"" << p.id << '"';
    if (p.lat) {
      out << " lat=\"" << text::format_decimal(*p.lat) << '"';
    }
    if (p.lon) {
      out << " lon=\"" << text::format_decimal(*p.lon) << '"';
    }
    write_attributes(out, p.extra_attributes);
    out << ">\n";
    write_tag(out, "local_x", text::format_decimal(p.local_x));
    write_tag(out, "local_y", text::format_decimal(p.local_y));
    write_tag(out, "ele", text::format_decimal(p.ele));
    write_tags(out, p.tags);
    out << "  </node>\n";
  }

  for (const auto & ls : map.linestrings) {
    out << "  <way id=\"" << ls.id << '"';
    write_attributes(out, ls.extra_attributes);
    out << ">\n";
    for (const Id ref : ls.point_refs) {
      out << "    <nd ref=\"" << ref << "\"/>\n";
    }
    write_tags(out, ls.tags);
    out << "  </way>\n";
  }

  // Lanelets and other relations are interleaved by id.
  std::size_t li = 0;
  std::size_t ri = 0;
  while (li < map.lanelets.size() || ri < map.other_relations.size()) {
    const bool take_lanelet =
      ri == map.other_relations.size() ||
      (li < map.lanelets.size() && map.lanelets[li].id <= map.other_relations[ri].id);
    if (take_lanelet) {
      const Lanelet & ll = map.lanelets[li++];
      out << "  <relation id=\"" << ll.id << '"';
      write_attributes(out, ll.extra_attributes);
      out << ">\n";
      write_member(out, OsmMember{"left", MemberKind::way, ll.left});
      write_member(out, OsmMember{"right", MemberKind::way, ll.right});
      for (const auto & m : ll.extra_members) {
        write_member(out, m);
      }
      write_tags(out, ll.tags);
    } else {
      const Relation & r = map.other_relations[ri++];
      out << "  <relation id=\"" << r.id << '"';
      write_attributes(out, r.extra_attributes);
      out << ">\n";
      for (const auto & m : r.members) {
        write_member(out, m);
      }
      write_tags(out, r.tags);
    }
    out << "  </relation>\n";
  }
  out << "</osm>\n";
}

std::string to_osm_string(const LaneletMap & map)
{
  std::ostringstream out;
  write_lanelet_osm(map, out);
  return out.str();
}

void save_lanelet(const LaneletMap & map, const std::string & path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::io, "cannot write " + path);
  }
  write_lanelet_osm(map, out);
  if (!out.flush()) {
    throw Error(ErrorKind::io, "write failed for " + path);
  }
}

}  // namespace simmap::lanelet
