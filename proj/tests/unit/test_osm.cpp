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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "simmap/error.hpp"
#include "simmap/osm.hpp"

namespace
{

const std::string kFixture = std::string(SIMMAP_TEST_DATA_DIR) + "/sirc_min.osm";

std::string tiny_osm(const std::string & body, const std::string & bounds =
                       "<bounds minlat=\"0\" minlon=\"0\" maxlat=\"1\" maxlon=\"1\"/>")
{
  return "<?xml version=\"1.0\"?>\n<osm version=\"0.6\">\n" + bounds + "\n" + body + "\n</osm>\n";
}

template <typename Fn>
simmap::ErrorKind kind_of(Fn && fn)
{
  try {
    fn();
  } catch (const simmap::Error & e) {
    return e.kind();
  }
  ADD_FAILURE() << "no simmap::Error thrown";
  return simmap::ErrorKind::io;
}

}  // namespace

TEST(osm, parses_fixture)
{
  const auto doc = simmap::load_osm(kFixture);
  EXPECT_EQ(doc.nodes().size(), 24u);
  EXPECT_EQ(doc.ways().size(), 5u);
  EXPECT_EQ(doc.relations().size(), 0u);
  EXPECT_DOUBLE_EQ(doc.bounds().min_lat, 43.9452508);
  EXPECT_DOUBLE_EQ(doc.bounds().max_lon, -78.8953762);
  ASSERT_NE(doc.find_node(17), nullptr);
  EXPECT_EQ(doc.find_node(17)->tags.get("highway"), "stop");
  const auto * road = doc.find_way(104);
  ASSERT_NE(road, nullptr);
  EXPECT_EQ(road->node_refs.size(), 5u);
  EXPECT_EQ(road->tags.get("name"), "North Access");
  EXPECT_TRUE(doc.find_way(101)->is_closed());
  EXPECT_FALSE(road->is_closed());
}

TEST(osm, keeps_unknown_tags_and_order)
{
  const auto doc = simmap::parse_osm(tiny_osm(
    "<node id=\"1\" lat=\"0.5\" lon=\"0.5\"><tag k=\"z\" v=\"1\"/><tag k=\"a\" v=\"&amp;\"/></node>"));
  const auto & tags = doc.find_node(1)->tags.entries();
  ASSERT_EQ(tags.size(), 2u);
  EXPECT_EQ(tags[0].first, "z");
  EXPECT_EQ(tags[1].second, "&");
}

TEST(osm, relation_members)
{
  const auto doc = simmap::parse_osm(tiny_osm(
    "<node id=\"1\" lat=\"0.1\" lon=\"0.1\"/><node id=\"2\" lat=\"0.2\" lon=\"0.2\"/>"
    "<way id=\"10\"><nd ref=\"1\"/><nd ref=\"2\"/></way>"
    "<relation id=\"20\"><member type=\"way\" ref=\"10\" role=\"outer\"/>"
    "<member type=\"node\" ref=\"1\" role=\"\"/><tag k=\"type\" v=\"multipolygon\"/></relation>"));
  const auto * r = doc.find_relation(20);
  ASSERT_NE(r, nullptr);
  ASSERT_EQ(r->members.size(), 2u);
  EXPECT_EQ(r->members[0].kind, simmap::MemberKind::way);
  EXPECT_EQ(r->members[0].role, "outer");
  EXPECT_EQ(r->members[1].kind, simmap::MemberKind::node);
}

TEST(osm, dangling_ref_is_integrity_error_naming_way_and_node)
{
  const auto text = tiny_osm(
    "<node id=\"1\" lat=\"0.1\" lon=\"0.1\"/><way id=\"7\"><nd ref=\"1\"/><nd ref=\"99\"/></way>");
  try {
    simmap::parse_osm(text);
    FAIL();
  } catch (const simmap::IntegrityError & e) {
    EXPECT_EQ(e.ids(), std::vector<std::int64_t>{7});
    EXPECT_NE(std::string(e.what()).find("99"), std::string::npos);
  }
}

TEST(osm, lenient_mode_drops_broken_ways)
{
  const auto text = tiny_osm(
    "<node id=\"1\" lat=\"0.1\" lon=\"0.1\"/><node id=\"2\" lat=\"0.2\" lon=\"0.1\"/>"
    "<way id=\"7\"><nd ref=\"1\"/><nd ref=\"99\"/></way>"
    "<way id=\"8\"><nd ref=\"1\"/><nd ref=\"2\"/></way>");
  const auto doc = simmap::parse_osm(text, {true});
  ASSERT_EQ(doc.ways().size(), 1u);
  EXPECT_EQ(doc.ways()[0].id, 8);
  EXPECT_EQ(doc.dropped_ways(), std::vector<simmap::OsmId>{7});
}

TEST(osm, single_ref_way_is_rejected)
{
  EXPECT_EQ(kind_of([] {
    simmap::parse_osm(tiny_osm("<node id=\"1\" lat=\"0.1\" lon=\"0.1\"/><way id=\"7\"><nd ref=\"1\"/></way>"));
  }), simmap::ErrorKind::integrity);
}

TEST(osm, duplicate_ids)
{
  EXPECT_EQ(kind_of([] {
    simmap::parse_osm(tiny_osm("<node id=\"1\" lat=\"0.1\" lon=\"0.1\"/><node id=\"1\" lat=\"0.2\" lon=\"0.1\"/>"));
  }), simmap::ErrorKind::integrity);
}

TEST(osm, empty_document)
{
  EXPECT_EQ(kind_of([] { simmap::parse_osm(tiny_osm("")); }), simmap::ErrorKind::empty_document);
}

TEST(osm, malformed_xml_has_line)
{
  try {
    simmap::parse_osm("<osm>\n<node id=\"1\" lat=\"0\" lon=\"0\">\n</osm>");
    FAIL();
  } catch (const simmap::ParseError & e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(osm, non_numeric_coordinate_is_parse_error)
{
  EXPECT_EQ(kind_of([] { simmap::parse_osm(tiny_osm("<node id=\"1\" lat=\"north\" lon=\"0\"/>")); }),
            simmap::ErrorKind::parse);
}

TEST(osm, bounds_computed_when_absent)
{
  const auto doc = simmap::parse_osm(tiny_osm(
    "<node id=\"1\" lat=\"0.1\" lon=\"0.3\"/><node id=\"2\" lat=\"0.2\" lon=\"0.4\"/>", ""));
  EXPECT_DOUBLE_EQ(doc.bounds().min_lat, 0.1);
  EXPECT_DOUBLE_EQ(doc.bounds().max_lat, 0.2);
  EXPECT_DOUBLE_EQ(doc.bounds().min_lon, 0.3);
  EXPECT_DOUBLE_EQ(doc.bounds().max_lon, 0.4);
}

TEST(osm, single_node_bounds_are_padded)
{
  const auto doc = simmap::parse_osm(tiny_osm("<node id=\"1\" lat=\"10\" lon=\"20\"/>", ""));
  EXPECT_FALSE(doc.bounds().is_degenerate());
  EXPECT_TRUE(doc.bounds().contains({10.0, 20.0}));
}

TEST(osm, inverted_bounds)
{
  EXPECT_EQ(kind_of([] {
    simmap::parse_osm(tiny_osm("<node id=\"1\" lat=\"0.5\" lon=\"0.5\"/>",
                               "<bounds minlat=\"1\" minlon=\"0\" maxlat=\"0\" maxlon=\"1\"/>"));
  }), simmap::ErrorKind::degenerate_bounds);
}

TEST(osm, write_then_parse_is_identity)
{
  const auto doc = simmap::load_osm(kFixture);
  std::ostringstream out;
  simmap::write_osm(doc, out);
  const auto again = simmap::parse_osm(out.str());
  EXPECT_EQ(doc, again);
  std::ostringstream out2;
  simmap::write_osm(again, out2);
  EXPECT_EQ(out.str(), out2.str());
}

TEST(osm, builder_matches_parser)
{
  simmap::OsmDocument::Builder b;
  b.bounds({0, 0, 1, 1});
  b.add_node({1, {0.1, 0.1}, {}});
  b.add_node({2, {0.2, 0.2}, {{"amenity", "bench"}}});
  b.add_way({10, {1, 2}, {{"highway", "footway"}}});
  const auto built = std::move(b).build();
  const auto parsed = simmap::parse_osm(tiny_osm(
    "<node id=\"1\" lat=\"0.1\" lon=\"0.1\"/><node id=\"2\" lat=\"0.2\" lon=\"0.2\">"
    "<tag k=\"amenity\" v=\"bench\"/></node><way id=\"10\"><nd ref=\"1\"/><nd ref=\"2\"/>"
    "<tag k=\"highway\" v=\"footway\"/></way>"));
  EXPECT_EQ(built, parsed);
}

TEST(osm, clip_isolates_one_building)
{
  const auto doc = simmap::load_osm(kFixture);
  const auto proj = simmap::make_projection(doc.bounds());
  const auto lo = proj.unproject({15.0, 15.0});
  const auto hi = proj.unproject({45.0, 40.0});
  const auto clipped = simmap::clip_bbox(doc, {lo.lat, lo.lon, hi.lat, hi.lon});
  ASSERT_EQ(clipped.ways().size(), 1u);
  EXPECT_EQ(clipped.ways()[0].id, 102);
  EXPECT_EQ(clipped.nodes().size(), 4u);
  EXPECT_DOUBLE_EQ(clipped.bounds().min_lat, lo.lat);
}

TEST(osm, clip_keeps_whole_way_crossing_box)
{
  const auto doc = simmap::load_osm(kFixture);
  const auto proj = simmap::make_projection(doc.bounds());
  // Only the middle node (17) of road 104 lies inside.
  const auto lo = proj.unproject({-5.0, -3.0});
  const auto hi = proj.unproject({5.0, 3.0});
  const auto clipped = simmap::clip_bbox(doc, {lo.lat, lo.lon, hi.lat, hi.lon});
  ASSERT_EQ(clipped.ways().size(), 1u);
  EXPECT_EQ(clipped.ways()[0].id, 104);
  EXPECT_EQ(clipped.nodes().size(), 5u);
  for (const auto ref : clipped.ways()[0].node_refs) {
    EXPECT_NE(clipped.find_node(ref), nullptr);
  }
}

TEST(osm, clip_errors)
{
  const auto doc = simmap::load_osm(kFixture);
  EXPECT_EQ(kind_of([&] { simmap::clip_bbox(doc, {10.0, 10.0, 11.0, 11.0}); }),
            simmap::ErrorKind::empty_result);
  EXPECT_EQ(kind_of([&] { simmap::clip_bbox(doc, {43.9, -78.9, 43.9, -78.8}); }),
            simmap::ErrorKind::degenerate_bounds);
}

TEST(osm, resolve_way_geometry)
{
  const auto doc = simmap::load_osm(kFixture);
  const auto proj = simmap::make_projection(doc.bounds());
  const auto pts = simmap::resolve_way_geometry(doc, 104, proj);
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_NEAR(pts[2].x, 0.0, 0.01);
  EXPECT_NEAR(pts[0].x, -45.0, 0.01);
  EXPECT_EQ(kind_of([&] { simmap::resolve_way_geometry(doc, 999, proj); }), simmap::ErrorKind::invalid_argument);
}
