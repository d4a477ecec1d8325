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

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "simmap/error.hpp"
#include "simmap/geometry.hpp"

namespace geo = simmap::geometry;
using simmap::LocalPoint;

namespace
{

std::vector<LocalPoint> to_local(const std::vector<oracle::P2> & pts)
{
  std::vector<LocalPoint> out;
  for (const auto & p : pts) {
    out.push_back({p.x, p.y});
  }
  return out;
}

std::vector<oracle::P2> to_oracle(const std::vector<LocalPoint> & pts)
{
  std::vector<oracle::P2> out;
  for (const auto & p : pts) {
    out.push_back({p.x, p.y});
  }
  return out;
}

double triangulated_area(const std::vector<LocalPoint> & pts, const std::vector<geo::TriangleIndices> & tris)
{
  double sum = 0.0;
  for (const auto & t : tris) {
    sum += oracle::signed_triangle_area({pts[t[0]].x, pts[t[0]].y}, {pts[t[1]].x, pts[t[1]].y},
                                 {pts[t[2]].x, pts[t[2]].y});
  }
  return sum;
}

simmap::ErrorKind triangulate_error(const std::vector<LocalPoint> & pts, std::int64_t id, std::int64_t * got_id)
{
  try {
    geo::triangulate_polygon(pts, id);
  } catch (const simmap::GeometryError & e) {
    *got_id = e.feature_id();
    return e.kind();
  }
  ADD_FAILURE() << "expected a geometry error";
  return simmap::ErrorKind::io;
}

}  // namespace

TEST(triangulate, unit_square)
{
  const std::vector<LocalPoint> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto tris = geo::triangulate_polygon(sq);
  EXPECT_EQ(tris.size(), 2u);
  EXPECT_DOUBLE_EQ(triangulated_area(sq, tris), 1.0);
}

TEST(triangulate, regular_hexagon)
{
  std::vector<LocalPoint> hex;
  for (int i = 0; i < 6; ++i) {
    hex.push_back({std::cos(i * M_PI / 3), std::sin(i * M_PI / 3)});
  }
  const auto tris = geo::triangulate_polygon(hex);
  EXPECT_EQ(tris.size(), 4u);
  EXPECT_NEAR(triangulated_area(hex, tris), 3.0 * std::sqrt(3.0) / 2.0, 1e-12);
  EXPECT_NEAR(triangulated_area(hex, tris), oracle::shoelace(to_oracle(hex)), 1e-12);
}

TEST(triangulate, l_shape)
{
  const std::vector<LocalPoint> l{{0, 0}, {20, 0}, {20, 10}, {10, 10}, {10, 25}, {0, 25}};
  const auto tris = geo::triangulate_polygon(l);
  EXPECT_EQ(tris.size(), 4u);
  EXPECT_NEAR(triangulated_area(l, tris), oracle::shoelace(to_oracle(l)), 1e-9);
}

TEST(triangulate, clockwise_input_gives_ccw_triangles)
{
  const std::vector<LocalPoint> cw{{0, 1}, {1, 1}, {1, 0}, {0, 0}};
  for (const auto & t : geo::triangulate_polygon(cw)) {
    EXPECT_GT(oracle::signed_triangle_area({cw[t[0]].x, cw[t[0]].y}, {cw[t[1]].x, cw[t[1]].y}, {cw[t[2]].x, cw[t[2]].y}), 0.0);
  }
}

TEST(triangulate, closing_and_repeated_vertices_are_ignored)
{
  const std::vector<LocalPoint> ring{{0, 0}, {2, 0}, {2, 0}, {2, 2}, {0, 2}, {0, 0}};
  const auto tris = geo::triangulate_polygon(ring);
  EXPECT_EQ(tris.size(), 2u);
  EXPECT_DOUBLE_EQ(triangulated_area(ring, tris), 4.0);
}

TEST(triangulate, collinear_spike_is_dropped)
{
  const std::vector<LocalPoint> ring{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}};
  const auto tris = geo::triangulate_polygon(ring);
  EXPECT_EQ(tris.size(), 2u);
  EXPECT_DOUBLE_EQ(triangulated_area(ring, tris), 4.0);
}

TEST(triangulate, bowtie_names_feature)
{
  std::int64_t id = 0;
  EXPECT_EQ(triangulate_error({{0, 0}, {2, 2}, {2, 0}, {0, 2}}, 77, &id), simmap::ErrorKind::geometry);
  EXPECT_EQ(id, 77);
}

TEST(triangulate, collinear_input_is_degenerate)
{
  std::int64_t id = 0;
  EXPECT_EQ(triangulate_error({{0, 0}, {1, 1}, {2, 2}, {3, 3}}, 5, &id), simmap::ErrorKind::degenerate);
  EXPECT_EQ(id, 5);
  EXPECT_EQ(triangulate_error({{0, 0}, {1, 1}}, 6, &id), simmap::ErrorKind::degenerate);
}

TEST(triangulate, property_random_simple_polygons)
{
  gen::Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const auto ring = gen::simple_polygon(rng);
    const auto pts = to_local(ring);
    const auto tris = geo::triangulate_polygon(pts, trial);
    ASSERT_EQ(tris.size(), ring.size() - 2) << "trial " << trial;
    const double expected = std::fabs(oracle::shoelace(ring));
    EXPECT_LE(std::fabs(triangulated_area(pts, tris) - expected), 1e-6 * expected) << "trial " << trial;
    for (const auto & t : tris) {
      for (const auto i : t) {
        ASSERT_LT(i, pts.size());
      }
      EXPECT_GT(oracle::signed_triangle_area({pts[t[0]].x, pts[t[0]].y}, {pts[t[1]].x, pts[t[1]].y},
                                      {pts[t[2]].x, pts[t[2]].y}), 0.0);
    }
  }
}

TEST(primitives, segments_intersect_is_closed)
{
  EXPECT_TRUE(geo::segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 1}));
  EXPECT_TRUE(geo::segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  EXPECT_FALSE(geo::segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  EXPECT_TRUE(geo::segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));
}

TEST(primitives, signed_area_and_perimeter)
{
  const std::vector<LocalPoint> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  EXPECT_DOUBLE_EQ(geo::signed_area(sq), 4.0);
  EXPECT_DOUBLE_EQ(geo::perimeter(sq), 8.0);
  const std::vector<LocalPoint> cw(sq.rbegin(), sq.rend());
  EXPECT_DOUBLE_EQ(geo::signed_area(cw), -4.0);
}

TEST(primitives, is_simple_matches_oracle)
{
  gen::Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    std::vector<oracle::P2> ring;
    const int n = gen::uniform_int(rng, 3, 8);
    for (int k = 0; k < n; ++k) {
      ring.push_back({gen::uniform(rng, 0, 10), gen::uniform(rng, 0, 10)});
    }
    EXPECT_EQ(geo::is_simple(to_local(ring)), oracle::ring_is_simple(ring)) << "case " << i;
  }
}

TEST(buffer, straight_segment_is_rectangle)
{
  const std::vector<LocalPoint> line{{0, 0}, {10, 0}};
  const auto ribbon = geo::buffer_polyline(line, 4.0);
  ASSERT_EQ(ribbon.size(), 4u);
  const std::vector<LocalPoint> expected{{0, -2}, {10, -2}, {10, 2}, {0, 2}};
  EXPECT_EQ(ribbon, expected);
}

TEST(buffer, right_angle_miter_corner)
{
  const std::vector<LocalPoint> line{{0, 0}, {10, 0}, {10, 10}};
  const auto ribbon = geo::buffer_polyline(line, 4.0);
  ASSERT_EQ(ribbon.size(), 6u);
  // Oracle: intersect the two right-hand offset lines y = -2 and x = 12.
  const double ox = 10.0 + 2.0;
  const double oy = 0.0 - 2.0;
  bool found = false;
  for (const auto & p : ribbon) {
    found = found || (std::fabs(p.x - ox) < 1e-12 && std::fabs(p.y - oy) < 1e-12);
  }
  EXPECT_TRUE(found);
  EXPECT_TRUE(oracle::ring_is_simple(to_oracle(ribbon)));
  EXPECT_GT(geo::signed_area(ribbon), 0.0);
}

TEST(buffer, hairpin_is_beveled_and_simple)
{
  for (const auto & line : std::vector<std::vector<LocalPoint>>{
         {{0, 0}, {10, 0}, {0, 0}}, {{0, 0}, {10, 0}, {0, 0.5}}, {{0, 0}, {10, 0}, {0, -1}}}) {
    const auto ribbon = geo::buffer_polyline(line, 4.0);
    EXPECT_TRUE(oracle::ring_is_simple(to_oracle(ribbon)));
    EXPECT_GT(geo::signed_area(ribbon), 0.0);
    // Nothing may stick out further than the 2*width miter cap.
    for (const auto & p : ribbon) {
      EXPECT_LE(p.x, 10.0 + 2.0 * 4.0 + 1e-9);
    }
  }
}

TEST(buffer, sharp_turn_respects_miter_cap)
{
  const std::vector<LocalPoint> line{{0, 0}, {20, 0}, {0, 2}};
  const auto ribbon = geo::buffer_polyline(line, 2.0);
  for (const auto & p : ribbon) {
    if (p.x > 10.0) {  // vertices generated at the turn, not the far end caps
      EXPECT_LE(std::hypot(p.x - 20.0, p.y), 2.0 * 2.0 + 1e-9);
    }
  }
  EXPECT_TRUE(oracle::ring_is_simple(to_oracle(ribbon)));
}

TEST(buffer, property_width_at_midpoints)
{
  gen::Rng rng(4242);
  for (int trial = 0; trial < 100; ++trial) {
    const auto line = gen::ribbon_polyline(rng);
    const auto pts = to_local(line.points);
    const auto ribbon = to_oracle(geo::buffer_polyline(pts, line.width));
    ASSERT_TRUE(oracle::ring_is_simple(ribbon)) << "trial " << trial;
    for (std::size_t i = 0; i + 1 < line.points.size(); ++i) {
      const auto w = oracle::ribbon_width_at_midpoint(ribbon, line.points[i], line.points[i + 1]);
      ASSERT_TRUE(w.has_value()) << "trial " << trial << " segment " << i;
      EXPECT_NEAR(*w, line.width, 1e-9) << "trial " << trial << " segment " << i;
    }
  }
}

TEST(buffer, invalid_inputs)
{
  const std::vector<LocalPoint> line{{0, 0}, {1, 0}};
  try {
    geo::buffer_polyline(line, 0.0);
    FAIL();
  } catch (const simmap::Error & e) {
    EXPECT_EQ(e.kind(), simmap::ErrorKind::invalid_argument);
  }
  const std::vector<LocalPoint> point{{3, 3}, {3, 3}};
  try {
    geo::buffer_polyline(point, 2.0);
    FAIL();
  } catch (const simmap::Error & e) {
    EXPECT_EQ(e.kind(), simmap::ErrorKind::degenerate);
  }
}

TEST(offset, straight_and_right_angle)
{
  const std::vector<LocalPoint> line{{0, 0}, {10, 0}, {10, 10}};
  const auto left = geo::offset_polyline(line, 1.0);
  ASSERT_EQ(left.size(), 3u);
  EXPECT_NEAR(left[0].x, 0.0, 1e-12);
  EXPECT_NEAR(left[0].y, 1.0, 1e-12);
  EXPECT_NEAR(left[1].x, 9.0, 1e-12);
  EXPECT_NEAR(left[1].y, 1.0, 1e-12);
  EXPECT_NEAR(left[2].x, 9.0, 1e-12);
  EXPECT_NEAR(left[2].y, 10.0, 1e-12);
  const auto right = geo::offset_polyline(line, -1.0);
  EXPECT_NEAR(right[1].x, 11.0, 1e-12);
  EXPECT_NEAR(right[1].y, -1.0, 1e-12);
}

TEST(offset, offsets_keep_distance_from_segments)
{
  gen::Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto line = gen::ribbon_polyline(rng);
    const auto pts = to_local(line.points);
    const double d = line.width / 2;
    const auto left = geo::offset_polyline(pts, d);
    ASSERT_EQ(left.size(), pts.size());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      // Midpoint of the offset segment sits |d| from the centreline segment, on the left.
      const LocalPoint m{(left[i].x + left[i + 1].x) / 2, (left[i].y + left[i + 1].y) / 2};
      const double dx = pts[i + 1].x - pts[i].x;
      const double dy = pts[i + 1].y - pts[i].y;
      const double signed_dist = (dx * (m.y - pts[i].y) - dy * (m.x - pts[i].x)) / std::hypot(dx, dy);
      EXPECT_NEAR(signed_dist, d, 1e-9);
    }
  }
}

TEST(clean_ring, removes_duplicates_and_spikes)
{
  const std::vector<LocalPoint> ring{{0, 0}, {0, 0}, {4, 0}, {4, 4}, {2, 4}, {0, 4}, {0, 0}};
  const auto cleaned = geo::clean_ring(ring);
  ASSERT_EQ(cleaned.points.size(), 4u);
  EXPECT_EQ(cleaned.source_index.size(), 4u);
  for (std::size_t k = 0; k < cleaned.points.size(); ++k) {
    EXPECT_EQ(cleaned.points[k], ring[cleaned.source_index[k]]);
  }
}
