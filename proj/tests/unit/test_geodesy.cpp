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
#include <random>

#include "oracles.hpp"
#include "simmap/error.hpp"
#include "simmap/geodesy.hpp"

using simmap::GeoBounds;
using simmap::GeoPoint;
using simmap::Projection;

TEST(geodesy, origin_maps_to_zero)
{
  const Projection p({43.9457, -78.8960});
  const auto q = p.project({43.9457, -78.8960});
  EXPECT_EQ(q.x, 0.0);
  EXPECT_EQ(q.y, 0.0);
}

TEST(geodesy, one_degree_of_latitude)
{
  // R * pi / 180 for R = 6378137.
  const Projection p({0.0, 0.0});
  EXPECT_NEAR(p.project({1.0, 0.0}).y, 111319.49079327357, 1e-6);
  EXPECT_NEAR(p.project({0.0, 1.0}).x, 111319.49079327357, 1e-6);
}

TEST(geodesy, east_shrinks_with_cos_latitude)
{
  const Projection p({60.0, 10.0});
  EXPECT_NEAR(p.project({60.0, 11.0}).x, 111319.49079327357 * 0.5, 1e-6);
}

TEST(geodesy, round_trip_random_points)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lat(-80.0, 80.0);
  std::uniform_real_distribution<double> lon(-179.0, 179.0);
  std::uniform_real_distribution<double> off(-0.01, 0.01);
  for (int i = 0; i < 2000; ++i) {
    const GeoPoint origin{lat(rng), lon(rng)};
    const Projection p(origin);
    const GeoPoint g{origin.lat + off(rng), origin.lon + off(rng)};
    const auto back = p.unproject(p.project(g));
    EXPECT_LT(std::fabs(back.lat - g.lat), 1e-12);
    EXPECT_LT(std::fabs(back.lon - g.lon), 1e-12);
  }
}

TEST(geodesy, matches_haversine_at_lot_scale)
{
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> lat(-70.0, 70.0);
  std::uniform_real_distribution<double> lon(-179.0, 179.0);
  std::uniform_real_distribution<double> off(-0.001, 0.001);
  for (int i = 0; i < 2000; ++i) {
    const GeoPoint origin{lat(rng), lon(rng)};
    const Projection p(origin);
    const GeoPoint a{origin.lat + off(rng), origin.lon + off(rng)};
    const GeoPoint b{origin.lat + off(rng), origin.lon + off(rng)};
    const auto pa = p.project(a);
    const auto pb = p.project(b);
    const double euclid = std::hypot(pa.x - pb.x, pa.y - pb.y);
    const double great = oracle::haversine(a.lat, a.lon, b.lat, b.lon);
    if (great > 1.0) {
      EXPECT_LT(std::fabs(euclid - great) / great, 1e-3);
    }
  }
}

TEST(geodesy, rejects_polar_origin)
{
  EXPECT_THROW(Projection({89.5, 0.0}), simmap::Error);
}

TEST(geodesy, make_projection_uses_bounds_centre)
{
  const GeoBounds b{43.0, -79.0, 44.0, -78.0};
  const auto p = simmap::make_projection(b);
  EXPECT_DOUBLE_EQ(p.origin().lat, 43.5);
  EXPECT_DOUBLE_EQ(p.origin().lon, -78.5);
}

TEST(geodesy, make_projection_rejects_degenerate_bounds)
{
  try {
    simmap::make_projection(GeoBounds{43.0, -79.0, 43.0, -78.0});
    FAIL();
  } catch (const simmap::Error & e) {
    EXPECT_EQ(e.kind(), simmap::ErrorKind::degenerate_bounds);
  }
}

TEST(geodesy, bounds_predicates)
{
  const GeoBounds b{0.0, 0.0, 1.0, 1.0};
  EXPECT_TRUE(b.contains({0.5, 1.0}));
  EXPECT_FALSE(b.contains({1.5, 0.5}));
  EXPECT_TRUE(b.intersects({0.9, 0.9, 2.0, 2.0}));
  EXPECT_FALSE(b.intersects({1.1, 0.0, 2.0, 1.0}));
  EXPECT_FALSE(simmap::is_valid({91.0, 0.0}));
  EXPECT_FALSE(simmap::is_valid({0.0, NAN}));
  EXPECT_TRUE(simmap::is_valid({-90.0, 180.0}));
}
