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

#ifndef SIMMAP__GEODESY_HPP_
#define SIMMAP__GEODESY_HPP_

namespace simmap
{

/// WGS84 latitude/longitude in degrees.
struct GeoPoint
{
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint &, const GeoPoint &) = default;
};

/// Metric east/north offset from a projection origin.
struct LocalPoint
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const LocalPoint &, const LocalPoint &) = default;
};

struct GeoBounds
{
  double min_lat = 0.0;
  double min_lon = 0.0;
  double max_lat = 0.0;
  double max_lon = 0.0;

  bool is_degenerate() const { return !(min_lat < max_lat) || !(min_lon < max_lon); }
  bool contains(const GeoPoint & p) const
  {
    return p.lat >= min_lat && p.lat <= max_lat && p.lon >= min_lon && p.lon <= max_lon;
  }
  bool intersects(const GeoBounds & other) const
  {
    return !(other.max_lat < min_lat || other.min_lat > max_lat || other.max_lon < min_lon ||
             other.min_lon > max_lon);
  }
  GeoPoint center() const;

  friend bool operator==(const GeoBounds &, const GeoBounds &) = default;
};

bool is_valid(const GeoPoint & p);

inline constexpr double kEarthRadius = 6378137.0;

/// Local equirectangular projection about `origin`:
///   x = R * rad(lon - lon0) * cos(rad(lat0)),  y = R * rad(lat - lat0)
/// Accurate to well under 0.1% over a few kilometres, and exactly invertible.
class Projection
{
public:
  explicit Projection(GeoPoint origin, double earth_radius = kEarthRadius);

  const GeoPoint & origin() const { return origin_; }
  double earth_radius() const { return earth_radius_; }

  LocalPoint project(const GeoPoint & p) const;
  GeoPoint unproject(const LocalPoint & q) const;

private:
  GeoPoint origin_;
  double earth_radius_;
  double cos_lat0_;
};

/// Projection centred on the bounds. Throws degenerate_bounds.
Projection make_projection(const GeoBounds & bounds);

}  // namespace simmap

#endif  // SIMMAP__GEODESY_HPP_
