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

#include "simmap/geodesy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "simmap/error.hpp"
#include "simmap/text.hpp"

namespace simmap
{
namespace
{
constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
// cos(lat0) must stay well away from zero for the east scale to be usable.
constexpr double kMaxOriginLat = 89.0;
}  // namespace

GeoPoint GeoBounds::center() const
{
  return {0.5 * (min_lat + max_lat), 0.5 * (min_lon + max_lon)};
}

bool is_valid(const GeoPoint & p)
{
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
         p.lon >= -180.0 && p.lon <= 180.0;
}

Projection::Projection(GeoPoint origin, double earth_radius)
: origin_(origin), earth_radius_(earth_radius), cos_lat0_(std::cos(origin.lat * kDegToRad))
{
  if (!is_valid(origin) || std::abs(origin.lat) >= kMaxOriginLat) {
    throw Error(
      ErrorKind::invalid_argument, "projection origin out of range: lat=" +
                                     text::format_shortest(origin.lat) +
                                     " lon=" + text::format_shortest(origin.lon));
  }
  if (!(earth_radius > 0.0) || !std::isfinite(earth_radius)) {
    throw Error(ErrorKind::invalid_argument, "earth radius must be positive");
  }
}

LocalPoint Projection::project(const GeoPoint & p) const
{
  return {
    earth_radius_ * ((p.lon - origin_.lon) * kDegToRad) * cos_lat0_,
    earth_radius_ * ((p.lat - origin_.lat) * kDegToRad)};
}

GeoPoint Projection::unproject(const LocalPoint & q) const
{
  return {
    origin_.lat + (q.y / earth_radius_) * kRadToDeg,
    origin_.lon + (q.x / (earth_radius_ * cos_lat0_)) * kRadToDeg};
}

Projection make_projection(const GeoBounds & bounds)
{
  if (bounds.is_degenerate()) {
    throw Error(ErrorKind::degenerate_bounds, "cannot centre a projection on degenerate bounds");
  }
  return Projection(bounds.center());
}

}  // namespace simmap
