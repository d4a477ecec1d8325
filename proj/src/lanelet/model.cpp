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
#include <unordered_map>

#include "simmap/lanelet.hpp"

namespace simmap::lanelet
{

const Point * LaneletMap::find_point(Id id) const
{
  const auto it = std::find_if(points.begin(), points.end(), [&](const Point & p) { return p.id == id; });
  return it == points.end() ? nullptr : &*it;
}

const LineString * LaneletMap::find_linestring(Id id) const
{
  const auto it = std::find_if(
    linestrings.begin(), linestrings.end(), [&](const LineString & l) { return l.id == id; });
  return it == linestrings.end() ? nullptr : &*it;
}

std::vector<const LineString *> LaneletMap::parking_lots() const
{
  std::vector<const LineString *> out;
  for (const auto & ls : linestrings) {
    const bool closed = ls.point_refs.size() >= 2 && ls.point_refs.front() == ls.point_refs.back();
    if (ls.type() == kParkingLotType && closed) {
      out.push_back(&ls);
    }
  }
  return out;
}

std::vector<const LineString *> LaneletMap::parking_spaces() const
{
  std::vector<const LineString *> out;
  for (const auto & ls : linestrings) {
    if (ls.type() == kParkingSpaceType) {
      out.push_back(&ls);
    }
  }
  return out;
}

LaneletMap nullify_latlon(const LaneletMap & map, NullMode mode)
{
  LaneletMap out = map;
  for (auto & p : out.points) {
    if (mode == NullMode::zero) {
      p.lat = 0.0;
      p.lon = 0.0;
    } else {
      p.lat.reset();
      p.lon.reset();
    }
  }
  return out;
}

}  // namespace simmap::lanelet
