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

#ifndef SIMMAP__GEOMETRY_HPP_
#define SIMMAP__GEOMETRY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "simmap/geodesy.hpp"

namespace simmap::geometry
{

using Vec2 = LocalPoint;
/// Polygon ring without a repeated closing vertex.
using Ring = std::vector<LocalPoint>;
using TriangleIndices = std::array<std::size_t, 3>;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Orientation of c relative to the directed line a->b (positive: left).
inline double cross(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }
double norm(Vec2 a);

/// Positive for counter-clockwise rings.
double signed_area(std::span<const LocalPoint> ring);
double perimeter(std::span<const LocalPoint> ring);

/// Closed-segment intersection test, touching included.
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d);

std::vector<LocalPoint> dedupe_consecutive(std::span<const LocalPoint> points);

struct CleanedRing
{
  Ring points;
  /// Index into the input for each kept vertex.
  std::vector<std::size_t> source_index;
};

/// Drops a repeated closing vertex, consecutive duplicates, and vertices whose
/// neighbours are collinear with them (straight joins and spikes).
CleanedRing clean_ring(std::span<const LocalPoint> ring);

/// True when no two edges meet other than consecutive edges at their shared vertex.
bool is_simple(std::span<const LocalPoint> ring);

/// Ear-clipping triangulation (fan for convex input) of a simple polygon.
/// Returned indices refer to `polygon`; every triangle is counter-clockwise.
/// Throws GeometryError naming `feature_id` on self-intersection or degeneracy.
std::vector<TriangleIndices> triangulate_polygon(
  std::span<const LocalPoint> polygon, std::int64_t feature_id = 0);

/// Ribbon polygon around a polyline, offset width/2 to both sides with
/// mitered joins. Miters longer than 2*width become bevels. The ring is
/// counter-clockwise, starting at the right-hand side of the first point.
std::vector<LocalPoint> buffer_polyline(std::span<const LocalPoint> line, double width);

/// Polyline offset by `distance` to the left (negative: right), one output
/// point per deduplicated input point. Miter length is capped at twice the
/// implied width, i.e. 4*|distance|.
std::vector<LocalPoint> offset_polyline(std::span<const LocalPoint> line, double distance);

}  // namespace simmap::geometry

#endif  // SIMMAP__GEOMETRY_HPP_
