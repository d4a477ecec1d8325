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
#include <cmath>
#include <numeric>
#include <string>

#include "simmap/error.hpp"
#include "simmap/geometry.hpp"

namespace simmap::geometry
{
namespace
{
// sin of the smallest turn angle treated as a real corner.
constexpr double kCollinearSine = 1e-10;

bool is_collinear_vertex(Vec2 prev, Vec2 v, Vec2 next)
{
  const Vec2 a = v - prev;
  const Vec2 b = next - v;
  return std::abs(cross(a, b)) <= kCollinearSine * norm(a) * norm(b);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p)
{
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool point_in_triangle_closed(Vec2 a, Vec2 b, Vec2 c, Vec2 p)
{
  return cross(a, b, p) >= 0.0 && cross(b, c, p) >= 0.0 && cross(c, a, p) >= 0.0;
}
}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double signed_area(std::span<const LocalPoint> ring)
{
  const std::size_t n = ring.size();
  if (n < 3) {
    return 0.0;
  }
  // Shifted to the first vertex to limit cancellation for far-off coordinates.
  const Vec2 o = ring[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    twice += cross(ring[i] - o, ring[i + 1] - o);
  }
  return 0.5 * twice;
}

double perimeter(std::span<const LocalPoint> ring)
{
  double total = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    total += norm(ring[(i + 1) % ring.size()] - ring[i]);
  }
  return total;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d)
{
  const int d1 = sign(cross(c, d, a));
  const int d2 = sign(cross(c, d, b));
  const int d3 = sign(cross(a, b, c));
  const int d4 = sign(cross(a, b, d));
  if (d1 * d2 < 0 && d3 * d4 < 0) {
    return true;
  }
  return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) ||
         (d3 == 0 && on_segment(a, b, c)) || (d4 == 0 && on_segment(a, b, d));
}

std::vector<LocalPoint> dedupe_consecutive(std::span<const LocalPoint> points)
{
  std::vector<LocalPoint> out;
  out.reserve(points.size());
  for (const auto & p : points) {
    if (out.empty() || !(out.back() == p)) {
      out.push_back(p);
    }
  }
  return out;
}

CleanedRing clean_ring(std::span<const LocalPoint> ring)
{
  CleanedRing out;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (out.points.empty() || !(out.points.back() == ring[i])) {
      out.points.push_back(ring[i]);
      out.source_index.push_back(i);
    }
  }
  while (out.points.size() > 1 && out.points.front() == out.points.back()) {
    out.points.pop_back();
    out.source_index.pop_back();
  }
  // Removing one vertex can make its neighbours collinear, so iterate.
  bool changed = true;
  while (changed && out.points.size() >= 3) {
    changed = false;
    const std::size_t n = out.points.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto & prev = out.points[(i + n - 1) % n];
      const auto & next = out.points[(i + 1) % n];
      if (prev == next || is_collinear_vertex(prev, out.points[i], next)) {
        out.points.erase(out.points.begin() + static_cast<std::ptrdiff_t>(i));
        out.source_index.erase(out.source_index.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return out;
}

bool is_simple(std::span<const LocalPoint> ring)
{
  const std::size_t n = ring.size();
  if (n < 3) {
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % n];
    if (a == b) {
      return false;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 c = ring[j];
      const Vec2 d = ring[(j + 1) % n];
      const bool adjacent_next = j == i + 1;
      const bool adjacent_prev = i == 0 && j == n - 1;
      if (adjacent_next || adjacent_prev) {
        // Consecutive edges may only share their common vertex.
        const Vec2 shared = adjacent_next ? b : a;
        const Vec2 u = (adjacent_next ? a : b) - shared;
        const Vec2 w = (adjacent_next ? d : c) - shared;
        if (cross(u, w) == 0.0 && dot(u, w) > 0.0) {
          return false;
        }
        continue;
      }
      if (segments_intersect(a, b, c, d)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<TriangleIndices> triangulate_polygon(
  std::span<const LocalPoint> polygon, std::int64_t feature_id)
{
  const CleanedRing cleaned = clean_ring(polygon);
  const auto & pts = cleaned.points;
  const std::size_t n = pts.size();
  if (n < 3) {
    throw GeometryError(
      ErrorKind::degenerate,
      "polygon of feature " + std::to_string(feature_id) + " has fewer than 3 distinct vertices",
      feature_id);
  }
  if (!is_simple(pts)) {
    throw GeometryError(
      ErrorKind::geometry,
      "polygon of feature " + std::to_string(feature_id) + " is self-intersecting", feature_id);
  }
  const double area = signed_area(pts);
  if (area == 0.0) {
    throw GeometryError(
      ErrorKind::degenerate, "polygon of feature " + std::to_string(feature_id) + " has no area",
      feature_id);
  }

  // Work in counter-clockwise order over indices into `pts`.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (area < 0.0) {
    std::reverse(order.begin(), order.end());
  }
  auto source = [&](std::size_t k) { return cleaned.source_index[k]; };

  std::vector<TriangleIndices> triangles;
  triangles.reserve(n - 2);

  bool convex = true;
  for (std::size_t i = 0; i < n && convex; ++i) {
    convex = cross(pts[order[i]], pts[order[(i + 1) % n]], pts[order[(i + 2) % n]]) > 0.0;
  }
  if (convex) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      triangles.push_back({source(order[0]), source(order[i]), source(order[i + 1])});
    }
    return triangles;
  }

  std::vector<std::size_t> remaining = order;
  while (remaining.size() > 3) {
    const std::size_t m = remaining.size();
    std::size_t best = m;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t ip = remaining[(i + m - 1) % m];
      const std::size_t ic = remaining[i];
      const std::size_t in = remaining[(i + 1) % m];
      if (best != m && ic >= remaining[best]) {
        continue;  // only a smaller vertex index can win the tie-break
      }
      if (!(cross(pts[ip], pts[ic], pts[in]) > 0.0)) {
        continue;
      }
      bool blocked = false;
      for (std::size_t j = 0; j < m && !blocked; ++j) {
        const std::size_t q = remaining[j];
        if (q == ip || q == ic || q == in) {
          continue;
        }
        blocked = point_in_triangle_closed(pts[ip], pts[ic], pts[in], pts[q]);
      }
      if (!blocked) {
        best = i;
      }
    }
    if (best == m) {
      throw GeometryError(
        ErrorKind::geometry,
        "no ear found while triangulating feature " + std::to_string(feature_id), feature_id);
    }
    const std::size_t ip = remaining[(best + m - 1) % m];
    const std::size_t in = remaining[(best + 1) % m];
    triangles.push_back({source(ip), source(remaining[best]), source(in)});
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  triangles.push_back({source(remaining[0]), source(remaining[1]), source(remaining[2])});
  return triangles;
}

}  // namespace simmap::geometry
