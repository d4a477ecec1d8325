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

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include <cmath>
#include <string>

#include "simmap/error.hpp"
#include "simmap/geometry.hpp"

namespace simmap::geometry
{
namespace
{
namespace bg = boost::geometry;
using BgPoint = bg::model::d2::point_xy<double>;
using BgPolygon = bg::model::polygon<BgPoint, false>;  // counter-clockwise
using BgMultiPolygon = bg::model::multi_polygon<BgPolygon>;

// Ratio of maximum miter length to ribbon width.
constexpr double kMiterLimit = 2.0;

Vec2 left_normal(Vec2 a, Vec2 b)
{
  const Vec2 d = b - a;
  const double len = norm(d);
  return {-d.y / len, d.x / len};
}

std::vector<Vec2> segment_normals(std::span<const LocalPoint> pts)
{
  std::vector<Vec2> normals;
  normals.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    normals.push_back(left_normal(pts[i], pts[i + 1]));
  }
  return normals;
}

struct Join
{
  Vec2 first;
  Vec2 second;
  bool beveled = false;
};

// Offset join on side `side` (+1 left, -1 right) at `p` between segments with
// normals n1, n2. `h` is the half width.
Join make_join(Vec2 p, Vec2 n1, Vec2 n2, Vec2 d1, Vec2 d2, double side, double h, double width)
{
  const double turn = cross(d1, d2);
  const bool outer = side * turn <= 0.0;
  const Vec2 sum = n1 + n2;
  const double sum_len = norm(sum);
  if (sum_len > 1e-12) {
    const Vec2 m = (1.0 / sum_len) * sum;
    const double c = dot(m, n1);
    const double miter_len = h / c;
    if (!outer || miter_len <= kMiterLimit * width) {
      const Vec2 q = p + (side * miter_len) * m;
      return {q, q, false};
    }
  }
  return {p + (side * h) * n1, p + (side * h) * n2, true};
}

BgPolygon to_bg(std::initializer_list<Vec2> pts)
{
  BgPolygon poly;
  for (const auto & p : pts) {
    bg::append(poly.outer(), BgPoint(p.x, p.y));
  }
  bg::correct(poly);
  return poly;
}

std::vector<LocalPoint> dissolve(
  std::span<const LocalPoint> pts, std::span<const Vec2> normals, double h, double width)
{
  BgMultiPolygon acc;
  auto add = [&](const BgPolygon & piece) {
    if (std::abs(bg::area(piece)) <= 1e-12 * width * width) {
      return;
    }
    BgMultiPolygon merged;
    bg::union_(acc, piece, merged);
    acc = std::move(merged);
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec2 o = h * normals[i];
    add(to_bg({pts[i] - o, pts[i + 1] - o, pts[i + 1] + o, pts[i] + o}));
  }
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const Vec2 d1 = pts[k] - pts[k - 1];
    const Vec2 d2 = pts[k + 1] - pts[k];
    const double side = cross(d1, d2) > 0.0 ? -1.0 : 1.0;
    const Join j = make_join(pts[k], normals[k - 1], normals[k], d1, d2, side, h, width);
    const Vec2 a = pts[k] + (side * h) * normals[k - 1];
    const Vec2 b = pts[k] + (side * h) * normals[k];
    if (j.beveled) {
      add(to_bg({pts[k], a, b}));
    } else {
      add(to_bg({pts[k], a, j.first, b}));
    }
  }
  if (acc.size() != 1 || !acc.front().inners().empty()) {
    throw GeometryError(
      ErrorKind::geometry, "ribbon overlaps itself into a region with holes or islands", 0);
  }
  std::vector<LocalPoint> ring;
  for (const auto & p : acc.front().outer()) {
    ring.push_back({p.x(), p.y()});
  }
  if (ring.size() > 1 && ring.front() == ring.back()) {
    ring.pop_back();
  }
  return ring;
}
}  // namespace

std::vector<LocalPoint> buffer_polyline(std::span<const LocalPoint> line, double width)
{
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw Error(ErrorKind::invalid_argument, "ribbon width must be positive");
  }
  const std::vector<LocalPoint> pts = dedupe_consecutive(line);
  if (pts.size() < 2) {
    throw GeometryError(ErrorKind::degenerate, "polyline has zero length after deduplication", 0);
  }
  const double h = 0.5 * width;
  const std::vector<Vec2> normals = segment_normals(pts);

  auto side_points = [&](double side) {
    std::vector<LocalPoint> out;
    out.push_back(pts.front() + (side * h) * normals.front());
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      const Join j = make_join(
        pts[k], normals[k - 1], normals[k], pts[k] - pts[k - 1], pts[k + 1] - pts[k], side, h,
        width);
      out.push_back(j.first);
      if (j.beveled) {
        out.push_back(j.second);
      }
    }
    out.push_back(pts.back() + (side * h) * normals.back());
    return out;
  };

  std::vector<LocalPoint> ring = side_points(-1.0);
  const std::vector<LocalPoint> left = side_points(1.0);
  ring.insert(ring.end(), left.rbegin(), left.rend());
  if (is_simple(ring)) {
    return ring;
  }
  // Sharp turns fold the naive outline over itself; merge the per-segment
  // pieces instead.
  ring = dissolve(pts, normals, h, width);
  if (!is_simple(ring)) {
    throw GeometryError(ErrorKind::geometry, "ribbon outline is not simple", 0);
  }
  return ring;
}

std::vector<LocalPoint> offset_polyline(std::span<const LocalPoint> line, double distance)
{
  const std::vector<LocalPoint> pts = dedupe_consecutive(line);
  if (pts.size() < 2) {
    throw GeometryError(ErrorKind::degenerate, "polyline has zero length after deduplication", 0);
  }
  const std::vector<Vec2> normals = segment_normals(pts);
  const double max_len = kMiterLimit * 2.0 * std::abs(distance);
  std::vector<LocalPoint> out;
  out.reserve(pts.size());
  out.push_back(pts.front() + distance * normals.front());
  for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
    const Vec2 sum = normals[k - 1] + normals[k];
    const double sum_len = norm(sum);
    if (sum_len > 1e-12) {
      const Vec2 m = (1.0 / sum_len) * sum;
      const double len = std::min(max_len, std::abs(distance) / dot(m, normals[k - 1]));
      out.push_back(pts[k] + ((distance < 0.0 ? -1.0 : 1.0) * len) * m);
    } else {
      // Full reversal: push the tip straight ahead of the incoming segment.
      const Vec2 d = pts[k] - pts[k - 1];
      out.push_back(pts[k] + (max_len / norm(d)) * d);
    }
  }
  out.push_back(pts.back() + distance * normals.back());
  return out;
}

}  // namespace simmap::geometry
