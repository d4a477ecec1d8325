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
#include <string>
#include <unordered_map>

#include "simmap/error.hpp"
#include "simmap/meshgen.hpp"

namespace simmap
{
namespace
{
constexpr double kMinTriangleArea = 1e-12;

std::uint32_t to_index(std::size_t i) { return static_cast<std::uint32_t>(i); }
}  // namespace

namespace materials
{
const Material & ground()
{
  static const Material m{"ground", {0.35, 0.55, 0.25}};
  return m;
}
const Material & road()
{
  static const Material m{"road", {0.25, 0.25, 0.27}};
  return m;
}
const Material & parking()
{
  static const Material m{"parking", {0.45, 0.45, 0.47}};
  return m;
}
const Material & building()
{
  static const Material m{"building", {0.78, 0.74, 0.68}};
  return m;
}
}  // namespace materials

double triangle_area(const Point3 & a, const Point3 & b, const Point3 & c)
{
  const double ux = b.x - a.x;
  const double uy = b.y - a.y;
  const double uz = b.z - a.z;
  const double vx = c.x - a.x;
  const double vy = c.y - a.y;
  const double vz = c.z - a.z;
  const double cx = uy * vz - uz * vy;
  const double cy = uz * vx - ux * vz;
  const double cz = ux * vy - uy * vx;
  return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

double TriangleMesh::area(std::size_t triangle) const
{
  const auto & t = triangles[triangle];
  return triangle_area(vertices[t.v[0]], vertices[t.v[1]], vertices[t.v[2]]);
}

double TriangleMesh::total_area() const
{
  double total = 0.0;
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    total += area(i);
  }
  return total;
}

void TriangleMesh::append(const TriangleMesh & fragment)
{
  std::vector<std::uint32_t> material_map(fragment.materials.size());
  for (std::size_t i = 0; i < fragment.materials.size(); ++i) {
    std::size_t j = 0;
    while (j < materials.size() && materials[j].name != fragment.materials[i].name) {
      ++j;
    }
    if (j == materials.size()) {
      materials.push_back(fragment.materials[i]);
    }
    material_map[i] = to_index(j);
  }
  const auto offset = to_index(vertices.size());
  vertices.insert(vertices.end(), fragment.vertices.begin(), fragment.vertices.end());
  for (const auto & t : fragment.triangles) {
    triangles.push_back(
      {{t.v[0] + offset, t.v[1] + offset, t.v[2] + offset}, material_map.at(t.material)});
  }
}

void TriangleMesh::validate() const
{
  if (!triangles.empty() && vertices.size() < 3) {
    throw Error(ErrorKind::geometry, "mesh has triangles but fewer than 3 vertices");
  }
  for (const auto & v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
      throw Error(ErrorKind::geometry, "mesh has a non-finite vertex");
    }
  }
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const auto & t = triangles[i];
    for (const auto v : t.v) {
      if (v >= vertices.size()) {
        throw Error(ErrorKind::geometry,
                    "triangle " + std::to_string(i) + " references vertex out of range");
      }
    }
    if (t.material >= materials.size()) {
      throw Error(ErrorKind::geometry,
                  "triangle " + std::to_string(i) + " references material out of range");
    }
    if (!(area(i) > kMinTriangleArea)) {
      throw Error(ErrorKind::geometry, "triangle " + std::to_string(i) + " is degenerate");
    }
  }
}

TriangleMesh surface_polygon(std::span<const LocalPoint> polygon, double elevation,
                             const Material & material, std::int64_t feature_id)
{
  const auto triangles = geometry::triangulate_polygon(polygon, feature_id);
  TriangleMesh mesh;
  mesh.materials.push_back(material);
  // Only the vertices the triangulation kept are emitted.
  std::unordered_map<std::size_t, std::uint32_t> remap;
  for (const auto & tri : triangles) {
    Triangle t;
    for (std::size_t k = 0; k < 3; ++k) {
      auto [it, inserted] = remap.emplace(tri[k], to_index(mesh.vertices.size()));
      if (inserted) {
        mesh.vertices.push_back(to_mesh_space(polygon[tri[k]], elevation));
      }
      t.v[k] = it->second;
    }
    mesh.triangles.push_back(t);
  }
  return mesh;
}

TriangleMesh extrude_building(std::span<const LocalPoint> footprint, double height,
                              std::int64_t feature_id)
{
  if (!(height > 0.0) || !std::isfinite(height)) {
    throw GeometryError(ErrorKind::geometry, "building height must be positive", feature_id);
  }
  geometry::Ring ring = geometry::clean_ring(footprint).points;
  if (ring.size() >= 3 && geometry::signed_area(ring) < 0.0) {
    std::reverse(ring.begin(), ring.end());
  }
  const auto roof = geometry::triangulate_polygon(ring, feature_id);
  const std::size_t n = ring.size();

  TriangleMesh mesh;
  mesh.materials.push_back(materials::building());
  mesh.vertices.reserve(2 * n);
  for (const auto & p : ring) {
    mesh.vertices.push_back(to_mesh_space(p, 0.0));
  }
  for (const auto & p : ring) {
    mesh.vertices.push_back(to_mesh_space(p, height));
  }
  const auto top = [n](std::size_t i) { return to_index(n + i); };
  for (const auto & tri : roof) {
    mesh.triangles.push_back({{top(tri[0]), top(tri[1]), top(tri[2])}, 0});
  }
  // Counter-clockwise footprint: (b_i, b_i+1, t_i+1) faces outward.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    mesh.triangles.push_back({{to_index(i), to_index(j), top(j)}, 0});
    mesh.triangles.push_back({{to_index(i), top(j), top(i)}, 0});
  }
  return mesh;
}

TriangleMesh build_mesh(const FeatureSet & features, const PipelineConfig & cfg)
{
  if (features.feature_count() == 0 && !features.ground) {
    throw Error(ErrorKind::nothing_to_build, "nothing to build: feature set is empty");
  }
  TriangleMesh mesh;
  if (features.ground) {
    const auto & g = *features.ground;
    const LocalPoint corners[] = {
      {g.min_x, g.min_y}, {g.max_x, g.min_y}, {g.max_x, g.max_y}, {g.min_x, g.max_y}};
    mesh.append(surface_polygon(corners, 0.0, materials::ground()));
  }
  for (const auto & p : features.parking_surfaces) {
    mesh.append(surface_polygon(p.outline, cfg.surface_lift, materials::parking(), p.source_id));
  }
  for (const auto & r : features.roads) {
    const auto ribbon = geometry::buffer_polyline(r.centerline, r.width);
    mesh.append(surface_polygon(ribbon, cfg.surface_lift, materials::road(), r.source_id));
  }
  for (const auto & b : features.buildings) {
    mesh.append(extrude_building(b.footprint, b.height, b.source_id));
  }
  return mesh;
}

}  // namespace simmap
