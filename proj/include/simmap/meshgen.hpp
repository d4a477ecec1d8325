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

#ifndef SIMMAP__MESHGEN_HPP_
#define SIMMAP__MESHGEN_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simmap/config.hpp"
#include "simmap/geodesy.hpp"
#include "simmap/geometry.hpp"
#include "simmap/osm.hpp"

namespace simmap
{

/// Mesh-space point in metres: X east, Y up, Z south (so -Z is north).
struct Point3
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3 &, const Point3 &) = default;
};

/// 2D east/north point lifted to mesh space at `elevation`.
inline Point3 to_mesh_space(const LocalPoint & p, double elevation)
{
  return {p.x, elevation, -p.y};
}

double triangle_area(const Point3 & a, const Point3 & b, const Point3 & c);

struct Material
{
  std::string name;
  std::array<double, 3> diffuse_rgb{0.5, 0.5, 0.5};

  friend bool operator==(const Material &, const Material &) = default;
};

struct Triangle
{
  std::array<std::uint32_t, 3> v{};
  std::uint32_t material = 0;

  friend bool operator==(const Triangle &, const Triangle &) = default;
};

struct TriangleMesh
{
  std::vector<Point3> vertices;
  std::vector<Triangle> triangles;
  std::vector<Material> materials;

  double area(std::size_t triangle) const;
  /// Sum of triangle areas in index order.
  double total_area() const;
  /// Appends `fragment`, merging materials by name.
  void append(const TriangleMesh & fragment);
  /// Throws ErrorKind::geometry if an index is out of range or a triangle is
  /// degenerate (area <= 1e-12 m^2).
  void validate() const;
};

// Feature classes, all in projected east/north metres.
struct RoadFeature
{
  OsmId source_id = 0;
  std::string highway_class;
  std::vector<LocalPoint> centerline;
  double width = 0.0;
};

struct BuildingFeature
{
  OsmId source_id = 0;
  geometry::Ring footprint;  ///< cleaned, counter-clockwise
  double height = 0.0;
};

struct ParkingFeature
{
  OsmId source_id = 0;
  geometry::Ring outline;  ///< cleaned, counter-clockwise
};

struct GroundRect
{
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
};

struct SkippedFeature
{
  std::string element;  ///< "way" or "relation"
  OsmId id = 0;
  std::string reason;
};

struct FeatureReport
{
  std::size_t unrecognized = 0;          ///< ways/relations without mappable tags
  std::size_t outer_ring_only = 0;       ///< multipolygons rendered without holes
  std::vector<SkippedFeature> skipped;   ///< mappable but unusable geometry
};

struct FeatureSet
{
  std::vector<RoadFeature> roads;
  std::vector<BuildingFeature> buildings;
  std::vector<ParkingFeature> parking_surfaces;
  std::optional<GroundRect> ground;

  std::size_t feature_count() const
  {
    return roads.size() + buildings.size() + parking_surfaces.size();
  }
};

/// Roads from `highway=*` ways, buildings from closed `building=*` ways,
/// parking surfaces from closed `amenity=parking` ways (and single-outer
/// multipolygons of the latter two). Unusable features are recorded in
/// `report` instead of throwing.
FeatureSet classify_features(
  const OsmDocument & doc, const Projection & projection, const PipelineConfig & cfg,
  FeatureReport * report = nullptr);

/// Building height from tags: numeric `height`, else `building:levels` x
/// level height, else the default.
double building_height(const TagMap & tags, const PipelineConfig & cfg);

/// Prism over `footprint`: roof at `height` plus two triangles per wall
/// edge, no floor. Uses a single "building" material.
TriangleMesh extrude_building(std::span<const LocalPoint> footprint, double height,
                              std::int64_t feature_id = 0);

/// Flat polygon at `elevation`, facing up, with one material.
TriangleMesh surface_polygon(std::span<const LocalPoint> polygon, double elevation,
                             const Material & material, std::int64_t feature_id = 0);

/// Ground at y=0, then parking, roads (both at cfg.surface_lift) and
/// buildings, each class in FeatureSet order. Throws nothing_to_build for an
/// empty set.
TriangleMesh build_mesh(const FeatureSet & features, const PipelineConfig & cfg);

namespace materials
{
const Material & ground();
const Material & road();
const Material & parking();
const Material & building();
}  // namespace materials

/// Wavefront OBJ (v/f/usemtl/mtllib, triangles) plus MTL (newmtl/Kd).
void write_obj(const TriangleMesh & mesh, const std::filesystem::path & obj_path,
               const std::filesystem::path & mtl_path);
/// Reads an OBJ and, when referenced and present, its MTL. Faces with more
/// than three vertices are fan-triangulated.
TriangleMesh read_obj(const std::filesystem::path & obj_path);

}  // namespace simmap

#endif  // SIMMAP__MESHGEN_HPP_
