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

#include "simmap/sampler.hpp"

#include <cmath>
#include <string>

#include "simmap/error.hpp"
#include "simmap/parallel.hpp"

namespace simmap
{
namespace
{
std::uint32_t pack_rgb(const std::array<double, 3> & rgb)
{
  auto channel = [](double c) {
    return static_cast<std::uint32_t>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0));
  };
  return (channel(rgb[0]) << 16) | (channel(rgb[1]) << 8) | channel(rgb[2]);
}
}  // namespace

std::uint64_t SplitMix64::next()
{
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<std::uint64_t> triangle_sample_counts(const TriangleMesh & mesh,
                                                  const SamplingSpec & spec)
{
  if (!(spec.density > 0.0) || !std::isfinite(spec.density)) {
    throw Error(ErrorKind::invalid_argument, "sampling density must be positive");
  }
  // floor(density * prefix_area) telescopes: carrying the fractional part of
  // density * area from triangle to triangle yields exactly these differences,
  // and the counts sum to floor(density * total_area) without rounding drift.
  std::vector<std::uint64_t> counts(mesh.triangles.size());
  double prefix_area = 0.0;
  double previous_floor = 0.0;
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    prefix_area += mesh.area(i);
    const double current_floor = std::floor(spec.density * prefix_area);
    counts[i] = static_cast<std::uint64_t>(current_floor - previous_floor);
    previous_floor = current_floor;
  }
  return counts;
}

Point3 sample_point_in_triangle(const Point3 & a, const Point3 & b, const Point3 & c, double u,
                                double v)
{
  if (u + v > 1.0) {
    u = 1.0 - u;
    v = 1.0 - v;
  }
  return {a.x + u * (b.x - a.x) + v * (c.x - a.x), a.y + u * (b.y - a.y) + v * (c.y - a.y),
          a.z + u * (b.z - a.z) + v * (c.z - a.z)};
}

std::vector<Point3> sample_surface(const TriangleMesh & mesh, const SamplingSpec & spec,
                                   unsigned threads)
{
  if (mesh.triangles.empty()) {
    throw Error(ErrorKind::invalid_argument, "cannot sample a mesh without triangles");
  }
  const auto counts = triangle_sample_counts(mesh, spec);
  if (!(mesh.total_area() > 0.0)) {
    throw Error(ErrorKind::empty_cloud, "mesh has zero surface area");
  }
  std::vector<std::uint64_t> offsets(counts.size() + 1, 0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    offsets[i + 1] = offsets[i] + counts[i];
  }
  std::vector<Point3> out(offsets.back());
  parallel_for_chunks(mesh.triangles.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto & t = mesh.triangles[i];
      const Point3 & a = mesh.vertices[t.v[0]];
      const Point3 & b = mesh.vertices[t.v[1]];
      const Point3 & c = mesh.vertices[t.v[2]];
      SplitMix64 rng(spec.seed ^ static_cast<std::uint64_t>(i));
      for (std::uint64_t k = offsets[i]; k < offsets[i + 1]; ++k) {
        const double u = rng.next_unit();
        const double v = rng.next_unit();
        out[k] = sample_point_in_triangle(a, b, c, u, v);
      }
    }
  });
  return out;
}

PointCloud sample_mesh(const TriangleMesh & mesh, const SamplingSpec & spec, unsigned threads,
                       bool with_color)
{
  const std::vector<Point3> samples = sample_surface(mesh, spec, threads);
  PointCloud cloud;
  cloud.points.resize(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    cloud.points[k] = {static_cast<float>(samples[k].x), static_cast<float>(samples[k].y),
                       static_cast<float>(samples[k].z)};
  }
  if (with_color) {
    const auto counts = triangle_sample_counts(mesh, spec);
    cloud.rgb.reserve(samples.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const auto packed = pack_rgb(mesh.materials[mesh.triangles[i].material].diffuse_rgb);
      cloud.rgb.insert(cloud.rgb.end(), counts[i], packed);
    }
  }
  return cloud;
}

}  // namespace simmap
