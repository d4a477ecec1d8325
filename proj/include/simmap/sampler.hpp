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

#ifndef SIMMAP__SAMPLER_HPP_
#define SIMMAP__SAMPLER_HPP_

#include <cstdint>
#include <vector>

#include "simmap/meshgen.hpp"
#include "simmap/pcd.hpp"

namespace simmap
{

struct SamplingSpec
{
  double density = 40.0;  ///< points per square metre
  std::uint64_t seed = 42;
};

/// SplitMix64 counter-based generator (Steele, Lea & Flood).
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double next_unit();

private:
  std::uint64_t state_;
};

/// Per-triangle sample counts by carrying the fractional remainder forward
/// in index order, so the total is exactly floor(density * total_area).
std::vector<std::uint64_t> triangle_sample_counts(const TriangleMesh & mesh,
                                                  const SamplingSpec & spec);

/// a + u(b - a) + v(c - a), with (u, v) folded into the triangle when u + v > 1.
Point3 sample_point_in_triangle(const Point3 & a, const Point3 & b, const Point3 & c, double u,
                                double v);

/// Double-precision samples in ascending triangle order. Triangle i draws
/// from SplitMix64(seed ^ i), so the result is independent of `threads`
/// (0 = hardware concurrency).
std::vector<Point3> sample_surface(const TriangleMesh & mesh, const SamplingSpec & spec,
                                   unsigned threads = 1);

/// sample_surface narrowed to a float cloud; optionally coloured by the
/// source triangle's material.
PointCloud sample_mesh(const TriangleMesh & mesh, const SamplingSpec & spec, unsigned threads = 1,
                       bool with_color = false);

}  // namespace simmap

#endif  // SIMMAP__SAMPLER_HPP_
