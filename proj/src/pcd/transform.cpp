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

#include <string>

#include "simmap/error.hpp"
#include "simmap/parallel.hpp"
#include "simmap/pcd.hpp"

namespace simmap
{
namespace
{
// Zero coefficients are skipped rather than multiplied in, so an identity row
// reproduces its input bit-for-bit (including -0.0).
double apply_row(const Transform4 & t, std::size_t row, double x, double y, double z)
{
  const double v[3] = {x, y, z};
  double acc = 0.0;
  bool started = false;
  for (std::size_t k = 0; k < 3; ++k) {
    const double c = t(row, k);
    if (c != 0.0) {
      acc = started ? acc + c * v[k] : c * v[k];
      started = true;
    }
  }
  if (t(row, 3) != 0.0) {
    acc = started ? acc + t(row, 3) : t(row, 3);
  }
  return acc;
}
}  // namespace

Transform4 Transform4::yup_to_zup()
{
  return {{1, 0, 0, 0,   //
           0, 0, -1, 0,  //
           0, 1, 0, 0,   //
           0, 0, 0, 1}};
}

std::optional<Transform4> Transform4::preset(std::string_view name)
{
  if (name == "identity") {
    return identity();
  }
  if (name == "yup-to-zup") {
    return yup_to_zup();
  }
  return std::nullopt;
}

bool Transform4::is_affine() const
{
  return m[12] == 0.0 && m[13] == 0.0 && m[14] == 0.0 && m[15] == 1.0;
}

Transform4 Transform4::operator*(const Transform4 & rhs) const
{
  Transform4 out;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      double sum = 0.0;
      for (std::size_t k = 0; k < 4; ++k) {
        sum += (*this)(r, k) * rhs(k, c);
      }
      out.m[r * 4 + c] = sum;
    }
  }
  return out;
}

PointCloud apply_transform(const PointCloud & cloud, const Transform4 & t, unsigned threads)
{
  if (!t.is_affine()) {
    throw Error(ErrorKind::invalid_argument, "transform bottom row must be (0, 0, 0, 1)");
  }
  PointCloud out;
  out.viewpoint = cloud.viewpoint;
  out.rgb = cloud.rgb;
  out.points.resize(cloud.points.size());
  parallel_for_chunks(cloud.points.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double x = cloud.points[i].x;
      const double y = cloud.points[i].y;
      const double z = cloud.points[i].z;
      out.points[i] = {static_cast<float>(apply_row(t, 0, x, y, z)),
                       static_cast<float>(apply_row(t, 1, x, y, z)),
                       static_cast<float>(apply_row(t, 2, x, y, z))};
    }
  });
  return out;
}

}  // namespace simmap
