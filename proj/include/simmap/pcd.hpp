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

#ifndef SIMMAP__PCD_HPP_
#define SIMMAP__PCD_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace simmap
{

struct PointXYZ
{
  float x = 0.0F;
  float y = 0.0F;
  float z = 0.0F;

  friend bool operator==(const PointXYZ &, const PointXYZ &) = default;
};

/// Sensor pose written to the VIEWPOINT header line: translation then
/// quaternion (w, x, y, z).
struct Viewpoint
{
  double tx = 0.0, ty = 0.0, tz = 0.0;
  double qw = 1.0, qx = 0.0, qy = 0.0, qz = 0.0;

  friend bool operator==(const Viewpoint &, const Viewpoint &) = default;
};

struct PointCloud
{
  std::vector<PointXYZ> points;
  Viewpoint viewpoint;
  /// Optional packed 0x00RRGGBB per point; written as an extra `rgb` field.
  std::vector<std::uint32_t> rgb;

  std::size_t size() const { return points.size(); }
  bool has_color() const { return !rgb.empty(); }
};

/// Bitwise comparison of coordinates (so -0.0 != 0.0) and viewpoint.
bool bit_identical(const PointCloud & a, const PointCloud & b);

enum class PcdDataMode { ascii, binary };

const char * to_string(PcdDataMode mode);
std::optional<PcdDataMode> pcd_data_mode_from_string(std::string_view s);

/// Header of a parsed file, for callers that need more than the points.
struct PcdHeader
{
  std::string version;
  std::vector<std::string> fields;
  std::vector<int> sizes;
  std::vector<char> types;
  std::vector<int> counts;
  std::uint64_t width = 0;
  std::uint64_t height = 1;
  std::uint64_t points = 0;
  std::string data;  ///< "ascii", "binary" or the unsupported mode found
  std::vector<std::string> skipped_fields;
};

/// PCD v0.7 writer. ASCII values use the shortest text that round-trips the
/// 32-bit value; binary payload is packed little-endian.
void write_pcd(const PointCloud & cloud, PcdDataMode mode, std::ostream & out);
void save_pcd(const PointCloud & cloud, PcdDataMode mode, const std::filesystem::path & path);

/// Reads ascii or binary PCD with float32 x/y/z. Other fields are skipped
/// with a warning. binary_compressed is rejected with unsupported_format;
/// short or overlong payloads raise corruption.
PointCloud read_pcd(std::istream & in, PcdHeader * header = nullptr);
PointCloud load_pcd(const std::filesystem::path & path, PcdHeader * header = nullptr);

/// Row-major homogeneous 4x4 transform.
struct Transform4
{
  std::array<double, 16> m{1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};

  static Transform4 identity() { return {}; }
  /// Mesh Y-up (X east, Z south) to ground Z-up (X east, Y north):
  /// (x, y, z) -> (x, -z, y).
  static Transform4 yup_to_zup();
  /// Named preset ("identity", "yup-to-zup").
  static std::optional<Transform4> preset(std::string_view name);

  double operator()(std::size_t row, std::size_t col) const { return m[row * 4 + col]; }
  bool is_affine() const;
  Transform4 operator*(const Transform4 & rhs) const;

  friend bool operator==(const Transform4 &, const Transform4 &) = default;
};

/// Applies `t` in double precision and stores back to float. Point order is
/// kept. Throws invalid_argument unless the bottom row is (0, 0, 0, 1).
PointCloud apply_transform(const PointCloud & cloud, const Transform4 & t, unsigned threads = 1);

/// read_pcd then write_pcd in `mode`.
void convert_pcd(const std::filesystem::path & input, const std::filesystem::path & output,
                 PcdDataMode mode);

}  // namespace simmap

#endif  // SIMMAP__PCD_HPP_
