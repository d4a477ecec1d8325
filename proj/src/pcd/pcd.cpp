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

#include "simmap/pcd.hpp"

#include <spdlog/spdlog.h>

#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "simmap/error.hpp"
#include "simmap/text.hpp"

namespace simmap
{
namespace
{
void put_u32_le(std::string & out, std::uint32_t v)
{
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t get_u32_le(const char * p)
{
  const auto * b = reinterpret_cast<const unsigned char *>(p);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

[[noreturn]] void corrupt(const std::string & message)
{
  throw Error(ErrorKind::corruption, "corrupt PCD: " + message);
}

std::uint64_t header_count(const std::vector<std::string_view> & tokens, std::size_t line)
{
  if (tokens.size() != 2) {
    throw ParseError("PCD " + std::string(tokens[0]) + " expects one value", line);
  }
  const auto value = text::parse_uint64(tokens[1]);
  if (!value) {
    throw ParseError("PCD " + std::string(tokens[0]) + " is not a count", line);
  }
  return *value;
}

struct FieldLayout
{
  std::size_t stride = 0;      // bytes per binary record
  std::size_t columns = 0;     // values per ascii line
  std::size_t offset[3] = {};  // byte offsets of x, y, z
  std::size_t column[3] = {};  // ascii columns of x, y, z
};

FieldLayout layout_of(const PcdHeader & h)
{
  FieldLayout layout;
  bool found[3] = {false, false, false};
  for (std::size_t i = 0; i < h.fields.size(); ++i) {
    const auto & name = h.fields[i];
    const int axis = name == "x" ? 0 : name == "y" ? 1 : name == "z" ? 2 : -1;
    if (axis >= 0) {
      if (h.types[i] != 'F' || h.sizes[i] != 4 || h.counts[i] != 1) {
        throw Error(ErrorKind::unsupported_format,
                    "PCD field '" + name + "' must be TYPE F SIZE 4 COUNT 1");
      }
      found[axis] = true;
      layout.offset[axis] = layout.stride;
      layout.column[axis] = layout.columns;
    }
    layout.stride += static_cast<std::size_t>(h.sizes[i]) * static_cast<std::size_t>(h.counts[i]);
    layout.columns += static_cast<std::size_t>(h.counts[i]);
  }
  if (!found[0] || !found[1] || !found[2]) {
    throw Error(ErrorKind::unsupported_format, "PCD file lacks x, y and z fields");
  }
  return layout;
}

float finite_or_throw(float v, std::uint64_t index)
{
  if (!std::isfinite(v)) {
    corrupt("point " + std::to_string(index) + " has a non-finite coordinate");
  }
  return v;
}
}  // namespace

bool bit_identical(const PointCloud & a, const PointCloud & b)
{
  if (a.points.size() != b.points.size() || !(a.viewpoint == b.viewpoint) || a.rgb != b.rgb) {
    return false;
  }
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    const auto & p = a.points[i];
    const auto & q = b.points[i];
    if (std::bit_cast<std::uint32_t>(p.x) != std::bit_cast<std::uint32_t>(q.x) ||
        std::bit_cast<std::uint32_t>(p.y) != std::bit_cast<std::uint32_t>(q.y) ||
        std::bit_cast<std::uint32_t>(p.z) != std::bit_cast<std::uint32_t>(q.z)) {
      return false;
    }
  }
  return true;
}

const char * to_string(PcdDataMode mode) { return mode == PcdDataMode::ascii ? "ascii" : "binary"; }

std::optional<PcdDataMode> pcd_data_mode_from_string(std::string_view s)
{
  if (s == "ascii") {
    return PcdDataMode::ascii;
  }
  if (s == "binary") {
    return PcdDataMode::binary;
  }
  return std::nullopt;
}

void write_pcd(const PointCloud & cloud, PcdDataMode mode, std::ostream & out)
{
  const bool color = cloud.has_color();
  if (color && cloud.rgb.size() != cloud.points.size()) {
    throw Error(ErrorKind::invalid_argument, "colour count does not match point count");
  }
  const auto & vp = cloud.viewpoint;
  const std::size_t n = cloud.points.size();
  std::string buf;
  buf += "# .PCD v0.7 - Point Cloud Data file format\n";
  buf += "VERSION 0.7\n";
  buf += color ? "FIELDS x y z rgb\n" : "FIELDS x y z\n";
  buf += color ? "SIZE 4 4 4 4\n" : "SIZE 4 4 4\n";
  buf += color ? "TYPE F F F U\n" : "TYPE F F F\n";
  buf += color ? "COUNT 1 1 1 1\n" : "COUNT 1 1 1\n";
  buf += "WIDTH " + std::to_string(n) + "\n";
  buf += "HEIGHT 1\n";
  buf += "VIEWPOINT";
  for (const double v : {vp.tx, vp.ty, vp.tz, vp.qw, vp.qx, vp.qy, vp.qz}) {
    buf += ' ';
    buf += text::format_shortest(v);
  }
  buf += "\nPOINTS " + std::to_string(n) + "\n";
  buf += mode == PcdDataMode::ascii ? "DATA ascii\n" : "DATA binary\n";

  if (mode == PcdDataMode::ascii) {
    buf.reserve(buf.size() + n * 32);
    for (std::size_t i = 0; i < n; ++i) {
      const auto & p = cloud.points[i];
      buf += text::format_shortest(p.x);
      buf += ' ';
      buf += text::format_shortest(p.y);
      buf += ' ';
      buf += text::format_shortest(p.z);
      if (color) {
        buf += ' ';
        buf += std::to_string(cloud.rgb[i]);
      }
      buf += '\n';
    }
  } else {
    buf.reserve(buf.size() + n * (color ? 16 : 12));
    for (std::size_t i = 0; i < n; ++i) {
      const auto & p = cloud.points[i];
      put_u32_le(buf, std::bit_cast<std::uint32_t>(p.x));
      put_u32_le(buf, std::bit_cast<std::uint32_t>(p.y));
      put_u32_le(buf, std::bit_cast<std::uint32_t>(p.z));
      if (color) {
        put_u32_le(buf, cloud.rgb[i]);
      }
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) {
    throw Error(ErrorKind::io, "failed writing PCD data");
  }
}

void save_pcd(const PointCloud & cloud, PcdDataMode mode, const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::io, "cannot write " + path.string());
  }
  write_pcd(cloud, mode, out);
  out.flush();
  if (!out) {
    throw Error(ErrorKind::io, "write failed for " + path.string());
  }
}

PointCloud read_pcd(std::istream & in, PcdHeader * header_out)
{
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorKind::io, "failed reading PCD stream");
  }

  PcdHeader h;
  PointCloud cloud;
  bool have_points = false;
  bool have_width = false;
  bool have_counts = false;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (true) {
    if (pos >= content.size()) {
      throw ParseError("PCD header ended without a DATA line", line_no);
    }
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string::npos) {
      eol = content.size();
    }
    const std::string_view line(content.data() + pos, eol - pos);
    pos = std::min(content.size(), eol + 1);
    ++line_no;
    const auto tokens = text::split_whitespace(line);
    if (tokens.empty() || tokens[0].front() == '#') {
      continue;
    }
    const std::string_view key = tokens[0];
    if (key == "VERSION") {
      h.version = tokens.size() > 1 ? std::string(tokens[1]) : "";
    } else if (key == "FIELDS") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        h.fields.emplace_back(tokens[i]);
      }
    } else if (key == "SIZE" || key == "COUNT") {
      auto & target = key == "SIZE" ? h.sizes : h.counts;
      target.clear();
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto v = text::parse_int64(tokens[i]);
        if (!v || *v <= 0 || *v > 8192) {
          throw ParseError("PCD " + std::string(key) + " has an invalid entry", line_no);
        }
        target.push_back(static_cast<int>(*v));
      }
      have_counts = have_counts || key == "COUNT";
    } else if (key == "TYPE") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i].size() != 1 || std::string_view("FIU").find(tokens[i][0]) ==
                                       std::string_view::npos) {
          throw ParseError("PCD TYPE entries must be F, I or U", line_no);
        }
        h.types.push_back(tokens[i][0]);
      }
    } else if (key == "WIDTH") {
      h.width = header_count(tokens, line_no);
      have_width = true;
    } else if (key == "HEIGHT") {
      h.height = header_count(tokens, line_no);
    } else if (key == "POINTS") {
      h.points = header_count(tokens, line_no);
      have_points = true;
    } else if (key == "VIEWPOINT") {
      if (tokens.size() != 8) {
        throw ParseError("PCD VIEWPOINT expects 7 values", line_no);
      }
      double v[7];
      for (std::size_t i = 0; i < 7; ++i) {
        const auto parsed = text::parse_double(tokens[i + 1]);
        if (!parsed) {
          throw ParseError("PCD VIEWPOINT has a non-numeric value", line_no);
        }
        v[i] = *parsed;
      }
      cloud.viewpoint = {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
    } else if (key == "DATA") {
      if (tokens.size() != 2) {
        throw ParseError("PCD DATA expects one value", line_no);
      }
      h.data = std::string(tokens[1]);
      break;
    } else {
      spdlog::warn("PCD header line {}: ignoring unknown key '{}'", line_no, key);
    }
  }

  if (!have_counts) {
    h.counts.assign(h.fields.size(), 1);
  }
  if (h.fields.empty() || h.sizes.size() != h.fields.size() ||
      h.types.size() != h.fields.size() || h.counts.size() != h.fields.size()) {
    throw ParseError("PCD FIELDS/SIZE/TYPE/COUNT lengths disagree", line_no);
  }
  if (!have_width) {
    throw ParseError("PCD header lacks WIDTH", line_no);
  }
  if (!have_points) {
    h.points = h.width * h.height;
  } else if (h.points != h.width * h.height) {
    throw ParseError("PCD POINTS does not equal WIDTH * HEIGHT", line_no);
  }
  const auto mode = pcd_data_mode_from_string(h.data);
  if (!mode) {
    throw Error(ErrorKind::unsupported_format, "PCD DATA mode '" + h.data + "' is not supported");
  }
  const FieldLayout layout = layout_of(h);
  for (const auto & f : h.fields) {
    if (f != "x" && f != "y" && f != "z") {
      h.skipped_fields.push_back(f);
    }
  }
  if (!h.skipped_fields.empty()) {
    std::string names;
    for (const auto & f : h.skipped_fields) {
      names += names.empty() ? f : " " + f;
    }
    spdlog::warn("PCD: skipping fields beyond x/y/z: {}", names);
  }

  const std::uint64_t n = h.points;
  cloud.points.reserve(n);
  if (*mode == PcdDataMode::binary) {
    const std::size_t available = content.size() - pos;
    const std::uint64_t expected = n * layout.stride;
    if (available != expected) {
      corrupt("expected " + std::to_string(expected) + " data bytes for " + std::to_string(n) +
              " points, found " + std::to_string(available));
    }
    const char * base = content.data() + pos;
    for (std::uint64_t i = 0; i < n; ++i) {
      const char * rec = base + i * layout.stride;
      cloud.points.push_back(
        {finite_or_throw(std::bit_cast<float>(get_u32_le(rec + layout.offset[0])), i),
         finite_or_throw(std::bit_cast<float>(get_u32_le(rec + layout.offset[1])), i),
         finite_or_throw(std::bit_cast<float>(get_u32_le(rec + layout.offset[2])), i)});
    }
  } else {
    std::uint64_t lines = 0;
    while (pos < content.size()) {
      std::size_t eol = content.find('\n', pos);
      if (eol == std::string::npos) {
        eol = content.size();
      }
      const std::string_view line(content.data() + pos, eol - pos);
      pos = eol + 1;
      ++line_no;
      const auto tokens = text::split_whitespace(line);
      if (tokens.empty()) {
        continue;
      }
      ++lines;
      if (lines > n) {
        continue;  // counted for the mismatch report below
      }
      if (tokens.size() != layout.columns) {
        corrupt("line " + std::to_string(line_no) + " has " + std::to_string(tokens.size()) +
                " values, expected " + std::to_string(layout.columns));
      }
      float xyz[3];
      for (std::size_t a = 0; a < 3; ++a) {
        const auto v = text::parse_float(tokens[layout.column[a]]);
        if (!v) {
          corrupt("line " + std::to_string(line_no) + " has a non-numeric coordinate");
        }
        xyz[a] = finite_or_throw(*v, lines - 1);
      }
      cloud.points.push_back({xyz[0], xyz[1], xyz[2]});
    }
    if (lines != n) {
      corrupt("expected " + std::to_string(n) + " data lines, found " + std::to_string(lines));
    }
  }
  if (header_out != nullptr) {
    *header_out = std::move(h);
  }
  return cloud;
}

PointCloud load_pcd(const std::filesystem::path & path, PcdHeader * header)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open " + path.string());
  }
  return read_pcd(in, header);
}

void convert_pcd(const std::filesystem::path & input, const std::filesystem::path & output,
                 PcdDataMode mode)
{
  const PointCloud cloud = load_pcd(input);
  save_pcd(cloud, mode, output);
}

}  // namespace simmap
