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

#include <fstream>
#include <sstream>
#include <string>

#include "simmap/error.hpp"
#include "simmap/meshgen.hpp"
#include "simmap/text.hpp"

namespace simmap
{
namespace
{
constexpr int kCoordinateDecimals = 6;

std::ofstream open_out(const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::io, "cannot write " + path.string());
  }
  return out;
}

void check_written(std::ofstream & out, const std::filesystem::path & path)
{
  out.flush();
  if (!out) {
    throw Error(ErrorKind::io, "write failed for " + path.string());
  }
}

std::vector<Material> read_mtl(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open material library " + path.string());
  }
  std::vector<Material> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = text::split_whitespace(line);
    if (tokens.empty() || tokens[0].front() == '#') {
      continue;
    }
    if (tokens[0] == "newmtl" && tokens.size() >= 2) {
      out.push_back({std::string(tokens[1]), {0.5, 0.5, 0.5}});
    } else if (tokens[0] == "Kd" && tokens.size() >= 4 && !out.empty()) {
      for (std::size_t k = 0; k < 3; ++k) {
        const auto value = text::parse_double(tokens[k + 1]);
        if (!value) {
          throw ParseError("bad Kd component in " + path.string(), line_no);
        }
        out.back().diffuse_rgb[k] = *value;
      }
    }
  }
  return out;
}
}  // namespace

void write_obj(const TriangleMesh & mesh, const std::filesystem::path & obj_path,
               const std::filesystem::path & mtl_path)
{
  mesh.validate();
  {
    auto mtl = open_out(mtl_path);
    mtl << "# simmap material library\n";
    for (const auto & m : mesh.materials) {
      mtl << "newmtl " << m.name << "\n";
      mtl << "Kd " << text::format_fixed(m.diffuse_rgb[0], kCoordinateDecimals) << ' '
          << text::format_fixed(m.diffuse_rgb[1], kCoordinateDecimals) << ' '
          << text::format_fixed(m.diffuse_rgb[2], kCoordinateDecimals) << "\n";
    }
    check_written(mtl, mtl_path);
  }

  auto obj = open_out(obj_path);
  obj << "# simmap environment mesh: X east, Y up, Z south, metres\n";
  obj << "mtllib " << mtl_path.filename().string() << "\n";
  for (const auto & v : mesh.vertices) {
    obj << "v " << text::format_fixed(v.x, kCoordinateDecimals) << ' '
        << text::format_fixed(v.y, kCoordinateDecimals) << ' '
        << text::format_fixed(v.z, kCoordinateDecimals) << "\n";
  }
  std::optional<std::uint32_t> current;
  for (const auto & t : mesh.triangles) {
    if (current != t.material) {
      obj << "usemtl " << mesh.materials[t.material].name << "\n";
      current = t.material;
    }
    obj << "f " << t.v[0] + 1 << ' ' << t.v[1] + 1 << ' ' << t.v[2] + 1 << "\n";
  }
  check_written(obj, obj_path);
}

TriangleMesh read_obj(const std::filesystem::path & obj_path)
{
  std::ifstream in(obj_path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open " + obj_path.string());
  }
  TriangleMesh mesh;
  std::vector<Material> library;
  std::optional<std::uint32_t> current;

  auto material_index = [&](const std::string & name) -> std::uint32_t {
    for (std::size_t i = 0; i < mesh.materials.size(); ++i) {
      if (mesh.materials[i].name == name) {
        return static_cast<std::uint32_t>(i);
      }
    }
    Material m{name, {0.5, 0.5, 0.5}};
    for (const auto & candidate : library) {
      if (candidate.name == name) {
        m = candidate;
      }
    }
    mesh.materials.push_back(m);
    return static_cast<std::uint32_t>(mesh.materials.size() - 1);
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = text::split_whitespace(line);
    if (tokens.empty() || tokens[0].front() == '#') {
      continue;
    }
    if (tokens[0] == "v") {
      if (tokens.size() < 4) {
        throw ParseError("vertex needs three coordinates", line_no);
      }
      double xyz[3];
      for (std::size_t k = 0; k < 3; ++k) {
        const auto value = text::parse_double(tokens[k + 1]);
        if (!value) {
          throw ParseError("bad vertex coordinate '" + std::string(tokens[k + 1]) + "'", line_no);
        }
        xyz[k] = *value;
      }
      mesh.vertices.push_back({xyz[0], xyz[1], xyz[2]});
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) {
        throw ParseError("face needs at least three vertices", line_no);
      }
      std::vector<std::uint32_t> face;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        const auto slash = tokens[k].find('/');
        const auto raw = text::parse_int64(tokens[k].substr(0, slash));
        if (!raw || *raw == 0) {
          throw ParseError("bad face index '" + std::string(tokens[k]) + "'", line_no);
        }
        // Negative indices count back from the latest vertex.
        const std::int64_t index =
          *raw > 0 ? *raw - 1 : static_cast<std::int64_t>(mesh.vertices.size()) + *raw;
        if (index < 0 || index >= static_cast<std::int64_t>(mesh.vertices.size())) {
          throw ParseError("face index out of range", line_no);
        }
        face.push_back(static_cast<std::uint32_t>(index));
      }
      if (!current) {
        current = material_index("default");
      }
      for (std::size_t k = 1; k + 1 < face.size(); ++k) {
        mesh.triangles.push_back({{face[0], face[k], face[k + 1]}, *current});
      }
    } else if (tokens[0] == "usemtl" && tokens.size() >= 2) {
      current = material_index(std::string(tokens[1]));
    } else if (tokens[0] == "mtllib" && tokens.size() >= 2) {
      const auto mtl_path = obj_path.parent_path() / std::string(tokens[1]);
      if (std::filesystem::exists(mtl_path)) {
        library = read_mtl(mtl_path);
      }
    }
  }
  return mesh;
}

}  // namespace simmap
