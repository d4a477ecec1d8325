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

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <spdlog/spdlog.h>

#include "simmap/config.hpp"
#include "simmap/error.hpp"
#include "simmap/geodesy.hpp"
#include "simmap/geometry.hpp"
#include "simmap/lanelet.hpp"
#include "simmap/meshgen.hpp"
#include "simmap/osm.hpp"
#include "simmap/pcd.hpp"
#include "simmap/pipeline.hpp"
#include "simmap/sampler.hpp"
#include "simmap/version.hpp"

namespace py = pybind11;
namespace fs = std::filesystem;

namespace
{

using XY = std::pair<double, double>;

py::object to_python(const nlohmann::json & j)
{
  return py::module_::import("json").attr("loads")(j.dump());
}

simmap::PipelineConfig config_from_json(const std::string & json_text)
{
  return json_text.empty() ? simmap::PipelineConfig{} : simmap::parse_config(json_text);
}

std::vector<simmap::LocalPoint> to_points(const std::vector<XY> & xy)
{
  std::vector<simmap::LocalPoint> out;
  out.reserve(xy.size());
  for (const auto & [x, y] : xy) {
    out.push_back({x, y});
  }
  return out;
}

std::vector<XY> from_points(const std::vector<simmap::LocalPoint> & pts)
{
  std::vector<XY> out;
  out.reserve(pts.size());
  for (const auto & p : pts) {
    out.emplace_back(p.x, p.y);
  }
  return out;
}

simmap::PcdDataMode data_mode(const std::string & s)
{
  const auto mode = simmap::pcd_data_mode_from_string(s);
  if (!mode) {
    throw std::invalid_argument("unknown PCD data mode '" + s + "'");
  }
  return *mode;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "simmap core: OSM extract to Autoware/AWSIM map package";
  m.attr("__version__") = simmap::kVersion;

  py::register_exception<simmap::Error>(m, "SimmapError", PyExc_RuntimeError);

  m.def("set_log_level", [](const std::string & level) {
    spdlog::set_level(spdlog::level::from_str(level));
  }, py::arg("level"), "trace|debug|info|warn|error|off");

  py::class_<simmap::Projection>(m, "Projection")
    .def(py::init([](double lat, double lon, double radius) {
      return simmap::Projection(simmap::GeoPoint{lat, lon}, radius);
    }), py::arg("lat"), py::arg("lon"), py::arg("earth_radius") = simmap::kEarthRadius)
    .def("project", [](const simmap::Projection & p, double lat, double lon) {
      const auto local = p.project({lat, lon});
      return XY{local.x, local.y};
    }, py::arg("lat"), py::arg("lon"))
    .def("unproject", [](const simmap::Projection & p, double x, double y) {
      const auto geo = p.unproject({x, y});
      return XY{geo.lat, geo.lon};
    }, py::arg("x"), py::arg("y"));

  m.def("signed_area", [](const std::vector<XY> & ring) {
    const auto pts = to_points(ring);
    return simmap::geometry::signed_area(pts);
  }, py::arg("ring"), "Shoelace area, positive for counter-clockwise rings.");

  m.def("triangulate_polygon", [](const std::vector<XY> & ring, std::int64_t feature_id) {
    const auto pts = to_points(ring);
    return simmap::geometry::triangulate_polygon(pts, feature_id);
  }, py::arg("ring"), py::arg("feature_id") = 0,
     "Ear-clipping triangulation of a simple polygon; returns index triples.");

  m.def("buffer_polyline", [](const std::vector<XY> & line, double width) {
    const auto pts = to_points(line);
    return from_points(simmap::geometry::buffer_polyline(pts, width));
  }, py::arg("line"), py::arg("width"), "Mitered road ribbon polygon (CCW).");

  m.def("default_config", [] { return to_python(simmap::to_json(simmap::PipelineConfig{})); });

  m.def("load_config", [](std::optional<fs::path> path) {
    return to_python(simmap::to_json(simmap::load_config(path)));
  }, py::arg("path") = py::none());

  m.def("_parse_config", [](const std::string & text) {
    return to_python(simmap::to_json(simmap::parse_config(text)));
  }, py::arg("json_text"));

  m.def("_run_pipeline",
    [](const fs::path & input, const fs::path & out_dir, const std::string & config_json,
       std::optional<fs::path> lanelet_in, bool force, bool lenient) {
      auto cfg = config_from_json(config_json);
      cfg.output_dir = out_dir;
      simmap::RunOptions options{lanelet_in, force, lenient};
      simmap::MapPackage package;
      {
        py::gil_scoped_release release;
        package = simmap::run_pipeline(input, cfg, options);
      }
      return to_python(package.manifest);
    },
    py::arg("input"), py::arg("out_dir"), py::arg("config_json") = "",
    py::arg("lanelet_in") = py::none(), py::arg("force") = false, py::arg("lenient") = false);

  m.def("verify_package", [](const fs::path & dir) {
    return simmap::verify_package(dir).problems;
  }, py::arg("dir"), "Problems found in a map package (empty when valid).");

  m.def("_build_mesh",
    [](const fs::path & osm, const fs::path & obj, const fs::path & mtl, const std::string & config_json) {
      const auto cfg = config_from_json(config_json);
      const auto doc = simmap::load_osm(osm.string());
      const auto features = simmap::classify_features(doc, simmap::make_projection(doc.bounds()), cfg);
      const auto mesh = simmap::build_mesh(features, cfg);
      simmap::write_obj(mesh, obj, mtl);
      py::dict out;
      out["triangles"] = mesh.triangles.size();
      out["vertices"] = mesh.vertices.size();
      out["area"] = mesh.total_area();
      return out;
    },
    py::arg("osm"), py::arg("obj"), py::arg("mtl"), py::arg("config_json") = "");

  m.def("sample_obj",
    [](const fs::path & obj, const fs::path & pcd, double density, std::uint64_t seed,
       unsigned threads, const std::string & mode) {
      const auto data = data_mode(mode);
      py::gil_scoped_release release;
      const auto cloud = simmap::sample_mesh(simmap::read_obj(obj), {density, seed}, threads);
      simmap::save_pcd(cloud, data, pcd);
      return cloud.size();
    },
    py::arg("obj"), py::arg("pcd"), py::arg("density") = 40.0, py::arg("seed") = 42,
    py::arg("threads") = 1, py::arg("mode") = "binary",
    "Samples an OBJ surface into a PCD; returns the point count.");

  m.def("transform_pcd",
    [](const fs::path & in, const fs::path & out, const std::string & preset, const std::string & mode) {
      const auto t = simmap::Transform4::preset(preset);
      if (!t) {
        throw std::invalid_argument("unknown preset '" + preset + "'");
      }
      simmap::save_pcd(simmap::apply_transform(simmap::load_pcd(in), *t), data_mode(mode), out);
    },
    py::arg("input"), py::arg("output"), py::arg("preset") = "yup-to-zup", py::arg("mode") = "binary");

  m.def("convert_pcd", [](const fs::path & in, const fs::path & out, const std::string & mode) {
    simmap::convert_pcd(in, out, data_mode(mode));
  }, py::arg("input"), py::arg("output"), py::arg("mode"));

  m.def("read_pcd", [](const fs::path & path) {
    simmap::PcdHeader header;
    const auto cloud = simmap::load_pcd(path, &header);
    std::vector<std::tuple<float, float, float>> pts;
    pts.reserve(cloud.size());
    for (const auto & p : cloud.points) {
      pts.emplace_back(p.x, p.y, p.z);
    }
    py::dict out;
    out["data"] = header.data;
    out["fields"] = header.fields;
    out["points"] = pts;
    return out;
  }, py::arg("path"), "Header summary and xyz tuples of a PCD file.");

  m.def("_lanelet_derive", [](const fs::path & osm, const fs::path & out, const std::string & config_json) {
    const auto cfg = config_from_json(config_json);
    const auto doc = simmap::load_osm(osm.string());
    const auto map = simmap::lanelet::derive_lanelets(doc, simmap::make_projection(doc.bounds()), cfg);
    simmap::lanelet::save_lanelet(map, out.string());
    return map.lanelets.size();
  }, py::arg("osm"), py::arg("output"), py::arg("config_json") = "");

  m.def("lanelet_nullify", [](const fs::path & in, const fs::path & out, const std::string & mode) {
    const auto null_mode = simmap::null_mode_from_string(mode);
    if (!null_mode) {
      throw std::invalid_argument("unknown null mode '" + mode + "'");
    }
    simmap::lanelet::save_lanelet(
      simmap::lanelet::nullify_latlon(simmap::lanelet::load_lanelet(in.string()), *null_mode),
      out.string());
  }, py::arg("input"), py::arg("output"), py::arg("mode") = "zero");

  m.def("lanelet_validate", [](const fs::path & path) {
    return to_python(simmap::lanelet::validate_lanelet(simmap::lanelet::load_lanelet(path.string())).to_json());
  }, py::arg("path"), "Rule R1-R5 report as a dict.");
}
