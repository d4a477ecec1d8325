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

// simmap command-line front end. Each subcommand reads and writes files only,
// so any prefix of `run` can be reproduced stage by stage.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "simmap/config.hpp"
#include "simmap/error.hpp"
#include "simmap/geodesy.hpp"
#include "simmap/lanelet.hpp"
#include "simmap/meshgen.hpp"
#include "simmap/osm.hpp"
#include "simmap/pcd.hpp"
#include "simmap/pipeline.hpp"
#include "simmap/sampler.hpp"
#include "simmap/text.hpp"
#include "simmap/version.hpp"

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitStage = 2;
constexpr int kExitValidation = 3;

/// Thrown for bad invocations detected after CLI11 parsing.
struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

simmap::PipelineConfig config_from(const std::string & path)
{
  return simmap::load_config(
    path.empty() ? std::nullopt : std::optional<std::filesystem::path>(path));
}

simmap::GeoBounds parse_bbox(const std::string & spec)
{
  std::vector<double> v;
  std::string item;
  std::stringstream ss(spec);
  while (std::getline(ss, item, ',')) {
    const auto d = simmap::text::parse_double(simmap::text::trim(item));
    if (!d) {
      throw UsageError("invalid --bbox component '" + item + "'");
    }
    v.push_back(*d);
  }
  if (v.size() != 4) {
    throw UsageError("--bbox expects min_lat,min_lon,max_lat,max_lon");
  }
  return simmap::GeoBounds{v[0], v[1], v[2], v[3]};
}

simmap::PcdDataMode data_mode(const std::string & s)
{
  const auto mode = simmap::pcd_data_mode_from_string(s);
  if (!mode) {
    throw UsageError("unknown PCD data mode '" + s + "' (ascii|binary)");
  }
  return *mode;
}

simmap::NullMode null_mode(const std::string & s)
{
  const auto mode = simmap::null_mode_from_string(s);
  if (!mode) {
    throw UsageError("unknown null mode '" + s + "' (zero|remove)");
  }
  return *mode;
}

int report_validation(const simmap::lanelet::ValidationReport & report, bool as_json)
{
  if (as_json) {
    std::cout << report.to_json().dump(2) << '\n';
  } else {
    std::cout << report.to_text();
  }
  return report.ok() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char ** argv)
{
  spdlog::set_default_logger(spdlog::stderr_color_mt("simmap"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"simmap: OSM extract to Autoware/AWSIM map package"};
  app.set_version_flag("--version", std::string(simmap::kVersion));
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off")
    ->capture_default_str();

  std::function<int()> action;

  // run
  auto * run = app.add_subcommand("run", "Full pipeline into an Autoware map package");
  std::string run_in, run_out, run_config, run_lanelet_in;
  bool run_force = false;
  bool run_lenient = false;
  unsigned run_threads = 0;
  run->add_option("--in", run_in, "Input OSM extract")->required()->check(CLI::ExistingFile);
  run->add_option("--out-dir", run_out, "Package directory (overrides config output_dir)");
  run->add_option("--config", run_config, "JSON config file")->check(CLI::ExistingFile);
  run->add_option("--lanelet-in", run_lanelet_in, "Use this Lanelet2 export instead of deriving")
    ->check(CLI::ExistingFile);
  run->add_flag("--force", run_force, "Package even if lanelet validation fails");
  run->add_flag("--lenient", run_lenient, "Drop ways with dangling node refs instead of failing");
  run->add_option("--threads", run_threads, "Sampler workers (0: all cores)");
  run->callback([&] {
    action = [&] {
      auto cfg = config_from(run_config);
      if (!run_out.empty()) {
        cfg.output_dir = run_out;
      }
      if (run_threads != 0) {
        cfg.threads = run_threads;
      }
      simmap::RunOptions options;
      options.force = run_force;
      options.lenient = run_lenient;
      if (!run_lanelet_in.empty()) {
        options.lanelet_in = run_lanelet_in;
      }
      const auto package = simmap::run_pipeline(run_in, cfg, options);
      std::cout << package.dir.string() << '\n';
      return kExitOk;
    };
  });

  // clip
  auto * clip = app.add_subcommand("clip", "Crop an OSM extract to a bounding box");
  std::string clip_in, clip_out, clip_bbox;
  bool clip_lenient = false;
  clip->add_option("--in", clip_in)->required()->check(CLI::ExistingFile);
  clip->add_option("--out", clip_out)->required();
  clip->add_option("--bbox", clip_bbox, "min_lat,min_lon,max_lat,max_lon")->required();
  clip->add_flag("--lenient", clip_lenient, "Drop ways with dangling node refs");
  clip->callback([&] {
    action = [&] {
      const auto box = parse_bbox(clip_bbox);
      const auto clipped = simmap::clip_bbox(simmap::load_osm(clip_in, {clip_lenient}), box);
      std::ofstream out(clip_out, std::ios::binary | std::ios::trunc);
      simmap::write_osm(clipped, out);
      return kExitOk;
    };
  });

  // mesh
  auto * mesh = app.add_subcommand("mesh", "Build the OBJ/MTL environment model");
  std::string mesh_in, mesh_out, mesh_mtl, mesh_config;
  bool mesh_lenient = false;
  mesh->add_option("--in", mesh_in, "Input OSM extract")->required()->check(CLI::ExistingFile);
  mesh->add_option("--out", mesh_out, "Output OBJ")->required();
  mesh->add_option("--mtl", mesh_mtl, "Output MTL (default: OBJ path with .mtl)");
  mesh->add_option("--config", mesh_config)->check(CLI::ExistingFile);
  mesh->add_flag("--lenient", mesh_lenient, "Drop ways with dangling node refs");
  mesh->callback([&] {
    action = [&] {
      const auto cfg = config_from(mesh_config);
      const auto doc = simmap::load_osm(mesh_in, {mesh_lenient});
      const auto projection = simmap::make_projection(doc.bounds());
      simmap::FeatureReport report;
      const auto features = simmap::classify_features(doc, projection, cfg, &report);
      if (features.feature_count() == 0) {
        throw simmap::Error(simmap::ErrorKind::nothing_to_build, "nothing to build: no mappable features");
      }
      for (const auto & s : report.skipped) {
        spdlog::warn("skipped {} {}: {}", s.element, s.id, s.reason);
      }
      const auto m = simmap::build_mesh(features, cfg);
      std::filesystem::path mtl = mesh_mtl.empty()
                                    ? std::filesystem::path(mesh_out).replace_extension(".mtl")
                                    : std::filesystem::path(mesh_mtl);
      simmap::write_obj(m, mesh_out, mtl);
      spdlog::info("{} triangles, area {:.3f} m^2", m.triangles.size(), m.total_area());
      return kExitOk;
    };
  });

  // sample
  auto * sample = app.add_subcommand("sample", "Sample a point cloud from an OBJ surface");
  std::string sample_in, sample_out, sample_config, sample_mode = "binary";
  std::optional<double> sample_density;
  std::optional<std::uint64_t> sample_seed;
  unsigned sample_threads = 0;
  bool sample_color = false;
  sample->add_option("--in", sample_in, "Input OBJ")->required()->check(CLI::ExistingFile);
  sample->add_option("--out", sample_out, "Output PCD")->required();
  sample->add_option("--config", sample_config)->check(CLI::ExistingFile);
  sample->add_option("--density", sample_density, "Points per square metre");
  sample->add_option("--seed", sample_seed);
  sample->add_option("--threads", sample_threads);
  sample->add_option("--format,--mode", sample_mode, "ascii|binary")->capture_default_str();
  sample->add_flag("--color", sample_color, "Add packed rgb from material colours");
  sample->callback([&] {
    action = [&] {
      auto cfg = config_from(sample_config);
      simmap::SamplingSpec spec{sample_density.value_or(cfg.density), sample_seed.value_or(cfg.seed)};
      const unsigned threads = sample_threads != 0 ? sample_threads : cfg.threads;
      const auto cloud = simmap::sample_mesh(
        simmap::read_obj(sample_in), spec, threads, sample_color || cfg.emit_color);
      simmap::save_pcd(cloud, data_mode(sample_mode), sample_out);
      spdlog::info("{} points", cloud.size());
      return kExitOk;
    };
  });

  // transform
  auto * transform = app.add_subcommand("transform", "Apply a rigid preset to a PCD");
  std::string tr_in, tr_out, tr_preset = "yup-to-zup", tr_mode = "binary";
  std::vector<double> tr_matrix;
  unsigned tr_threads = 0;
  transform->add_option("--in", tr_in)->required()->check(CLI::ExistingFile);
  transform->add_option("--out", tr_out)->required();
  auto * preset_opt =
    transform->add_option("--preset", tr_preset, "identity|yup-to-zup")->capture_default_str();
  transform->add_option("--matrix", tr_matrix, "16 numbers m00..m33, row-major")
    ->expected(16)
    ->excludes(preset_opt);
  transform->add_option("--format,--mode", tr_mode, "ascii|binary")->capture_default_str();
  transform->add_option("--threads", tr_threads);
  transform->callback([&] {
    action = [&] {
      std::optional<simmap::Transform4> t;
      if (!tr_matrix.empty()) {
        t.emplace();
        std::copy(tr_matrix.begin(), tr_matrix.end(), t->m.begin());
        if (!t->is_affine()) {
          throw UsageError("--matrix: last row must be 0 0 0 1");
        }
      } else {
        t = simmap::Transform4::preset(tr_preset);
      }
      if (!t) {
        throw UsageError("unknown preset '" + tr_preset + "'");
      }
      const auto mode = data_mode(tr_mode);
      simmap::save_pcd(simmap::apply_transform(simmap::load_pcd(tr_in), *t, tr_threads), mode, tr_out);
      return kExitOk;
    };
  });

  // convert
  auto * convert = app.add_subcommand("convert", "Re-encode a PCD as ascii or binary");
  std::string cv_in, cv_out, cv_mode;
  convert->add_option("--in", cv_in)->required()->check(CLI::ExistingFile);
  convert->add_option("--out", cv_out)->required();
  convert->add_option("--format,--mode", cv_mode, "ascii|binary")->required();
  convert->callback([&] {
    action = [&] {
      simmap::convert_pcd(cv_in, cv_out, data_mode(cv_mode));
      return kExitOk;
    };
  });

  // lanelet
  auto * lanelet = app.add_subcommand("lanelet", "Lanelet2 map operations");
  lanelet->require_subcommand(1);

  auto * derive = lanelet->add_subcommand("derive", "Derive lanelets from OSM highways");
  std::string dv_in, dv_out, dv_config;
  bool dv_lenient = false;
  derive->add_option("--in", dv_in)->required()->check(CLI::ExistingFile);
  derive->add_option("--out", dv_out)->required();
  derive->add_option("--config", dv_config)->check(CLI::ExistingFile);
  derive->add_flag("--lenient", dv_lenient, "Drop ways with dangling node refs");
  derive->callback([&] {
    action = [&] {
      const auto cfg = config_from(dv_config);
      const auto doc = simmap::load_osm(dv_in, {dv_lenient});
      const auto map = simmap::lanelet::derive_lanelets(doc, simmap::make_projection(doc.bounds()), cfg);
      simmap::lanelet::save_lanelet(map, dv_out);
      spdlog::info("{} lanelets, {} points", map.lanelets.size(), map.points.size());
      return kExitOk;
    };
  });

  auto * nullify = lanelet->add_subcommand("nullify", "Zero or remove lat/lon attributes");
  std::string nl_in, nl_out, nl_mode = "zero";
  nullify->add_option("--in", nl_in)->required()->check(CLI::ExistingFile);
  nullify->add_option("--out", nl_out)->required();
  nullify->add_option("--mode", nl_mode, "zero|remove")->capture_default_str();
  nullify->callback([&] {
    action = [&] {
      const auto mode = null_mode(nl_mode);
      simmap::lanelet::save_lanelet(
        simmap::lanelet::nullify_latlon(simmap::lanelet::load_lanelet(nl_in), mode), nl_out);
      return kExitOk;
    };
  });

  auto * validate = lanelet->add_subcommand("validate", "Check rules R1-R5");
  std::string vl_in;
  bool vl_json = false;
  validate->add_option("--in", vl_in)->required()->check(CLI::ExistingFile);
  validate->add_flag("--json", vl_json, "Print the report as JSON");
  validate->callback([&] {
    action = [&] {
      return report_validation(
        simmap::lanelet::validate_lanelet(simmap::lanelet::load_lanelet(vl_in)), vl_json);
    };
  });

  auto * ingest = lanelet->add_subcommand("ingest", "Read an external Lanelet2 export");
  std::string ig_in, ig_out;
  ingest->add_option("--in", ig_in)->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", ig_out)->required();
  ingest->callback([&] {
    action = [&] {
      simmap::lanelet::IngestReport report;
      const auto map = simmap::lanelet::load_lanelet(ig_in, &report);
      for (const auto id : report.unvalidated_relations) {
        spdlog::info("relation {} kept as-is (not validated)", id);
      }
      simmap::lanelet::save_lanelet(map, ig_out);
      return kExitOk;
    };
  });

  // package
  auto * package = app.add_subcommand("package", "Assemble stage outputs into a map package");
  std::string pk_obj, pk_mtl, pk_cloud, pk_lanelet, pk_out;
  package->add_option("--obj", pk_obj)->required()->check(CLI::ExistingFile);
  package->add_option("--mtl", pk_mtl)->required()->check(CLI::ExistingFile);
  package->add_option("--cloud", pk_cloud)->required()->check(CLI::ExistingFile);
  package->add_option("--lanelet", pk_lanelet)->required()->check(CLI::ExistingFile);
  package->add_option("--out-dir", pk_out)->required();
  package->callback([&] {
    action = [&] {
      simmap::PipelineConfig cfg;
      cfg.output_dir = pk_out;
      nlohmann::json manifest = {
        {"schema_version", simmap::kManifestSchemaVersion},
        {"tool", {{"name", "simmap"}, {"version", simmap::kVersion}}},
        {"stages", nlohmann::json::array({{{"name", "package"}}})},
      };
      const auto result = simmap::package_map({pk_obj, pk_mtl, pk_cloud, pk_lanelet}, cfg, manifest);
      std::cout << result.dir.string() << '\n';
      return kExitOk;
    };
  });

  // verify
  auto * verify = app.add_subcommand("verify", "Self-check a map package");
  std::string vf_dir;
  verify->add_option("dir", vf_dir, "Package directory")->required();
  verify->callback([&] {
    action = [&] {
      const auto report = simmap::verify_package(vf_dir);
      for (const auto & p : report.problems) {
        std::cout << "FAIL " << p << '\n';
      }
      std::cout << (report.ok() ? "OK " : "INVALID ") << vf_dir << '\n';
      return report.ok() ? kExitOk : kExitValidation;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  spdlog::set_level(spdlog::level::from_str(log_level));

  try {
    return action();
  } catch (const UsageError & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const simmap::Error & e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.kind() == simmap::ErrorKind::config) {
      return kExitUsage;
    }
    return e.kind() == simmap::ErrorKind::validation ? kExitValidation : kExitStage;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitStage;
  }
}
