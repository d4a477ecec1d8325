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

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <string>
#include <utility>

#include <spdlog/spdlog.h>
#include <unistd.h>

#include "simmap/digest.hpp"
#include "simmap/geodesy.hpp"
#include "simmap/lanelet.hpp"
#include "simmap/meshgen.hpp"
#include "simmap/osm.hpp"
#include "simmap/pcd.hpp"
#include "simmap/pipeline.hpp"
#include "simmap/sampler.hpp"
#include "simmap/version.hpp"

namespace fs = std::filesystem;

namespace simmap
{

StageError::StageError(std::string stage, ErrorKind cause, const std::string & message)
: Error(cause, "stage '" + stage + "' failed: " + message), stage_(std::move(stage))
{
}

namespace
{

/// Scratch directory removed on scope exit.
class WorkDir
{
public:
  WorkDir()
  {
    static std::atomic<unsigned> counter{0};
    const auto base = fs::temp_directory_path();
    for (;;) {
      path_ = base / ("simmap-work-" + std::to_string(::getpid()) + "-" +
                      std::to_string(counter.fetch_add(1)));
      if (fs::create_directory(path_)) {
        break;
      }
    }
  }
  ~WorkDir()
  {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  WorkDir(const WorkDir &) = delete;
  WorkDir & operator=(const WorkDir &) = delete;

  const fs::path & path() const { return path_; }

private:
  fs::path path_;
};

template <typename Fn>
decltype(auto) run_stage(const char * name, Fn && fn)
{
  spdlog::debug("stage {}", name);
  try {
    return fn();
  } catch (const StageError &) {
    throw;
  } catch (const Error & e) {
    throw StageError(name, e.kind(), e.what());
  } catch (const fs::filesystem_error & e) {
    throw StageError(name, ErrorKind::io, e.what());
  } catch (const std::invalid_argument & e) {
    throw StageError(name, ErrorKind::invalid_argument, e.what());
  }
}

std::string timestamp_utc()
{
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char * epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  ::gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json file_digests(std::initializer_list<fs::path> paths)
{
  nlohmann::json out = nlohmann::json::object();
  for (const auto & p : paths) {
    out[p.filename().string()] = sha256_file(p);
  }
  return out;
}

fs::path normalized_target(const fs::path & dir)
{
  fs::path target = dir.lexically_normal();
  if (!target.has_filename()) {
    target = target.parent_path();
  }
  if (target.empty()) {
    throw Error(ErrorKind::packaging, "empty output directory");
  }
  return target;
}

}  // namespace

MapPackage run_pipeline(
  const fs::path & input_osm, const PipelineConfig & cfg, const RunOptions & options)
{
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();
  WorkDir work;
  const StageOutputs stages{
    work.path() / "model.obj", work.path() / "model.mtl", work.path() / "cloud_t.pcd",
    work.path() / "lanelet.osm"};

  nlohmann::json manifest;
  manifest["schema_version"] = kManifestSchemaVersion;
  manifest["tool"] = {{"name", "simmap"}, {"version", kVersion}};
  manifest["created_at"] = timestamp_utc();
  // Where the package goes and how many workers built it do not change its
  // bytes, so neither belongs in the snapshot.
  nlohmann::json snapshot = to_json(cfg);
  snapshot.erase("output_dir");
  snapshot.erase("threads");
  manifest["config"] = snapshot;
  nlohmann::json stage_log = nlohmann::json::array();

  const OsmDocument doc = run_stage(
    "parse", [&] { return load_osm(input_osm.string(), OsmParseOptions{options.lenient}); });
  manifest["input"] = {
    {"file", input_osm.filename().string()},
    {"sha256", sha256_file(input_osm)},
    {"nodes", doc.nodes().size()},
    {"ways", doc.ways().size()},
    {"relations", doc.relations().size()},
    {"lenient", options.lenient},
    {"dropped_ways", doc.dropped_ways()},
  };
  stage_log.push_back({{"name", "parse"}});

  const Projection projection = run_stage("project", [&] { return make_projection(doc.bounds()); });
  manifest["projection"] = {
    {"method", "local_equirectangular"},
    {"origin", {{"lat", projection.origin().lat}, {"lon", projection.origin().lon}}},
    {"earth_radius", projection.earth_radius()},
    {"frame", "x east, y north, metres"},
  };
  stage_log.push_back({{"name", "project"}});

  FeatureReport feature_report;
  const FeatureSet features = run_stage(
    "classify", [&] { return classify_features(doc, projection, cfg, &feature_report); });
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto & s : feature_report.skipped) {
    skipped.push_back({{"element", s.element}, {"id", s.id}, {"reason", s.reason}});
  }
  manifest["features"] = {
    {"roads", features.roads.size()},
    {"buildings", features.buildings.size()},
    {"parking_surfaces", features.parking_surfaces.size()},
    {"ground", features.ground.has_value()},
    {"unrecognized", feature_report.unrecognized},
    {"outer_ring_only", feature_report.outer_ring_only},
  };
  manifest["skipped"] = skipped;
  stage_log.push_back({{"name", "classify"}});

  const TriangleMesh mesh = run_stage("mesh", [&] {
    if (features.feature_count() == 0) {
      throw Error(
        ErrorKind::nothing_to_build,
        "nothing to build: no mappable features in " + input_osm.filename().string());
    }
    return build_mesh(features, cfg);
  });
  stage_log.push_back({{"name", "mesh"}});

  run_stage("write_obj", [&] { write_obj(mesh, stages.obj, stages.mtl); });
  stage_log.push_back({{"name", "write_obj"}, {"outputs", file_digests({stages.obj, stages.mtl})}});

  // Sampling reads the OBJ back so that `run` and the `sample` subcommand
  // see the same (serialized) mesh.
  TriangleMesh written;
  PointCloud cloud = run_stage("sample", [&] {
    written = read_obj(stages.obj);
    return sample_mesh(written, SamplingSpec{cfg.density, cfg.seed}, cfg.threads, cfg.emit_color);
  });
  manifest["mesh"] = {
    {"vertices", written.vertices.size()},
    {"triangles", written.triangles.size()},
    {"materials", written.materials.size()},
    {"area", written.total_area()},
  };
  stage_log.push_back({{"name", "sample"}, {"points", cloud.size()}});

  const Transform4 orient = Transform4::yup_to_zup();
  cloud = run_stage("transform", [&] { return apply_transform(cloud, orient, cfg.threads); });
  manifest["transform"] = {
    {"preset", "yup-to-zup"},
    {"matrix", orient.m},
  };
  stage_log.push_back({{"name", "transform"}});

  run_stage("write_pcd", [&] { save_pcd(cloud, PcdDataMode::binary, stages.cloud); });
  manifest["cloud"] = {
    {"points", cloud.size()},
    {"data", "binary"},
    {"color", cloud.has_color()},
  };
  stage_log.push_back({{"name", "write_pcd"}, {"outputs", file_digests({stages.cloud})}});

  nlohmann::json lanelet_info;
  lanelet::LaneletMap map;
  if (options.lanelet_in) {
    lanelet::IngestReport ingest_report;
    map = run_stage("ingest", [&] {
      return lanelet::load_lanelet(options.lanelet_in->string(), &ingest_report);
    });
    lanelet_info["source"] = "ingested";
    lanelet_info["input"] = {
      {"file", options.lanelet_in->filename().string()},
      {"sha256", sha256_file(*options.lanelet_in)},
    };
    lanelet_info["unvalidated_relations"] = ingest_report.unvalidated_relations;
    stage_log.push_back({{"name", "ingest"}});
  } else {
    lanelet::DeriveReport derive_report;
    map = run_stage(
      "derive", [&] { return lanelet::derive_lanelets(doc, projection, cfg, &derive_report); });
    lanelet_info["source"] = "derived";
    lanelet_info["skipped_ways"] = derive_report.skipped_ways;
    stage_log.push_back({{"name", "derive"}});
  }

  map = run_stage("nullify", [&] {
    auto nulled = lanelet::nullify_latlon(map, cfg.null_mode);
    lanelet::save_lanelet(nulled, stages.lanelet.string());
    return nulled;
  });
  lanelet_info["null_mode"] = to_string(cfg.null_mode);
  lanelet_info["points"] = map.points.size();
  lanelet_info["linestrings"] = map.linestrings.size();
  lanelet_info["lanelets"] = map.lanelets.size();
  lanelet_info["parking_lots"] = map.parking_lots().size();
  lanelet_info["parking_spaces"] = map.parking_spaces().size();
  stage_log.push_back({{"name", "nullify"}, {"outputs", file_digests({stages.lanelet})}});

  const auto report = run_stage("validate", [&] { return lanelet::validate_lanelet(map); });
  lanelet_info["validation"] = report.to_json()["counts"];
  lanelet_info["forced"] = options.force && !report.ok();
  manifest["lanelet"] = lanelet_info;
  if (!report.ok()) {
    if (!options.force) {
      throw StageError("validate", ErrorKind::validation, report.to_text());
    }
    spdlog::warn("packaging despite {} lanelet violation(s) (--force)", report.violations.size());
  }
  stage_log.push_back({{"name", "validate"}, {"violations", report.violations.size()}});

  stage_log.push_back({{"name", "package"}});
  manifest["stages"] = stage_log;
  MapPackage package = run_stage("package", [&] { return package_map(stages, cfg, manifest); });

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  spdlog::info("package written to {} in {:.2f} s", package.dir.string(), elapsed.count());
  return package;
}

MapPackage package_map(const StageOutputs & stages, const PipelineConfig & cfg, nlohmann::json manifest)
{
  const std::pair<const fs::path *, const char *> layout[] = {
    {&stages.cloud, kPointCloudName},
    {&stages.lanelet, kLaneletName},
    {&stages.obj, kModelObjName},
    {&stages.mtl, kModelMtlName},
  };
  for (const auto & [src, name] : layout) {
    if (src->empty() || !fs::is_regular_file(*src)) {
      throw Error(
        ErrorKind::packaging,
        "missing stage output for " + std::string(name) + ": " + src->string());
    }
  }

  const fs::path target = normalized_target(cfg.output_dir);
  if (fs::exists(target)) {
    if (!fs::is_directory(target)) {
      throw Error(ErrorKind::packaging, target.string() + " exists and is not a directory");
    }
    if (!fs::is_empty(target) && !fs::exists(target / kManifestName)) {
      throw Error(
        ErrorKind::packaging,
        "refusing to replace non-empty directory without a manifest: " + target.string());
    }
  }
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  const fs::path partial = target.parent_path() / ("." + target.filename().string() + ".partial");

  try {
    fs::remove_all(partial);
    fs::create_directories(partial / "model");
    nlohmann::json files = nlohmann::json::object();
    for (const auto & [src, name] : layout) {
      fs::copy_file(*src, partial / name, fs::copy_options::overwrite_existing);
      files[name] = sha256_file(partial / name);
    }
    manifest["package"] = {{"files", files}};
    {
      std::ofstream out(partial / kManifestName, std::ios::binary | std::ios::trunc);
      out << manifest.dump(2) << '\n';
      if (!out.flush()) {
        throw Error(ErrorKind::io, "cannot write manifest");
      }
    }
    if (fs::exists(target)) {
      fs::remove_all(target);
    }
    fs::rename(partial, target);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(partial, ec);
    throw;
  }
  return MapPackage{target, std::move(manifest)};
}

VerifyReport verify_package(const fs::path & dir)
{
  VerifyReport report;
  auto problem = [&](std::string p) { report.problems.push_back(std::move(p)); };

  if (!fs::is_directory(dir)) {
    problem("not a directory: " + dir.string());
    return report;
  }
  for (const char * name : {kPointCloudName, kLaneletName, kModelObjName, kModelMtlName, kManifestName}) {
    if (!fs::is_regular_file(dir / name)) {
      problem(std::string("missing ") + name);
    }
  }
  for (const auto & entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    const auto ext = entry.path().extension().string();
    if (ext == ".pcd" && name != kPointCloudName) {
      problem("unexpected point cloud '" + name + "' (Autoware expects " + kPointCloudName + ")");
    }
    if (ext == ".osm" && name != kLaneletName) {
      problem("unexpected lanelet map '" + name + "' (Autoware expects " + kLaneletName + ")");
    }
  }

  if (fs::is_regular_file(dir / kPointCloudName)) {
    try {
      PcdHeader header;
      const auto cloud = load_pcd(dir / kPointCloudName, &header);
      if (header.data != to_string(PcdDataMode::binary)) {
        problem(std::string(kPointCloudName) + " is not in binary mode");
      }
      if (cloud.size() == 0) {
        problem(std::string(kPointCloudName) + " has no points");
      }
    } catch (const Error & e) {
      problem(std::string(kPointCloudName) + ": " + e.what());
    }
  }

  if (fs::is_regular_file(dir / kLaneletName)) {
    try {
      const auto result = lanelet::validate_lanelet(lanelet::load_lanelet((dir / kLaneletName).string()));
      constexpr std::size_t kMaxListed = 20;
      for (std::size_t i = 0; i < result.violations.size() && i < kMaxListed; ++i) {
        const auto & v = result.violations[i];
        problem(std::string(kLaneletName) + ": " + v.rule + " " + v.element + " " +
                std::to_string(v.id) + ": " + v.message);
      }
      if (result.violations.size() > kMaxListed) {
        problem(std::string(kLaneletName) + ": " +
                std::to_string(result.violations.size() - kMaxListed) + " more violation(s)");
      }
    } catch (const Error & e) {
      problem(std::string(kLaneletName) + ": " + e.what());
    }
  }

  if (fs::is_regular_file(dir / kModelObjName)) {
    try {
      if (read_obj(dir / kModelObjName).triangles.empty()) {
        problem(std::string(kModelObjName) + " has no faces");
      }
    } catch (const Error & e) {
      problem(std::string(kModelObjName) + ": " + e.what());
    }
  }

  if (fs::is_regular_file(dir / kManifestName)) {
    try {
      std::ifstream in(dir / kManifestName);
      const auto manifest = nlohmann::json::parse(in);
      if (manifest.value("schema_version", -1) != kManifestSchemaVersion) {
        problem("manifest.json: unsupported schema_version");
      }
      const auto files = manifest.contains("package") ? manifest["package"].value("files", nlohmann::json::object())
                                                      : nlohmann::json::object();
      for (const auto & [name, digest] : files.items()) {
        const fs::path p = dir / name;
        if (fs::is_regular_file(p) && sha256_file(p) != digest.get<std::string>()) {
          problem("digest mismatch for " + name);
        }
      }
    } catch (const nlohmann::json::exception & e) {
      problem(std::string("manifest.json: ") + e.what());
    }
  }
  return report;
}

nlohmann::json comparable_manifest(nlohmann::json manifest)
{
  manifest.erase("created_at");
  return manifest;
}

}  // namespace simmap
