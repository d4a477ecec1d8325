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

#ifndef SIMMAP__PIPELINE_HPP_
#define SIMMAP__PIPELINE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simmap/config.hpp"
#include "simmap/error.hpp"

namespace simmap
{

inline constexpr int kManifestSchemaVersion = 1;

inline constexpr const char * kPointCloudName = "pointcloud_map.pcd";
inline constexpr const char * kLaneletName = "lanelet2_map.osm";
inline constexpr const char * kModelObjName = "model/model.obj";
inline constexpr const char * kModelMtlName = "model/model.mtl";
inline constexpr const char * kManifestName = "manifest.json";

/// Failure inside one pipeline stage. `kind()` is the kind of the cause.
class StageError : public Error
{
public:
  StageError(std::string stage, ErrorKind cause, const std::string & message);
  const std::string & stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

struct RunOptions
{
  std::optional<std::filesystem::path> lanelet_in;  ///< ingest instead of derive
  bool force = false;                              ///< package despite R1-R5 violations
  bool lenient = false;                            ///< drop ways with dangling node refs
};

/// Intermediate files produced by the stages, before renaming.
struct StageOutputs
{
  std::filesystem::path obj;      ///< model.obj
  std::filesystem::path mtl;      ///< model.mtl
  std::filesystem::path cloud;    ///< cloud_t.pcd
  std::filesystem::path lanelet;  ///< lanelet map written by derive/ingest
};

struct MapPackage
{
  std::filesystem::path dir;
  nlohmann::json manifest;

  std::filesystem::path pointcloud() const { return dir / kPointCloudName; }
  std::filesystem::path lanelet() const { return dir / kLaneletName; }
  std::filesystem::path model_obj() const { return dir / kModelObjName; }
  std::filesystem::path model_mtl() const { return dir / kModelMtlName; }
  std::filesystem::path manifest_path() const { return dir / kManifestName; }
};

/// Runs every stage and packages into cfg.output_dir. On any failure the
/// output directory is left as it was and StageError is thrown.
MapPackage run_pipeline(const std::filesystem::path & input_osm, const PipelineConfig & cfg,
                        const RunOptions & options = {});

/// Copies the stage outputs into cfg.output_dir under the Autoware names and
/// writes `manifest` (with per-file digests added under "package"). The
/// package is assembled next to the target and moved into place, so an
/// error leaves no partial package. An existing non-empty directory is only
/// replaced when it holds a previous package (has a manifest.json).
MapPackage package_map(const StageOutputs & stages, const PipelineConfig & cfg,
                       nlohmann::json manifest);

struct VerifyReport
{
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Checks naming, PCD readability (binary mode), OBJ/MTL presence, that the
/// manifest digests match, and lanelet rules R1-R5.
VerifyReport verify_package(const std::filesystem::path & dir);

/// Manifest with fields that vary between identical runs removed.
nlohmann::json comparable_manifest(nlohmann::json manifest);

}  // namespace simmap

#endif  // SIMMAP__PIPELINE_HPP_
