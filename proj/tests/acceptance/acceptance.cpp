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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "simmap/config.hpp"
#include "simmap/geodesy.hpp"
#include "simmap/geometry.hpp"
#include "simmap/lanelet.hpp"
#include "simmap/meshgen.hpp"
#include "simmap/pcd.hpp"
#include "simmap/sampler.hpp"

namespace fs = std::filesystem;

namespace
{

const fs::path kFixture = fs::path(SIMMAP_TEST_DATA_DIR) / "sirc_min.osm";
const fs::path kGolden = fs::path(SIMMAP_TEST_DATA_DIR) / "one_point_binary.pcd";

/// Outcome of one criterion: failures collected as human-readable notes.
struct Check
{
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool condition, const std::string & what)
  {
    if (!condition && failures.size() < 5) {
      failures.push_back(what);
    }
  }
};

std::string quote(const fs::path & p) { return "\"" + p.string() + "\""; }

int cli(const std::string & args)
{
  const std::string command = std::string("\"") + SIMMAP_CLI + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string encode(const simmap::PointCloud & cloud, simmap::PcdDataMode mode)
{
  std::ostringstream out;
  simmap::write_pcd(cloud, mode, out);
  return out.str();
}

simmap::PointCloud decode(const std::string & bytes)
{
  std::istringstream in(bytes);
  return simmap::read_pcd(in);
}

oracle::P3 o3(const simmap::Point3 & p) { return {p.x, p.y, p.z}; }

/// Extruded buildings, flat surfaces and free-standing tilted triangles.
simmap::TriangleMesh random_mesh(gen::Rng & rng)
{
  simmap::TriangleMesh mesh;
  const int parts = gen::uniform_int(rng, 1, 5);
  for (int k = 0; k < parts; ++k) {
    const double dx = gen::uniform(rng, -200, 200);
    const double dy = gen::uniform(rng, -200, 200);
    std::vector<simmap::LocalPoint> pts;
    for (const auto & p : gen::simple_polygon(rng, 16)) {
      pts.push_back({p.x + dx, p.y + dy});
    }
    switch (gen::uniform_int(rng, 0, 2)) {
      case 0:
        mesh.append(simmap::extrude_building(pts, gen::uniform(rng, 2.0, 40.0)));
        break;
      case 1:
        mesh.append(simmap::surface_polygon(pts, gen::uniform(rng, 0.0, 0.5), simmap::materials::road()));
        break;
      default: {
        simmap::TriangleMesh loose;
        loose.materials = {simmap::materials::building()};
        for (int v = 0; v < 3; ++v) {
          loose.vertices.push_back(
            {gen::uniform(rng, -50, 50), gen::uniform(rng, 0, 30), gen::uniform(rng, -50, 50)});
        }
        loose.triangles = {{{0, 1, 2}, 0}};
        mesh.append(loose);
      }
    }
  }
  return mesh;
}

long double oracle_area(const simmap::TriangleMesh & mesh, std::size_t i)
{
  const auto & t = mesh.triangles[i];
  return oracle::triangle_area(o3(mesh.vertices[t.v[0]]), o3(mesh.vertices[t.v[1]]), o3(mesh.vertices[t.v[2]]));
}

bool is_zero_literal(const std::string & value)
{
  char * end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  return end != value.c_str() && *end == '\0' && v == 0.0;
}

// 1. End-to-end run on the bundled fixture.
Check end_to_end(const fs::path & work)
{
  Check c;
  const auto out = work / "pkg";
  const auto start = std::chrono::steady_clock::now();
  const int status = cli("run --in " + quote(kFixture) + " --out-dir " + quote(out));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(status == 0, "simmap run exited with " + std::to_string(status));
  c.expect(seconds < 10.0, "run took " + std::to_string(seconds) + " s");
  if (!c.failures.empty()) {
    return c;
  }
  simmap::PcdHeader header;
  const auto cloud = simmap::load_pcd(out / "pointcloud_map.pcd", &header);
  const auto head = oracle::slurp((out / "pointcloud_map.pcd").string()).substr(0, 64);
  c.expect(head.rfind("# .PCD v0.7", 0) == 0 && header.version == "0.7", "PCD header is not v0.7");
  c.expect(header.data == "binary", "PCD DATA is " + header.data);
  const double density = simmap::PipelineConfig{}.density;
  const auto mesh = oracle::read_obj((out / "model/model.obj").string());
  const auto expected = static_cast<std::size_t>(std::floor(static_cast<long double>(density) * mesh.area()));
  c.expect(cloud.size() == expected,
           "POINTS " + std::to_string(cloud.size()) + " != floor(density*area) " + std::to_string(expected));
  const auto report = simmap::lanelet::validate_lanelet(simmap::lanelet::load_lanelet((out / "lanelet2_map.osm").string()));
  c.expect(report.ok(), "lanelet violations: " + report.to_text());
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.2f s, %zu points, %zu lanelet violations", seconds, cloud.size(),
                report.violations.size());
  c.detail = buf;
  return c;
}

// 2. Lat/lon nullification via the CLI, both modes, byte-level idempotence.
Check nullification(const fs::path & work)
{
  Check c;
  const auto derived = work / "derived.osm";
  c.expect(cli("lanelet derive --in " + quote(kFixture) + " --out " + quote(derived)) == 0, "lanelet derive failed");
  const std::regex attr(R"(\s(lat|lon)="([^"]*)\")");
  std::size_t scanned = 0;
  for (const std::string mode : {"zero", "remove"}) {
    const auto once = work / ("once_" + mode + ".osm");
    const auto twice = work / ("twice_" + mode + ".osm");
    c.expect(cli("lanelet nullify --in " + quote(derived) + " --out " + quote(once) + " --mode " + mode) == 0,
             "nullify " + mode + " failed");
    c.expect(cli("lanelet nullify --in " + quote(once) + " --out " + quote(twice) + " --mode " + mode) == 0,
             "second nullify " + mode + " failed");
    if (!c.failures.empty()) {
      return c;
    }
    const auto text = oracle::slurp(once.string());
    std::size_t total = 0;
    std::size_t nonzero = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), attr); it != std::sregex_iterator(); ++it) {
      ++total;
      nonzero += is_zero_literal((*it)[2].str()) ? 0 : 1;
    }
    scanned += total;
    if (mode == "zero") {
      c.expect(nonzero == 0, std::to_string(nonzero) + " nonzero lat/lon attributes in zero mode");
      c.expect(total > 0, "zero mode dropped the attributes");
    } else {
      c.expect(total == 0, std::to_string(total) + " lat/lon attributes in remove mode");
    }
    c.expect(text == oracle::slurp(twice.string()), "nullify " + mode + " is not idempotent");
  }
  const auto original = oracle::slurp(derived.string());
  std::size_t before = 0;
  for (auto it = std::sregex_iterator(original.begin(), original.end(), attr); it != std::sregex_iterator(); ++it) {
    before += is_zero_literal((*it)[2].str()) ? 0 : 1;
  }
  c.expect(before > 0, "derived map had no geodetic values to nullify");
  c.detail = std::to_string(before) + " nonzero lat/lon before, 0 after; " + std::to_string(scanned) +
             " attributes scanned";
  return c;
}

// 3. PCD ascii/binary fidelity and the golden one-point file.
Check pcd_fidelity()
{
  Check c;
  gen::Rng rng(3003);
  std::size_t points = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    simmap::PointCloud cloud;
    const int n = gen::uniform_int(rng, 1, 64);
    for (int i = 0; i < n; ++i) {
      cloud.points.push_back({gen::awkward_float(rng), gen::awkward_float(rng), gen::awkward_float(rng)});
    }
    // Every case holds at least one of each awkward class.
    cloud.points.push_back({-0.0f, std::numeric_limits<float>::denorm_min(), 3.0e6f});
    points += cloud.size();
    const auto ascii = encode(cloud, simmap::PcdDataMode::ascii);
    const auto binary = encode(decode(ascii), simmap::PcdDataMode::binary);
    const auto back = decode(binary);
    c.expect(simmap::bit_identical(back, cloud), "case " + std::to_string(trial) + " changed bits");
    c.expect(encode(back, simmap::PcdDataMode::ascii) == ascii, "case " + std::to_string(trial) + " ascii differs");
  }
  const auto golden = oracle::slurp(kGolden.string());
  const std::string payload = oracle::le_bytes(oracle::ieee754_bits(1.0f)) +
                              oracle::le_bytes(oracle::ieee754_bits(2.0f)) +
                              oracle::le_bytes(oracle::ieee754_bits(3.0f));
  c.expect(payload == std::string("\x00\x00\x80\x3f\x00\x00\x00\x40\x00\x00\x40\x40", 12), "oracle payload");
  c.expect(golden.size() >= 12 && golden.substr(golden.size() - 12) == payload, "golden payload mismatch");
  simmap::PointCloud one;
  one.points = {{1.0f, 2.0f, 3.0f}};
  c.expect(encode(one, simmap::PcdDataMode::binary) == golden, "writer output differs from golden file");
  c.detail = "1000 clouds, " + std::to_string(points) + " points";
  return c;
}

// 4. Orientation preset algebra and its effect on a frontal cloud.
Check orientation()
{
  Check c;
  const auto m = simmap::Transform4::yup_to_zup();
  double err = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 3; ++k) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i) {
        s += m(i, r) * m(i, k);
      }
      err = std::max(err, std::fabs(s - (r == k ? 1.0 : 0.0)));
    }
  }
  c.expect(err < 1e-12, "||M^T M - I|| = " + std::to_string(err));
  const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  c.expect(det == 1.0, "det = " + std::to_string(det));
  c.expect(m * m * m * m == simmap::Transform4::identity(), "M^4 != I");

  // Frontal view: a tall facade, wide in x, tall in y, shallow in z.
  gen::Rng rng(404);
  simmap::PointCloud frontal;
  for (int i = 0; i < 20000; ++i) {
    frontal.points.push_back({static_cast<float>(gen::uniform(rng, -10, 10)),
                              static_cast<float>(gen::uniform(rng, 0, 60)),
                              static_cast<float>(gen::uniform(rng, -1, 1))});
  }
  const auto out = simmap::apply_transform(frontal, m);
  auto variance = [](const simmap::PointCloud & cloud, float simmap::PointXYZ::*axis) {
    double mean = 0.0;
    for (const auto & p : cloud.points) mean += p.*axis;
    mean /= static_cast<double>(cloud.size());
    double v = 0.0;
    for (const auto & p : cloud.points) v += (p.*axis - mean) * (p.*axis - mean);
    return v / static_cast<double>(cloud.size());
  };
  const double old_y = variance(frontal, &simmap::PointXYZ::y);
  const double new_z = variance(out, &simmap::PointXYZ::z);
  const double ulp = std::nextafter(old_y, INFINITY) - old_y;
  c.expect(std::fabs(new_z - old_y) <= ulp, "variance of new z differs from old y");
  const double new_x = variance(out, &simmap::PointXYZ::x);
  const double new_y = variance(out, &simmap::PointXYZ::y);
  c.expect(new_z > new_x && new_z > new_y, "largest extent is not along new z");
  const double old_z = variance(frontal, &simmap::PointXYZ::z);
  c.expect(std::fabs(new_y - old_z) <= std::nextafter(old_z, INFINITY) - old_z, "ground plane lost old z");
  char buf[160];
  std::snprintf(buf, sizeof buf, "var(y)=%.17g var(z')=%.17g", old_y, new_z);
  c.detail = buf;
  return c;
}

// 5. Triangulation area/count and ribbon width.
Check geometry_conservation()
{
  Check c;
  gen::Rng rng(5005);
  double worst_area = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto ring = gen::simple_polygon(rng);
    std::vector<simmap::LocalPoint> pts;
    for (const auto & p : ring) pts.push_back({p.x, p.y});
    const auto tris = simmap::geometry::triangulate_polygon(pts, trial);
    c.expect(tris.size() == ring.size() - 2, "polygon " + std::to_string(trial) + " triangle count");
    long double area = 0.0L;
    for (const auto & t : tris) {
      area += oracle::signed_triangle_area(ring[t[0]], ring[t[1]], ring[t[2]]);
    }
    const long double expected = std::fabs(oracle::shoelace(ring));
    const double rel = static_cast<double>(std::fabs(area - expected) / expected);
    worst_area = std::max(worst_area, rel);
    c.expect(rel <= 1e-6, "polygon " + std::to_string(trial) + " area error " + std::to_string(rel));
  }
  double worst_width = 0.0;
  std::size_t midpoints = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto line = gen::ribbon_polyline(rng);
    std::vector<simmap::LocalPoint> pts;
    for (const auto & p : line.points) pts.push_back({p.x, p.y});
    std::vector<oracle::P2> ribbon;
    for (const auto & p : simmap::geometry::buffer_polyline(pts, line.width)) ribbon.push_back({p.x, p.y});
    for (std::size_t i = 0; i + 1 < line.points.size(); ++i) {
      const auto w = oracle::ribbon_width_at_midpoint(ribbon, line.points[i], line.points[i + 1]);
      ++midpoints;
      c.expect(w.has_value(), "polyline " + std::to_string(trial) + " midpoint outside ribbon");
      if (w) {
        worst_width = std::max(worst_width, std::fabs(*w - line.width));
        c.expect(std::fabs(*w - line.width) <= 1e-9, "polyline " + std::to_string(trial) + " width");
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max area rel err %.2e, max width err %.2e m over %zu midpoints", worst_area,
                worst_width, midpoints);
  c.detail = buf;
  return c;
}

// 6. Sampling counts, surface adherence and thread independence.
Check sampling_law()
{
  Check c;
  gen::Rng rng(6006);
  std::size_t total_points = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto mesh = random_mesh(rng);
    const simmap::SamplingSpec spec{gen::uniform(rng, 0.1, 20.0), rng()};
    long double area = 0.0L;
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i) area += oracle_area(mesh, i);
    const auto expected = static_cast<std::size_t>(std::floor(static_cast<long double>(spec.density) * area));

    const auto counts = simmap::triangle_sample_counts(mesh, spec);
    const auto pts = simmap::sample_surface(mesh, spec);
    c.expect(pts.size() == expected, "mesh " + std::to_string(trial) + ": " + std::to_string(pts.size()) +
                                       " points, expected " + std::to_string(expected));
    std::size_t k = 0;
    for (std::size_t i = 0; i < counts.size() && k < pts.size(); ++i) {
      const auto & t = mesh.triangles[i];
      for (std::uint64_t j = 0; j < counts[i] && k < pts.size(); ++j, ++k) {
        const double d = oracle::point_triangle_distance(o3(pts[k]), o3(mesh.vertices[t.v[0]]),
                                                         o3(mesh.vertices[t.v[1]]), o3(mesh.vertices[t.v[2]]));
        worst = std::max(worst, d);
      }
    }
    total_points += pts.size();
    const auto one = encode(simmap::sample_mesh(mesh, spec, 1), simmap::PcdDataMode::binary);
    c.expect(simmap::sample_mesh(mesh, spec, 1).size() == expected, "cloud size");
    c.expect(one == encode(simmap::sample_mesh(mesh, spec, 2), simmap::PcdDataMode::binary),
             "mesh " + std::to_string(trial) + ": 2 threads differ");
    c.expect(one == encode(simmap::sample_mesh(mesh, spec, 8), simmap::PcdDataMode::binary),
             "mesh " + std::to_string(trial) + ": 8 threads differ");
  }
  c.expect(worst < 1e-9, "surface distance " + std::to_string(worst));
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu points, max surface distance %.2e m", total_points, worst);
  c.detail = buf;
  return c;
}

// 7. Local projection against haversine and round trip.
Check projection()
{
  Check c;
  const auto doc_bounds = simmap::GeoBounds{43.9452508, -78.8966238, 43.9461492, -78.8953762};
  const auto proj = simmap::make_projection(doc_bounds);
  gen::Rng rng(7007);
  double worst_rel = 0.0;
  double worst_trip = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const simmap::GeoPoint a{gen::uniform(rng, doc_bounds.min_lat, doc_bounds.max_lat),
                             gen::uniform(rng, doc_bounds.min_lon, doc_bounds.max_lon)};
    const simmap::GeoPoint b{gen::uniform(rng, doc_bounds.min_lat, doc_bounds.max_lat),
                             gen::uniform(rng, doc_bounds.min_lon, doc_bounds.max_lon)};
    const auto pa = proj.project(a);
    const auto pb = proj.project(b);
    const double euclid = std::hypot(pa.x - pb.x, pa.y - pb.y);
    const double great = oracle::haversine(a.lat, a.lon, b.lat, b.lon);
    const double rel = great > 0.0 ? std::fabs(euclid - great) / great : euclid;
    worst_rel = std::max(worst_rel, rel);
    c.expect(rel < 1e-3, "pair " + std::to_string(i) + " relative error " + std::to_string(rel));
    for (const auto & [g, p] : {std::pair{a, pa}, std::pair{b, pb}}) {
      const auto back = proj.unproject(p);
      const double trip = std::max(std::fabs(back.lat - g.lat), std::fabs(back.lon - g.lon));
      worst_trip = std::max(worst_trip, trip);
      c.expect(trip < 1e-12, "pair " + std::to_string(i) + " round trip " + std::to_string(trip));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max relative error %.2e, max round trip %.2e deg", worst_rel, worst_trip);
  c.detail = buf;
  return c;
}

// 8. Autoware naming contract enforced by verify.
Check naming_contract(const fs::path & work)
{
  Check c;
  const auto pkg = work / "pkg";
  if (!fs::exists(pkg / "manifest.json")) {
    c.expect(cli("run --in " + quote(kFixture) + " --out-dir " + quote(pkg)) == 0, "simmap run failed");
  }
  c.expect(cli("verify " + quote(pkg)) == 0, "verify rejected a fresh package");
  c.expect(fs::is_regular_file(pkg / "pointcloud_map.pcd"), "pointcloud_map.pcd missing");
  c.expect(fs::is_regular_file(pkg / "lanelet2_map.osm"), "lanelet2_map.osm missing");
  for (const auto & [name, renamed] : {std::pair<std::string, std::string>{"pointcloud_map.pcd", "pointcloud.pcd"},
                                       {"lanelet2_map.osm", "lanelet2.osm"}}) {
    fs::rename(pkg / name, pkg / renamed);
    c.expect(cli("verify " + quote(pkg)) == 3, "verify accepted " + renamed);
    fs::rename(pkg / renamed, pkg / name);
    c.expect(cli("verify " + quote(pkg)) == 0, "verify failed after restoring " + name);
  }
  c.detail = "renaming either file is rejected";
  return c;
}

}  // namespace

int main()
{
  const auto work = fs::temp_directory_path() / "simmap_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
    {"end-to-end fixture run", [&] { return end_to_end(work); }},
    {"lat/lon nullification", [&] { return nullification(work); }},
    {"PCD fidelity", pcd_fidelity},
    {"yup-to-zup orientation", orientation},
    {"geometry conservation", geometry_conservation},
    {"sampling law", sampling_law},
    {"local projection", projection},
    {"Autoware naming contract", [&] { return naming_contract(work); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception & e) {
      result.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool pass = result.failures.empty();
    failed += pass ? 0 : 1;
    std::printf("%s %zu %s: %s\n", pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                pass ? result.detail.c_str() : result.failures.front().c_str());
    for (std::size_t k = 1; k < result.failures.size(); ++k) {
      std::printf("     %s\n", result.failures[k].c_str());
    }
  }
  std::fflush(stdout);
  fs::remove_all(work);
  return failed == 0 ? 0 : 1;
}
