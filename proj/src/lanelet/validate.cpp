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

#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <fmt/format.h>

#include "simmap/geometry.hpp"
#include "simmap/lanelet.hpp"
#include "simmap/text.hpp"

namespace simmap::lanelet
{

std::size_t ValidationReport::count(std::string_view rule) const
{
  std::size_t n = 0;
  for (const auto & v : violations) {
    n += v.rule == rule ? 1 : 0;
  }
  return n;
}

nlohmann::json ValidationReport::to_json() const
{
  nlohmann::json rules = nlohmann::json::object();
  for (const char * r : {"R1", "R2", "R3", "R4", "R5"}) {
    rules[r] = count(r);
  }
  nlohmann::json list = nlohmann::json::array();
  for (const auto & v : violations) {
    list.push_back({{"rule", v.rule}, {"element", v.element}, {"id", v.id}, {"message", v.message}});
  }
  return {{"ok", ok()}, {"counts", rules}, {"violations", list}};
}

std::string ValidationReport::to_text() const
{
  std::ostringstream out;
  for (const auto & v : violations) {
    out << v.rule << ' ' << v.element << ' ' << v.id << ": " << v.message << '\n';
  }
  out << (ok() ? "OK" : "FAILED") << ": " << violations.size() << " violation(s)";
  for (const char * r : {"R1", "R2", "R3", "R4", "R5"}) {
    out << ' ' << r << '=' << count(r);
  }
  out << '\n';
  return out.str();
}

ValidationReport validate_lanelet(const LaneletMap & map)
{
  ValidationReport report;
  auto add = [&](const char * rule, const char * element, Id id, std::string message) {
    report.violations.push_back(Violation{rule, element, id, std::move(message)});
  };

  std::unordered_map<Id, const Point *> points;
  for (const auto & p : map.points) {
    points.emplace(p.id, &p);
  }
  std::unordered_map<Id, const LineString *> linestrings;
  for (const auto & ls : map.linestrings) {
    linestrings.emplace(ls.id, &ls);
  }
  std::unordered_set<Id> relations;
  for (const auto & l : map.lanelets) {
    relations.insert(l.id);
  }
  for (const auto & r : map.other_relations) {
    relations.insert(r.id);
  }

  // R1 for linestrings; remember which ones are fully resolvable.
  std::unordered_map<Id, bool> resolvable;
  for (const auto & ls : map.linestrings) {
    bool ok = true;
    for (const Id ref : ls.point_refs) {
      if (points.count(ref) == 0) {
        add("R1", "way", ls.id, fmt::format("references missing node {}", ref));
        ok = false;
      }
    }
    resolvable[ls.id] = ok;
  }

  auto polyline = [&](const LineString & ls) {
    std::vector<LocalPoint> out;
    out.reserve(ls.point_refs.size());
    for (const Id ref : ls.point_refs) {
      const Point * p = points.at(ref);
      out.push_back({p->local_x, p->local_y});
    }
    return out;
  };

  for (const auto & ll : map.lanelets) {
    const LineString * bounds[2] = {nullptr, nullptr};
    const Id ids[2] = {ll.left, ll.right};
    const char * sides[2] = {"left", "right"};
    bool complete = true;
    for (int s = 0; s < 2; ++s) {
      const auto it = linestrings.find(ids[s]);
      if (it == linestrings.end()) {
        add("R1", "relation", ll.id, fmt::format("{} bound references missing way {}", sides[s], ids[s]));
        complete = false;
        continue;
      }
      bounds[s] = it->second;
      if (bounds[s]->point_refs.size() < 2) {
        add("R5", "relation", ll.id,
            fmt::format("{} bound {} has {} point(s)", sides[s], ids[s], bounds[s]->point_refs.size()));
        complete = false;
      } else if (!resolvable[ids[s]]) {
        complete = false;
      }
    }
    for (const auto & m : ll.extra_members) {
      const bool found = m.kind == MemberKind::node ? points.count(m.ref) > 0
                         : m.kind == MemberKind::way ? linestrings.count(m.ref) > 0
                                                     : relations.count(m.ref) > 0;
      if (!found) {
        add("R1", "relation", ll.id, fmt::format("member {} {} is missing", to_string(m.kind), m.ref));
      }
    }
    if (!complete) {
      continue;
    }
    if (ll.left == ll.right) {
      add("R2", "relation", ll.id, "left and right bounds are the same way");
      continue;
    }
    const auto left = polyline(*bounds[0]);
    const auto right = polyline(*bounds[1]);
    bool crossed = false;
    for (std::size_t i = 0; i + 1 < left.size() && !crossed; ++i) {
      for (std::size_t j = 0; j + 1 < right.size() && !crossed; ++j) {
        crossed = geometry::segments_intersect(left[i], left[i + 1], right[j], right[j + 1]);
      }
    }
    if (crossed) {
      add("R2", "relation", ll.id, "left and right bounds intersect");
    }
  }

  for (const auto & p : map.points) {
    if ((p.lat && *p.lat != 0.0) || (p.lon && *p.lon != 0.0)) {
      add("R3", "node", p.id,
          fmt::format("lat/lon not nullified ({}, {})", p.lat ? text::format_decimal(*p.lat) : "-",
                      p.lon ? text::format_decimal(*p.lon) : "-"));
    }
  }

  for (const auto * ls : map.parking_spaces()) {
    const auto * width = ls->tags.find("width");
    const auto value = width ? text::parse_double(*width) : std::nullopt;
    if (!value || !(*value > 0.0)) {
      add("R4", "way", ls->id, "parking space without a positive width tag");
    }
  }

  return report;
}

}  // namespace simmap::lanelet
