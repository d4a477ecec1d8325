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

#include "simmap/error.hpp"

#include <utility>

namespace simmap
{

const char * to_string(ErrorKind kind)
{
  switch (kind) {
    case ErrorKind::parse:
      return "parse error";
    case ErrorKind::integrity:
      return "integrity error";
    case ErrorKind::empty_document:
      return "empty document";
    case ErrorKind::degenerate_bounds:
      return "degenerate bounds";
    case ErrorKind::empty_result:
      return "empty result";
    case ErrorKind::geometry:
      return "geometry error";
    case ErrorKind::degenerate:
      return "degenerate geometry";
    case ErrorKind::unsupported_format:
      return "unsupported format";
    case ErrorKind::corruption:
      return "corrupt data";
    case ErrorKind::schema:
      return "schema error";
    case ErrorKind::config:
      return "config error";
    case ErrorKind::io:
      return "i/o error";
    case ErrorKind::invalid_argument:
      return "invalid argument";
    case ErrorKind::nothing_to_build:
      return "nothing to build";
    case ErrorKind::empty_cloud:
      return "empty cloud";
    case ErrorKind::packaging:
      return "packaging error";
    case ErrorKind::validation:
      return "validation failure";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string & message)
: std::runtime_error(message), kind_(kind)
{
}

ParseError::ParseError(const std::string & message, std::size_t line)
: Error(
    ErrorKind::parse, line > 0 ? "line " + std::to_string(line) + ": " + message : message),
  line_(line)
{
}

IntegrityError::IntegrityError(const std::string & message, std::vector<std::int64_t> ids)
: Error(ErrorKind::integrity, message), ids_(std::move(ids))
{
}

GeometryError::GeometryError(ErrorKind kind, const std::string & message, std::int64_t feature_id)
: Error(kind, message), feature_id_(feature_id)
{
}

}  // namespace simmap
