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

#ifndef SIMMAP__ERROR_HPP_
#define SIMMAP__ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace simmap
{

enum class ErrorKind {
  parse,
  integrity,
  empty_document,
  degenerate_bounds,
  empty_result,
  geometry,
  degenerate,
  unsupported_format,
  corruption,
  schema,
  config,
  io,
  invalid_argument,
  nothing_to_build,
  empty_cloud,
  packaging,
  validation,
};

const char * to_string(ErrorKind kind);

/// Base of every error thrown by the library. `kind()` lets callers branch
/// without RTTI; the message is meant for humans.
class Error : public std::runtime_error
{
public:
  Error(ErrorKind kind, const std::string & message);
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// Malformed or semantically invalid input text, with the 1-based line where
/// the problem was detected (0 when unknown).
class ParseError : public Error
{
public:
  ParseError(const std::string & message, std::size_t line);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Broken references between elements. `ids()` lists the offending element ids.
class IntegrityError : public Error
{
public:
  IntegrityError(const std::string & message, std::vector<std::int64_t> ids);
  const std::vector<std::int64_t> & ids() const noexcept { return ids_; }

private:
  std::vector<std::int64_t> ids_;
};

class GeometryError : public Error
{
public:
  GeometryError(ErrorKind kind, const std::string & message, std::int64_t feature_id);
  std::int64_t feature_id() const noexcept { return feature_id_; }

private:
  std::int64_t feature_id_;
};

}  // namespace simmap

#endif  // SIMMAP__ERROR_HPP_
