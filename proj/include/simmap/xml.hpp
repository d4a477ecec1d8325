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

#ifndef SIMMAP__XML_HPP_
#define SIMMAP__XML_HPP_

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace simmap::xml
{

using AttributeList = std::vector<std::pair<std::string, std::string>>;

/// Element tree node. Character data is discarded; both OSM dialects the
/// tool reads carry everything in attributes.
struct Element
{
  std::string name;
  AttributeList attributes;
  std::vector<Element> children;
  std::size_t line = 0;

  const std::string * attribute(std::string_view key) const;
};

/// Parses a complete document and returns its root element.
/// Throws ParseError (with the expat line number) on malformed input.
Element parse(std::istream & input);
Element parse(std::string_view text);

/// Escapes the five XML special characters for use inside a double-quoted
/// attribute value.
std::string escape(std::string_view raw);

}  // namespace simmap::xml

#endif  // SIMMAP__XML_HPP_
