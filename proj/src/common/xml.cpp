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

#include "simmap/xml.hpp"

#include <expat.h>

#include <array>
#include <memory>
#include <sstream>

#include "simmap/error.hpp"

namespace simmap::xml
{
namespace
{
struct ParserState
{
  XML_Parser parser = nullptr;
  Element root;
  bool has_root = false;
  std::vector<Element *> stack;
};

void on_start(void * user_data, const XML_Char * name, const XML_Char ** attrs)
{
  auto * state = static_cast<ParserState *>(user_data);
  Element element;
  element.name = name;
  element.line = static_cast<std::size_t>(XML_GetCurrentLineNumber(state->parser));
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    element.attributes.emplace_back(attrs[i], attrs[i + 1]);
  }
  if (state->stack.empty()) {
    state->root = std::move(element);
    state->has_root = true;
    state->stack.push_back(&state->root);
    return;
  }
  // Only the top of the stack grows, so ancestor pointers stay valid.
  auto & siblings = state->stack.back()->children;
  siblings.push_back(std::move(element));
  state->stack.push_back(&siblings.back());
}

void on_end(void * user_data, const XML_Char * /*name*/)
{
  auto * state = static_cast<ParserState *>(user_data);
  state->stack.pop_back();
}

using ParserHandle = std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)>;
}  // namespace

const std::string * Element::attribute(std::string_view key) const
{
  for (const auto & [k, v] : attributes) {
    if (k == key) {
      return &v;
    }
  }
  return nullptr;
}

Element parse(std::istream & input)
{
  ParserHandle handle(XML_ParserCreate(nullptr), &XML_ParserFree);
  if (!handle) {
    throw Error(ErrorKind::io, "unable to allocate XML parser");
  }
  ParserState state;
  state.parser = handle.get();
  XML_SetUserData(handle.get(), &state);
  XML_SetElementHandler(handle.get(), &on_start, &on_end);

  std::array<char, 1 << 16> buffer{};
  bool done = false;
  while (!done) {
    input.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const auto n = input.gcount();
    if (input.bad()) {
      throw Error(ErrorKind::io, "read failure while parsing XML");
    }
    done = n < static_cast<std::streamsize>(buffer.size());
    if (XML_Parse(handle.get(), buffer.data(), static_cast<int>(n), done ? 1 : 0) ==
        XML_STATUS_ERROR) {
      throw ParseError(
        std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(handle.get())),
        static_cast<std::size_t>(XML_GetCurrentLineNumber(handle.get())));
    }
  }
  if (!state.has_root) {
    throw ParseError("document has no root element", 0);
  }
  return std::move(state.root);
}

Element parse(std::string_view text)
{
  std::istringstream in{std::string(text)};
  return parse(in);
}

std::string escape(std::string_view raw)
{
  std::string out;
  out.reserve(raw.size());
  for (const char c : raw) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      case '\n':
        out += "&#10;";
        break;
      case '\t':
        out += "&#9;";
        break;
      case '\r':
        out += "&#13;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace simmap::xml
