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

#include "simmap/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>

namespace simmap::text
{
namespace
{
template <typename T>
std::string to_chars_shortest(T value)
{
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

template <typename T>
std::optional<T> from_chars_whole(std::string_view s)
{
  if (s.empty()) {
    return std::nullopt;
  }
  // from_chars rejects a leading '+', which OSM and PCD writers occasionally emit.
  if (s.front() == '+') {
    s.remove_prefix(1);
    if (s.empty() || s.front() == '-') {
      return std::nullopt;
    }
  }
  T value{};
  const auto result = std::from_chars(s.data(), s.data() + s.size(), value);
  if (result.ec != std::errc{} || result.ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}
}  // namespace

std::string format_shortest(double value) { return to_chars_shortest(value); }

std::string format_shortest(float value) { return to_chars_shortest(value); }

std::string format_decimal(double value)
{
  std::string s = to_chars_shortest(value);
  if (std::isfinite(value) && s.find_first_of(".e") == std::string::npos) {
    s += ".0";
  }
  return s;
}

std::string format_fixed(double value, int decimals)
{
  std::array<char, 64> buf{};
  const auto result = std::to_chars(
    buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  if (result.ec != std::errc{}) {
    // Magnitudes too large for the buffer; fall back to exponent form.
    return to_chars_shortest(value);
  }
  std::string s(buf.data(), result.ptr);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);  // "-0.000000" -> "0.000000"
  }
  return s;
}

std::optional<double> parse_double(std::string_view s) { return from_chars_whole<double>(s); }

std::optional<float> parse_float(std::string_view s) { return from_chars_whole<float>(s); }

std::optional<std::int64_t> parse_int64(std::string_view s)
{
  return from_chars_whole<std::int64_t>(s);
}

std::optional<std::uint64_t> parse_uint64(std::string_view s)
{
  return from_chars_whole<std::uint64_t>(s);
}

std::vector<std::string_view> split_whitespace(std::string_view s)
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == '\n')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < s.size() && !(s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == '\n')) {
      ++i;
    }
    if (i > start) {
      out.push_back(s.substr(start, i - start));
    }
  }
  return out;
}

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace simmap::text
