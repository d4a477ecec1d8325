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

#ifndef SIMMAP__TEXT_HPP_
#define SIMMAP__TEXT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simmap::text
{

/// Shortest decimal text that parses back to the identical value.
std::string format_shortest(double value);
std::string format_shortest(float value);

/// Like format_shortest, but always carries a decimal point or exponent
/// ("0" becomes "0.0", "44" becomes "44.0").
std::string format_decimal(double value);

std::string format_fixed(double value, int decimals);

// Whole-string parses; surrounding whitespace is not accepted.
std::optional<double> parse_double(std::string_view s);
std::optional<float> parse_float(std::string_view s);
std::optional<std::int64_t> parse_int64(std::string_view s);
std::optional<std::uint64_t> parse_uint64(std::string_view s);

std::vector<std::string_view> split_whitespace(std::string_view s);
std::string_view trim(std::string_view s);

}  // namespace simmap::text

#endif  // SIMMAP__TEXT_HPP_
