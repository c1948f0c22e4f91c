// Copyright 2026 The femtoq Authors.
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

#ifndef FEMTOQ_FORMAT_HPP_
#define FEMTOQ_FORMAT_HPP_

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace femtoq {

/// Shortest round-trip decimal form; locale independent so CSV output is byte stable.
inline std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

/// Strict parse of a whole field; throws std::invalid_argument.
double parse_double(std::string_view text);

/// Splits one CSV line on commas (no quoting; every field we write is numeric or a bare word).
std::vector<std::string> split_csv_line(std::string_view line);

/// FNV-1a 64-bit, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace femtoq

#endif  // FEMTOQ_FORMAT_HPP_
