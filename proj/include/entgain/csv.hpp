// Copyright 2026 The entgain Authors
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

#pragma once

// Locale-independent number formatting shared by every CSV writer:
// '.' as decimal separator, 17 significant digits, '\n' line endings.

#include <array>
#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace entgain::csv {

inline std::string format(double value) {
  std::array<char, 64> buf{};
  const auto result =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), result.ptr);
}

inline std::string format(std::int64_t value) { return std::to_string(value); }
inline std::string format(std::uint64_t value) { return std::to_string(value); }
inline std::string format(int value) { return std::to_string(value); }

/// Writes "# key: value" comment lines ahead of the column header.
inline void write_comment(std::ostream& out, std::string_view text) {
  out << "# " << text << '\n';
}

template <typename... Columns>
void write_row(std::ostream& out, const Columns&... columns) {
  bool first = true;
  ((out << (first ? "" : ",") << format(columns), first = false), ...);
  out << '\n';
}

inline void write_header(std::ostream& out, std::initializer_list<std::string_view> names) {
  bool first = true;
  for (std::string_view name : names) {
    out << (first ? "" : ",") << name;
    first = false;
  }
  out << '\n';
}

}  // namespace entgain::csv
