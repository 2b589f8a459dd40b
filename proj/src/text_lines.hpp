// Copyright 2026 The cpmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Internal helpers for the whitespace-delimited text formats. Not installed.

#pragma once

#include <array>
#include <istream>
#include <span>
#include <string>
#include <string_view>

#include "cpmap/errors.hpp"

namespace cpmap::text {

inline std::string read_all(std::istream& in) {
  std::string data;
  std::array<char, 1 << 16> chunk;
  while (in.read(chunk.data(), chunk.size()) || in.gcount() > 0) {
    data.append(chunk.data(), static_cast<std::size_t>(in.gcount()));
  }
  return data;
}

[[noreturn]] inline void fail_line(std::size_t line_no,
                                   const std::string& what) {
  throw InputError("line " + std::to_string(line_no) + ": " + what);
}

inline bool is_sep(char c) { return c == ' ' || c == '\t'; }

// Splits on runs of spaces/tabs. Returns the number of fields found, up to
// fields.size(); a line with more fields reports fields.size() + 1.
inline std::size_t split_fields(std::string_view line,
                                std::span<std::string_view> fields) {
  std::size_t n = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !is_sep(line[i])) ++i;
    if (n == fields.size()) return n + 1;
    fields[n++] = line.substr(start, i - start);
  }
  return n;
}

// Calls fn(line_no, content) for every payload line, skipping blank lines
// and '#' comments. Line numbers count every physical line; CRLF accepted.
template <typename Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  const std::string data = read_all(in);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < data.size()) {
    const std::size_t eol = data.find('\n', pos);
    const std::size_t end = eol == std::string::npos ? data.size() : eol;
    ++line_no;
    std::string_view line(data.data() + pos, end - pos);
    pos = eol == std::string::npos ? data.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t first = 0;
    while (first < line.size() && is_sep(line[first])) ++first;
    if (first == line.size() || line[first] == '#') continue;
    fn(line_no, line);
  }
}

}  // namespace cpmap::text
