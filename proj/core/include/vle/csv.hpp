// Copyright 2026 The vle-miner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vle::csv {

/// Splits one comma-separated line. Double-quoted fields may contain commas
/// and doubled quotes; surrounding whitespace is kept as-is.
std::vector<std::string> split_line(std::string_view line);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

/// Calls `header` with the first non-empty line (or an empty vector for an
/// empty file), then `row` for every later non-empty line with its 1-based
/// line number. Trailing '\r' is stripped.
void read_file(const std::string& path,
               const std::function<void(const std::vector<std::string>& fields)>& header,
               const std::function<void(std::size_t line_no, const std::vector<std::string>& fields)>& row);

std::string_view trim(std::string_view s);

/// Strict base-10 integer parse of the whole (trimmed) field.
bool parse_int(std::string_view s, std::int64_t& out);
bool parse_double(std::string_view s, double& out);

/// Fixed 6-decimal rendering used for every probability in text outputs.
std::string fixed6(double value);

/// Shortest representation that parses back to the identical double.
std::string exact(double value);

/// Writes `content` to `path`, creating parent directories. LF only.
void write_text(const std::string& path, std::string_view content);
std::string read_text(const std::string& path);

}  // namespace vle::csv
