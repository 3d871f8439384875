// Copyright 2026 The optbench Authors
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

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace optbench::sweep {

using CsvRow = std::vector<std::string>;

/// RFC 4180 reader: quoted fields may contain commas, quotes ("") and newlines.
std::vector<CsvRow> parse_csv(std::istream &in);

std::string csv_escape(std::string_view field);

class CsvWriter
{
public:
  explicit CsvWriter(CsvRow header, bool emit_header = true);

  void add_row(CsvRow row);

  std::string const &str() const noexcept { return buffer_; }

private:
  std::size_t columns_;
  std::string buffer_;
};

// Strict numeric parsing: the whole field must be consumed.
double        parse_double(std::string_view text);
long long     parse_integer(std::string_view text);

// Round-trip formatting with 17 significant digits.
std::string format_double(double value);

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partially written file.
void write_file_atomically(std::filesystem::path const &path, std::string_view content);

std::string read_file(std::filesystem::path const &path);

}  // namespace optbench::sweep
