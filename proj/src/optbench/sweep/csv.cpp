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

#include "optbench/sweep/csv.hpp"

#include "optbench/common.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace optbench::sweep {

std::vector<CsvRow> parse_csv(std::istream &in)
{
  std::vector<CsvRow> rows;
  CsvRow              row;
  std::string         field;
  bool                in_quotes  = false;
  bool                field_seen = false;
  char                c          = 0;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_seen = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };

  while (in.get(c))
  {
    if (in_quotes)
    {
      if (c == '"')
      {
        if (in.peek() == '"')
        {
          in.get(c);
          field.push_back('"');
        }
        else
        {
          in_quotes = false;
        }
      }
      else
      {
        field.push_back(c);
      }
      continue;
    }
    switch (c)
    {
    case '"':
      in_quotes  = true;
      field_seen = true;
      break;
    case ',':
      end_field();
      field_seen = true;
      break;
    case '\r':
      break;
    case '\n':
      end_row();
      break;
    default:
      field.push_back(c);
      field_seen = true;
    }
  }
  if (in_quotes)
  {
    throw DataError("unterminated quoted CSV field");
  }
  if (field_seen || !field.empty() || !row.empty())
  {
    end_row();
  }
  return rows;
}

std::string csv_escape(std::string_view field)
{
  if (field.find_first_of(",\"\n\r") == std::string_view::npos)
  {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field)
  {
    if (c == '"')
    {
      out.push_back('"');
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

CsvWriter::CsvWriter(CsvRow header, bool emit_header)
  : columns_(header.size())
{
  if (emit_header)
  {
    add_row(std::move(header));
  }
}

void CsvWriter::add_row(CsvRow row)
{
  if (row.size() != columns_)
  {
    throw Error("CSV row has " + std::to_string(row.size()) + " fields, expected " +
                std::to_string(columns_));
  }
  for (std::size_t i = 0; i < row.size(); ++i)
  {
    if (i > 0)
    {
      buffer_.push_back(',');
    }
    buffer_ += csv_escape(row[i]);
  }
  buffer_.push_back('\n');
}

double parse_double(std::string_view text)
{
  double value = 0.0;
  if (text == "nan" || text == "NaN")
  {
    return std::nan("");
  }
  if (text == "inf")
  {
    return HUGE_VAL;
  }
  if (text == "-inf")
  {
    return -HUGE_VAL;
  }
  auto const *first = text.data();
  auto const *last  = text.data() + text.size();
  if (first != last && *first == '+')
  {
    ++first;
  }
  auto const [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last)
  {
    throw DataError("'" + std::string(text) + "' is not a number");
  }
  return value;
}

long long parse_integer(std::string_view text)
{
  long long value      = 0;
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
  {
    throw DataError("'" + std::string(text) + "' is not an integer");
  }
  return value;
}

std::string format_double(double value)
{
  if (std::isnan(value))
  {
    return "nan";
  }
  if (std::isinf(value))
  {
    return value > 0 ? "inf" : "-inf";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_file_atomically(std::filesystem::path const &path, std::string_view content)
{
  namespace fs = std::filesystem;
  if (path.has_parent_path())
  {
    fs::create_directories(path.parent_path());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw Error("cannot open '" + tmp.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out)
    {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
  {
    fs::remove(tmp, ec);
    throw Error("cannot replace '" + path.string() + "'");
  }
}

std::string read_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw Error("cannot open '" + path.string() + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace optbench::sweep
