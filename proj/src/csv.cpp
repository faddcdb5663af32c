// Copyright 2026 The ratealloc Authors.
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


#include "ratealloc/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace ratealloc::csv {

std::string FormatDouble(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view field) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::invalid_argument("not a number: '" + std::string(field) + "'");
  }
  return value;
}

long long ParseInt(std::string_view field) {
  long long value = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(field) + "'");
  }
  return value;
}

void WriteRow(std::ostream& out, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << row[i];
  }
  out << '\n';
}

void WriteTable(std::ostream& out, const Table& table) {
  WriteRow(out, table.header);
  for (const auto& row : table.rows) WriteRow(out, row);
}

namespace {

Row SplitLine(const std::string& line) {
  Row fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace

Table ReadTable(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV: missing header");
  table.header = SplitLine(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row row = SplitLine(line);
    if (row.size() != table.header.size()) throw std::runtime_error("CSV: ragged row");
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace ratealloc::csv
