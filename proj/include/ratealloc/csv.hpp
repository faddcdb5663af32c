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


#ifndef RATEALLOC_CSV_HPP_
#define RATEALLOC_CSV_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ratealloc::csv {

/// Shortest decimal form that parses back to the identical double.
std::string FormatDouble(double value);

/// Throws std::invalid_argument unless the whole field is a number.
double ParseDouble(std::string_view field);
long long ParseInt(std::string_view field);

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

/// Writes `,`-separated LF-terminated lines. Fields are never quoted; callers
/// keep commas out of them.
void WriteRow(std::ostream& out, const Row& row);
void WriteTable(std::ostream& out, const Table& table);

/// Reads a table written by WriteTable. Throws std::runtime_error on ragged
/// rows or a missing header.
Table ReadTable(std::istream& in);

}  // namespace ratealloc::csv

#endif  // RATEALLOC_CSV_HPP_
