// Copyright 2026 The fairot Authors.
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

#ifndef FAIROT_CSV_HPP_
#define FAIROT_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace fairot::csv {

// One CSV record. `raw` is the exact source text without its line
// terminator, so untouched columns can be written back byte for byte.
struct Record {
  std::vector<std::string> fields;
  std::string raw;
  std::string terminator;
};

struct Table {
  Record header;
  std::vector<Record> rows;

  // Column position in the header; throws ValidationError if absent.
  std::size_t column(std::string_view name) const;
};

// RFC 4180 parsing: comma separated, double-quote quoting with "" escapes,
// LF or CRLF terminators. Blank lines are skipped. Throws ValidationError
// on an unterminated quote or an empty document.
Table parse(std::string_view text);
Table read_file(const std::string& path);

// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);

// Shortest decimal form that parses back to the same double.
std::string format_shortest(double value);
// 17 significant digits.
std::string format_full(double value);

// Parses a decimal number with '.' separator; the whole field must be used.
bool parse_double(std::string_view text, double& out);

}  // namespace fairot::csv

#endif  // FAIROT_CSV_HPP_
