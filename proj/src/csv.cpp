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

#include "fairot/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fairot/error.hpp"

namespace fairot::csv {

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    if (header.fields[i] == name) return i;
  }
  throw ValidationError("column '" + std::string(name) + "' not found in header");
}

Table parse(std::string_view text) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<Record> records;
  std::size_t pos = 0;
  while (pos < text.size()) {
    Record rec;
    std::string field;
    const std::size_t start = pos;
    bool in_quotes = false;
    bool quoted = false;
    std::size_t end = text.size();
    while (pos < text.size()) {
      const char c = text[pos];
      if (in_quotes) {
        if (c == '"') {
          if (pos + 1 < text.size() && text[pos + 1] == '"') {
            field += '"';
            pos += 2;
            continue;
          }
          in_quotes = false;
        } else {
          field += c;
        }
        ++pos;
        continue;
      }
      if (c == '"' && !quoted && field.empty()) {
        in_quotes = quoted = true;
        ++pos;
      } else if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
        quoted = false;
        ++pos;
      } else if (c == '\n' || (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n')) {
        end = pos;
        rec.terminator = c == '\n' ? "\n" : "\r\n";
        pos += rec.terminator.size();
        break;
      } else {
        field += c;
        ++pos;
      }
    }
    if (in_quotes) throw ValidationError("unterminated quoted CSV field");
    if (end == text.size()) end = pos;
    rec.raw = std::string(text.substr(start, end - start));
    rec.fields.push_back(std::move(field));
    if (rec.raw.empty()) continue;
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw ValidationError("CSV input has no header row");
  Table table;
  table.header = std::move(records.front());
  table.rows.assign(std::make_move_iterator(records.begin() + 1),
                    std::make_move_iterator(records.end()));
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string format_full(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view text, double& out) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

}  // namespace fairot::csv
