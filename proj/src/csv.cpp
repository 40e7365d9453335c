// SPDX-License-Identifier: Apache-2.0
//
// nf-thin: thinned sparse arrays for near-field multi-user MIMO
// Copyright (C) 2026 The nf-thin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "nfthin/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace nfthin::csv {

std::string format_double(double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

double parse_double(std::string_view field, std::size_t line) {
  double v = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw std::runtime_error("csv line " + std::to_string(line) + ": not a number: '" + std::string(field) + "'");
  return v;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << quote(fields[i]);
  }
  os << '\n';
}

namespace {

// Returns false at end of input.
bool read_record(std::istream& is, std::vector<std::string>& out) {
  out.clear();
  if (is.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  char c;
  while (is.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (is.peek() == '"') {
          is.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw std::runtime_error("csv: unterminated quoted field");
  out.push_back(std::move(field));
  return true;
}

}  // namespace

Table read(std::istream& is) {
  Table t;
  if (!read_record(is, t.header)) throw std::runtime_error("csv: missing header row");
  std::vector<std::string> rec;
  while (read_record(is, rec)) {
    if (rec.size() == 1 && rec[0].empty()) continue;
    t.rows.push_back(rec);
  }
  return t;
}

}  // namespace nfthin::csv
