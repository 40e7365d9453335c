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

// Minimal RFC-4180 reader/writer. Floats are written with 17 significant digits.

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nfthin::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string format_double(double v);
double parse_double(std::string_view field, std::size_t line);

std::string quote(std::string_view field);
void write_row(std::ostream& os, const std::vector<std::string>& fields);

Table read(std::istream& is);

}  // namespace nfthin::csv
