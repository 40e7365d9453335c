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

#include "nfthin/channel.hpp"

#include "nfthin/csv.hpp"
#include "nfthin/rng.hpp"

#include <istream>
#include <ostream>

namespace nfthin {

Scenario sample_scenario(int n_users, Interval range, Interval angle, std::uint64_t seed) {
  if (n_users < 1) throw std::invalid_argument("sample_scenario: need at least one user");
  if (!(range.lo <= range.hi) || !(angle.lo <= angle.hi))
    throw std::invalid_argument("sample_scenario: empty sampling interval");
  if (!(range.lo > 0)) throw std::invalid_argument("sample_scenario: ranges must be positive");
  const double half_pi = std::numbers::pi / 2;
  if (!(angle.lo > -half_pi) || !(angle.hi < half_pi))
    throw std::invalid_argument("sample_scenario: angles must lie inside (-pi/2, pi/2)");

  Rng rng(seed);
  Scenario s;
  s.seed = seed;
  s.users.reserve(static_cast<std::size_t>(n_users));
  for (int k = 0; k < n_users; ++k) {
    UserLocation<double> u;
    u.angle = rng.uniform(angle.lo, angle.hi);
    u.range = rng.uniform(range.lo, range.hi);
    s.users.push_back(u);
  }
  return s;
}

void write_scenario_csv(std::ostream& os, const Scenario& s) {
  os << "user_id,theta_rad,range_m\n";
  for (std::size_t k = 0; k < s.users.size(); ++k)
    os << k << ',' << csv::format_double(s.users[k].angle) << ',' << csv::format_double(s.users[k].range)
       << '\n';
}

Scenario read_scenario_csv(std::istream& is) {
  const auto table = csv::read(is);
  if (table.header != std::vector<std::string>{"user_id", "theta_rad", "range_m"})
    throw std::runtime_error("scenario csv: expected header user_id,theta_rad,range_m");
  Scenario s;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (row.size() != 3) throw std::runtime_error("scenario csv: line " + std::to_string(i + 2) + ": expected 3 fields");
    UserLocation<double> u;
    u.angle = csv::parse_double(row[1], i + 2);
    u.range = csv::parse_double(row[2], i + 2);
    validate_point(u);
    s.users.push_back(u);
  }
  if (s.users.empty()) throw std::runtime_error("scenario csv: no users");
  return s;
}

}  // namespace nfthin
