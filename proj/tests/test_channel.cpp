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

#include "doctest.h"
#include "testutil.hpp"

#include "nfthin/channel.hpp"
#include "nfthin/csv.hpp"

#include <sstream>

using namespace nfthin;
using testutil::kPi;

namespace {

const double kLambda = wavelength_from_frequency(30e9);
ArrayGeometry<double> full() { return ArrayGeometry<double>::uniform(320, kLambda / 2, kLambda); }

}  // namespace

TEST_CASE("pathloss") {
  CHECK(pathloss(0.01, 10.0) == doctest::Approx(6.333e-9).epsilon(1e-3));
  CHECK(pathloss(0.01, 10.0) == doctest::Approx(1e-4 / (16 * kPi * kPi * 100)).epsilon(1e-15));
  CHECK(pathloss(0.01, 20.0) == doctest::Approx(pathloss(0.01, 10.0) / 4));
  CHECK(pathloss(0.02, 10.0) == doctest::Approx(pathloss(0.01, 10.0) * 4));
  CHECK_THROWS_AS(pathloss(0.01, 0.0), std::domain_error);
}

TEST_CASE("channel vector matches the element-wise model") {
  const auto g = ArrayGeometry<double>::uniform(9, kLambda / 2, kLambda);
  const auto b = ThinningVector::from_bit_string("110010011", edge_elements(9));
  const UserLocation<double> u{0.35, 0.5};
  const auto h = channel_vector(g, b, u);
  const double beta = kLambda * kLambda / std::pow(4 * kPi * 0.5, 2);
  const std::complex<double> common = std::sqrt(beta) * std::polar(1.0, -2 * kPi / kLambda * 0.5);
  for (int n = 0; n < 9; ++n) {
    const auto ref = b.active(n) ? common * testutil::naive_entry(g.positions()[n], kLambda, 0.35, 0.5, 9)
                                 : std::complex<double>(0);
    CHECK(std::abs(h[n] - ref) < 1e-15);
  }
}

TEST_CASE("column norm equals beta N_T / N for every mask") {
  nfthin::Rng rng(11);
  const auto g = full();
  for (int trial = 0; trial < 200; ++trial) {
    const int nt = 2 + static_cast<int>(rng() % 319);
    const auto b = testutil::random_mask(320, nt, edge_elements(320), rng);
    const UserLocation<double> u{rng.uniform(-1.0, 1.0), rng.uniform(3.2, 72.0)};
    const auto h = channel_vector(g, b, u);
    const double expected = pathloss(kLambda, u.range) * nt / 320.0;
    CHECK(testutil::rel_err(h.squaredNorm(), expected) < 1e-12);
  }
  const UserLocation<double> u{0.2, 10.0};
  CHECK(testutil::rel_err(channel_vector(g, ThinningVector::all_active(320), u).squaredNorm(),
                          pathloss(kLambda, 10.0)) < 1e-12);
}

TEST_CASE("co-located users give identical columns") {
  const auto g = full();
  const UserLocation<double> u{0.1, 5.0};
  const auto h = channel_matrix(g, ThinningVector::all_active(320), {u, u});
  CHECK((h.entries.col(0) - h.entries.col(1)).norm() == 0.0);
  CHECK(h.n_users() == 2);
  CHECK(h.n_elements() == 320);
}

TEST_CASE("validity: strict rejects r <= 2D, lenient accepts") {
  const auto g = full();
  const auto b = ThinningVector::all_active(320);
  const UserLocation<double> near{0.0, 1.0};
  CHECK_THROWS_AS(channel_vector(g, b, near), ValidityError);
  ChannelOptions lenient;
  lenient.validity = ValidityMode::lenient;
  CHECK(channel_vector(g, b, near, lenient).allFinite());
  CHECK_THROWS_AS(channel_vector(g, ThinningVector::all_active(5), UserLocation<double>{0.0, 10.0}),
                  std::invalid_argument);
}

TEST_CASE("norm_count override") {
  const auto g = full();
  ChannelOptions o;
  o.norm_count = 32;
  const UserLocation<double> u{0.0, 10.0};
  nfthin::Rng rng(2);
  const auto b = testutil::random_mask(320, 32, edge_elements(320), rng);
  CHECK(testutil::rel_err(channel_vector(g, b, u, o).squaredNorm(), pathloss(kLambda, 10.0)) < 1e-12);
}

TEST_CASE("scenario sampling") {
  const auto s = sample_scenario(16, {3.18, 72.6}, {-kPi / 3, kPi / 3}, 42);
  CHECK(s.size() == 16);
  for (const auto& u : s.users) {
    CHECK(u.range >= 3.18);
    CHECK(u.range <= 72.6);
    CHECK(std::abs(u.angle) <= kPi / 3);
  }
  CHECK(s == sample_scenario(16, {3.18, 72.6}, {-kPi / 3, kPi / 3}, 42));
  CHECK_FALSE(s == sample_scenario(16, {3.18, 72.6}, {-kPi / 3, kPi / 3}, 43));

  const auto one = sample_scenario(1, {5.0, 5.0}, {0.0, 0.0}, 1);
  CHECK(one.users[0].range == 5.0);
  CHECK(one.users[0].angle == 0.0);

  // One stream: user k's draws do not depend on how many users follow.
  const auto shorter = sample_scenario(4, {3.18, 72.6}, {-kPi / 3, kPi / 3}, 42);
  for (int k = 0; k < 4; ++k) CHECK(shorter.users[static_cast<std::size_t>(k)] == s.users[static_cast<std::size_t>(k)]);

  CHECK_THROWS_AS(sample_scenario(0, {1, 2}, {0, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_scenario(1, {2, 1}, {0, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_scenario(1, {0, 1}, {0, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_scenario(1, {1, 2}, {-2, 0}, 1), std::invalid_argument);
}

TEST_CASE("rng streams") {
  nfthin::Rng a(9), b(9);
  for (int i = 0; i < 1000; ++i) CHECK(a() == b());
  nfthin::Rng c(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 7) == derive_seed(5, 7));
}

TEST_CASE("scenario csv round trip is exact") {
  const auto s = sample_scenario(7, {3.18, 72.6}, {-kPi / 3, kPi / 3}, 5);
  std::stringstream ss;
  write_scenario_csv(ss, s);
  const auto back = read_scenario_csv(ss);
  REQUIRE(back.size() == 7);
  for (std::size_t k = 0; k < 7; ++k) CHECK(back.users[k] == s.users[k]);
}

TEST_CASE("scenario csv diagnostics") {
  std::stringstream bad_header("id,theta,range\n0,0,1\n");
  CHECK_THROWS_AS(read_scenario_csv(bad_header), std::runtime_error);
  std::stringstream bad_value("user_id,theta_rad,range_m\n0,abc,1\n");
  CHECK_THROWS_WITH(read_scenario_csv(bad_value), doctest::Contains("line 2"));
  std::stringstream bad_count("user_id,theta_rad,range_m\n0,0.1\n");
  CHECK_THROWS(read_scenario_csv(bad_count));
  std::stringstream empty("user_id,theta_rad,range_m\n");
  CHECK_THROWS(read_scenario_csv(empty));
}

TEST_CASE("csv quoting and reading") {
  CHECK(csv::quote("plain") == "plain");
  CHECK(csv::quote("a,b") == "\"a,b\"");
  CHECK(csv::quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  std::stringstream ss;
  csv::write_row(ss, {"x", "a,b", "q\"q"});
  csv::write_row(ss, {"1", "2", "line\nbreak"});
  const auto t = csv::read(ss);
  CHECK(t.header == std::vector<std::string>{"x", "a,b", "q\"q"});
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][2] == "line\nbreak");
  CHECK(csv::format_double(0.1) == "0.10000000000000001");
  CHECK(csv::parse_double("0.10000000000000001", 1) == 0.1);
  CHECK_THROWS(csv::parse_double("1.5x", 3));
}
