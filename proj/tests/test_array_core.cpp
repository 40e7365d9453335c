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

#include "nfthin/array_core.hpp"

#include <algorithm>

using namespace nfthin;
using testutil::kPi;

TEST_CASE("uniform geometry") {
  const auto g = ArrayGeometry<double>::uniform(5, 0.25, 0.5);
  CHECK(g.size() == 5);
  CHECK(g.positions()[0] == 0.0);
  CHECK(g.aperture() == doctest::Approx(1.0));
  CHECK(g.min_valid_range() == doctest::Approx(2.0));
  CHECK(g.approximation_valid(2.5));
  CHECK_FALSE(g.approximation_valid(2.0));
  CHECK(g.wavenumber() == doctest::Approx(4 * kPi));
}

TEST_CASE("geometry rejects bad input") {
  CHECK_THROWS_AS(ArrayGeometry<double>::uniform(1, 0.1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(ArrayGeometry<double>::uniform(4, 0.1, 0.0), std::invalid_argument);
  Eigen::VectorXd p(3);
  p << 0.0, 0.2, 0.2;
  CHECK_THROWS_AS(ArrayGeometry<double>(0.1, p), std::invalid_argument);
  p << 0.0, 0.3, 0.2;
  CHECK_THROWS_AS(ArrayGeometry<double>(0.1, p), std::invalid_argument);
  p << 0.0, std::nan(""), 0.2;
  CHECK_THROWS_AS(ArrayGeometry<double>(0.1, p), std::invalid_argument);
}

TEST_CASE("rayleigh distance at the figure scales") {
  const double l15 = wavelength_from_frequency(15e9);
  const auto fig1 = ArrayGeometry<double>::uniform(256, 2 * l15, l15);
  CHECK(rayleigh_distance(fig1) == doctest::Approx(10.3e3).epsilon(0.03));

  const double l30 = wavelength_from_frequency(30e9);
  const auto full = ArrayGeometry<double>::uniform(320, 0.5 * l30, l30);
  CHECK(full.min_valid_range() == doctest::Approx(3.18).epsilon(0.01));
  CHECK(rayleigh_distance(full) / 7 == doctest::Approx(72.6).epsilon(0.01));

  const auto doubled = ArrayGeometry<double>::uniform(639, 0.5 * l30, l30);
  CHECK(rayleigh_distance(doubled) == doctest::Approx(4 * rayleigh_distance(full)));
}

TEST_CASE("steering vector matches the element-wise formula") {
  const double lambda = 0.01;
  Eigen::VectorXd pos(5);
  pos << 0.0, 0.004, 0.011, 0.02, 0.031;
  const ArrayGeometry<double> g(lambda, pos);
  for (double theta : {-1.2, -0.3, 0.0, 0.7, 1.4})
    for (double r : {0.2, 3.0, 1e4}) {
      const auto a = steering_vector(g, FocusPoint<double>{theta, r}, 7);
      for (int n = 0; n < 5; ++n) CHECK(std::abs(a[n] - testutil::naive_entry(pos[n], lambda, theta, r, 7)) < 1e-12);
    }
}

TEST_CASE("steering vector: first element and magnitudes") {
  const auto g = ArrayGeometry<double>::uniform(16, 0.005, 0.01);
  const auto a = steering_vector(g, FocusPoint<double>{0.4, 0.9}, 16);
  CHECK(std::abs(std::arg(a[0])) < 1e-15);
  for (int n = 0; n < 16; ++n) CHECK(std::abs(a[n]) * 4.0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("steering vector: far-field limit") {
  const double lambda = 0.01;
  const auto g = ArrayGeometry<double>::uniform(64, lambda / 2, lambda);
  const double theta = 0.5;
  const auto a = steering_vector(g, FocusPoint<double>{theta, 1e12}, 64);
  for (int n = 0; n < 64; ++n) {
    const double ff = -2 * kPi / lambda * g.positions()[n] * std::sin(theta);
    CHECK(std::abs(std::remainder(std::arg(a[n]) - ff, 2 * kPi)) < 1e-6);
  }
}

TEST_CASE("steering vector: two elements at endfire-adjacent angle") {
  const double lambda = 1.0;
  const auto g = ArrayGeometry<double>::uniform(2, 0.5, lambda);
  const auto a = steering_vector(g, FocusPoint<double>{kPi / 2 - 1e-9, 1e6}, 2);
  CHECK(std::abs(std::abs(std::arg(a[1])) - kPi) < 1e-6);
}

TEST_CASE("steering vector: invalid points") {
  const auto g = ArrayGeometry<double>::uniform(4, 0.005, 0.01);
  CHECK_THROWS_AS(steering_vector(g, FocusPoint<double>{0.0, 0.0}, 4), std::domain_error);
  CHECK_THROWS_AS(steering_vector(g, FocusPoint<double>{0.0, -1.0}, 4), std::domain_error);
  CHECK_THROWS_AS(steering_vector(g, FocusPoint<double>{kPi / 2, 1.0}, 4), std::domain_error);
  CHECK_THROWS_AS(steering_vector(g, FocusPoint<double>{0.0, 1.0}, 0), std::invalid_argument);
}

TEST_CASE("translation: global phase in the far field, gains preserved") {
  nfthin::Rng rng(3);
  const double lambda = 0.01;
  const auto g = ArrayGeometry<double>::uniform(24, lambda / 2, lambda);
  const auto shifted = g.translated(0.37);
  for (int trial = 0; trial < 50; ++trial) {
    const FocusPoint<double> p{rng.uniform(-1.2, 1.2), 1e9};
    const FocusPoint<double> q{rng.uniform(-1.2, 1.2), 1e9};
    const auto a = steering_vector(g, p, 24);
    const auto b = steering_vector(shifted, p, 24);
    const std::complex<double> ratio = b[0] / a[0];
    for (int n = 1; n < 24; ++n) CHECK(std::abs(b[n] / a[n] - ratio) < 1e-6);
    const double g0 = std::norm(a.dot(steering_vector(g, q, 24)));
    const double g1 = std::norm(b.dot(steering_vector(shifted, q, 24)));
    CHECK(std::abs(g1 - g0) <= 1e-6 * std::max(g0, 1e-3));
  }
}

TEST_CASE("translation in the near field adds a linear phase") {
  const double lambda = 0.01, c = 0.2;
  const auto g = ArrayGeometry<double>::uniform(16, lambda / 2, lambda);
  const FocusPoint<double> p{0.3, 1.5};
  const auto a = steering_vector(g, p, 16);
  const auto b = steering_vector(g.translated(c), p, 16);
  const double k = 2 * kPi / lambda, q = std::cos(0.3) * std::cos(0.3) / (2 * 1.5);
  for (int n = 0; n < 16; ++n) {
    const double rho = g.positions()[n];
    const double extra = -k * (c * std::sin(0.3) - (2 * rho * c + c * c) * q);
    CHECK(std::abs(b[n] - a[n] * std::polar(1.0, extra)) < 1e-9);
  }
}

TEST_CASE("thinning vector basics") {
  const auto b = ThinningVector::from_bit_string("1001100001", edge_elements(10));
  CHECK(b.size() == 10);
  CHECK(b.active_count() == 4);
  CHECK(b.thinning_ratio() == doctest::Approx(0.4));
  CHECK(b.active_indices() == std::vector<int>{0, 3, 4, 9});
  CHECK(b.to_bit_string() == "1001100001");
  CHECK(b.fixed_set() == std::vector<int>{0, 9});
  CHECK(b.weights<double>().sum() == 4.0);
  CHECK(ThinningVector::all_active(7).active_count() == 7);
}

TEST_CASE("thinning vector rejects infeasible input") {
  CHECK_THROWS_AS(ThinningVector::from_bit_string("0110", edge_elements(4)), std::invalid_argument);
  CHECK_THROWS_AS(ThinningVector::from_bit_string("01x0"), std::invalid_argument);
  CHECK_THROWS_AS(ThinningVector::from_indices(4, {4}), std::invalid_argument);
  CHECK_THROWS_AS(ThinningVector::from_indices(4, {0}, {7}), std::invalid_argument);
  CHECK_THROWS_AS(edge_elements(1), std::invalid_argument);
}

TEST_CASE("apply_thinning") {
  nfthin::Rng rng(5);
  const auto v = testutil::random_complex(12, 1, rng);
  CHECK(apply_thinning(v, ThinningVector::all_active(12)) == v);

  const auto edges_only = ThinningVector::from_indices(12, {0, 11}, edge_elements(12));
  const auto e = apply_thinning(v, edges_only);
  for (int n = 0; n < 12; ++n) CHECK((e(n) != std::complex<double>(0)) == (n == 0 || n == 11));

  for (int trial = 0; trial < 100; ++trial) {
    const auto b = testutil::random_mask(12, 1 + static_cast<int>(rng() % 12), {}, rng);
    const auto out = apply_thinning(v, b);
    for (int n = 0; n < 12; ++n) CHECK((out(n) != std::complex<double>(0)) == b.active(n));
  }
  CHECK_THROWS_AS(apply_thinning(v, ThinningVector::all_active(11)), std::invalid_argument);
}
