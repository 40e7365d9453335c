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

// Free-space line-of-sight near-field channels and random user drops.

#pragma once

#include "nfthin/array_core.hpp"

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <vector>

namespace nfthin {

// Thrown in strict mode when a user sits inside 2D, where the response approximation breaks.
class ValidityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class ValidityMode { strict, lenient };

struct ChannelOptions {
  Eigen::Index norm_count = 0;  // 0: use the geometry's element count
  ValidityMode validity = ValidityMode::strict;
};

// Free-space path gain beta = lambda^2 / ((4 pi)^2 r^2).
template <typename Scalar>
Scalar pathloss(Scalar wavelength, Scalar range) {
  if (!(range > Scalar(0))) throw std::domain_error("pathloss: range must be positive");
  const Scalar four_pi = Scalar(4) * std::numbers::pi_v<Scalar>;
  return wavelength * wavelength / (four_pi * four_pi * range * range);
}

// h = sqrt(beta) exp(-j 2 pi r / lambda) (b .* a(theta, r))
template <typename Scalar>
CVector<Scalar> channel_vector(const ArrayGeometry<Scalar>& geom, const ThinningVector& b,
                               const UserLocation<Scalar>& u, const ChannelOptions& opts = {}) {
  if (b.size() != geom.size()) throw std::invalid_argument("channel_vector: mask/geometry size mismatch");
  validate_point(u);
  if (opts.validity == ValidityMode::strict && !geom.approximation_valid(u.range))
    throw ValidityError("channel_vector: user range " + std::to_string(u.range) +
                        " m is not beyond 2D = " + std::to_string(geom.min_valid_range()) + " m");
  const Eigen::Index norm = opts.norm_count > 0 ? opts.norm_count : geom.size();
  const Scalar beta = pathloss(geom.wavelength(), u.range);
  const std::complex<Scalar> g = std::polar(std::sqrt(beta), -geom.wavenumber() * u.range);
  return g * apply_thinning(steering_vector(geom, u, norm), b);
}

template <typename Scalar>
struct ChannelMatrix {
  CMatrix<Scalar> entries;   // N x K, column k is user k
  RVector<Scalar> pathloss;  // beta_k

  Eigen::Index n_elements() const noexcept { return entries.rows(); }
  Eigen::Index n_users() const noexcept { return entries.cols(); }
};

template <typename Scalar>
ChannelMatrix<Scalar> channel_matrix(const ArrayGeometry<Scalar>& geom, const ThinningVector& b,
                                     const std::vector<UserLocation<Scalar>>& users,
                                     const ChannelOptions& opts = {}) {
  if (users.empty()) throw std::invalid_argument("channel_matrix: no users");
  ChannelMatrix<Scalar> h;
  h.entries.resize(geom.size(), static_cast<Eigen::Index>(users.size()));
  h.pathloss.resize(static_cast<Eigen::Index>(users.size()));
  for (std::size_t k = 0; k < users.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    h.entries.col(col) = channel_vector(geom, b, users[k], opts);
    h.pathloss[col] = pathloss(geom.wavelength(), users[k].range);
  }
  return h;
}

struct Interval {
  double lo = 0;
  double hi = 0;
};

struct Scenario {
  std::vector<UserLocation<double>> users;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return users.size(); }
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// i.i.d. uniform user drops: per user one angle draw then one range draw from a single stream.
Scenario sample_scenario(int n_users, Interval range, Interval angle, std::uint64_t seed);

// CSV with header `user_id,theta_rad,range_m`, 17 significant digits.
void write_scenario_csv(std::ostream& os, const Scenario& s);
Scenario read_scenario_csv(std::istream& is);

}  // namespace nfthin
