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

// Linear array geometry, binary thinning masks and the near-field array response.

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nfthin {

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Nominal propagation speed used for every frequency/wavelength conversion.
inline constexpr double kSpeedOfLight = 3.0e8;

template <typename Scalar = double>
constexpr Scalar wavelength_from_frequency(Scalar frequency_hz) {
  return static_cast<Scalar>(kSpeedOfLight) / frequency_hz;
}

template <typename Scalar = double>
constexpr Scalar deg2rad(Scalar deg) {
  return deg * std::numbers::pi_v<Scalar> / Scalar(180);
}

template <typename Scalar = double>
constexpr Scalar rad2deg(Scalar rad) {
  return rad * Scalar(180) / std::numbers::pi_v<Scalar>;
}

// Element positions along the array axis (meters) plus the carrier wavelength.
// Positions are strictly increasing; factories put element 0 at the origin.
template <typename Scalar = double>
class ArrayGeometry {
 public:
  ArrayGeometry(Scalar wavelength, RVector<Scalar> positions)
      : wavelength_(wavelength), positions_(std::move(positions)) {
    if (!(wavelength_ > Scalar(0)) || !std::isfinite(wavelength_))
      throw std::invalid_argument("ArrayGeometry: wavelength must be positive");
    if (positions_.size() < 2)
      throw std::invalid_argument("ArrayGeometry: need at least two elements");
    for (Eigen::Index n = 0; n < positions_.size(); ++n) {
      if (!std::isfinite(positions_[n]))
        throw std::invalid_argument("ArrayGeometry: non-finite element position");
      if (n > 0 && !(positions_[n] > positions_[n - 1]))
        throw std::invalid_argument("ArrayGeometry: positions must be strictly increasing");
    }
  }

  static ArrayGeometry uniform(Eigen::Index n_elements, Scalar spacing, Scalar wavelength) {
    if (n_elements < 2) throw std::invalid_argument("ArrayGeometry: need at least two elements");
    RVector<Scalar> pos = RVector<Scalar>::LinSpaced(n_elements, Scalar(0), Scalar(n_elements - 1));
    return ArrayGeometry(wavelength, pos * spacing);
  }

  Scalar wavelength() const noexcept { return wavelength_; }
  const RVector<Scalar>& positions() const noexcept { return positions_; }
  Eigen::Index size() const noexcept { return positions_.size(); }
  Scalar aperture() const noexcept { return positions_[size() - 1] - positions_[0]; }
  Scalar wavenumber() const noexcept { return Scalar(2) * std::numbers::pi_v<Scalar> / wavelength_; }

  // Lower range bound (2D) of the Fresnel approximation used by steering_vector.
  Scalar min_valid_range() const noexcept { return Scalar(2) * aperture(); }
  bool approximation_valid(Scalar range) const noexcept { return range > min_valid_range(); }

  ArrayGeometry translated(Scalar offset) const {
    return ArrayGeometry(wavelength_, (positions_.array() + offset).matrix());
  }

 private:
  Scalar wavelength_;
  RVector<Scalar> positions_;
};

// Polar coordinates relative to element 0: angle from boresight (rad), range (m).
template <typename Scalar = double>
struct PolarPoint {
  Scalar angle{0};
  Scalar range{1};

  friend bool operator==(const PolarPoint&, const PolarPoint&) = default;
};

template <typename Scalar = double>
using FocusPoint = PolarPoint<Scalar>;
template <typename Scalar = double>
using UserLocation = PolarPoint<Scalar>;

template <typename Scalar>
void validate_point(const PolarPoint<Scalar>& p) {
  if (!(p.range > Scalar(0)) || !std::isfinite(p.range))
    throw std::domain_error("range must be positive and finite");
  if (!(std::abs(p.angle) < std::numbers::pi_v<Scalar> / Scalar(2)))
    throw std::domain_error("angle must lie strictly inside (-pi/2, pi/2)");
}

// Binary activation mask b over N elements with a mandatory-active index set F.
class ThinningVector {
 public:
  ThinningVector() = default;
  ThinningVector(std::vector<std::uint8_t> mask, std::vector<int> fixed_set = {});

  static ThinningVector all_active(int n_elements);
  static ThinningVector from_indices(int n_elements, const std::vector<int>& active,
                                     std::vector<int> fixed_set = {});
  // MSB-first bit string: character 0 is element 0.
  static ThinningVector from_bit_string(std::string_view bits, std::vector<int> fixed_set = {});

  int size() const noexcept { return static_cast<int>(mask_.size()); }
  bool active(int n) const { return mask_.at(static_cast<std::size_t>(n)) != 0; }
  int active_count() const noexcept { return active_count_; }
  double thinning_ratio() const noexcept {
    return mask_.empty() ? 0.0 : static_cast<double>(active_count_) / static_cast<double>(mask_.size());
  }
  const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }
  const std::vector<int>& fixed_set() const noexcept { return fixed_; }
  std::vector<int> active_indices() const;
  std::string to_bit_string() const;

  template <typename Scalar = double>
  RVector<Scalar> weights() const {
    RVector<Scalar> w(size());
    for (int n = 0; n < size(); ++n) w[n] = mask_[static_cast<std::size_t>(n)] ? Scalar(1) : Scalar(0);
    return w;
  }

  friend bool operator==(const ThinningVector& a, const ThinningVector& b) {
    return a.mask_ == b.mask_ && a.fixed_ == b.fixed_;
  }

 private:
  std::vector<std::uint8_t> mask_;
  std::vector<int> fixed_;
  int active_count_ = 0;
};

// Fixed set holding the two edge elements {0, N-1}.
std::vector<int> edge_elements(int n_elements);

// Normalized near-field response:
//   a_n = exp(-j k (rho_n sin(theta) - rho_n^2 cos^2(theta) / (2 r))) / sqrt(norm_count)
template <typename Scalar>
CVector<Scalar> steering_vector(const ArrayGeometry<Scalar>& geom, const FocusPoint<Scalar>& focus,
                                Eigen::Index norm_count) {
  validate_point(focus);
  if (norm_count < 1) throw std::invalid_argument("steering_vector: norm_count must be >= 1");
  const Scalar k = geom.wavenumber();
  const Scalar s = std::sin(focus.angle);
  const Scalar c2 = std::cos(focus.angle) * std::cos(focus.angle);
  const auto& rho = geom.positions().array();
  const RVector<Scalar> phase =
      (-k * (rho * s - rho.square() * (c2 / (Scalar(2) * focus.range)))).matrix();
  const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(norm_count));
  CVector<Scalar> out(geom.size());
  for (Eigen::Index n = 0; n < geom.size(); ++n) out[n] = std::polar(scale, phase[n]);
  return out;
}

template <typename Scalar>
Scalar rayleigh_distance(const ArrayGeometry<Scalar>& geom) {
  const Scalar d = geom.aperture();
  return Scalar(2) * d * d / geom.wavelength();
}

// Row-wise Hadamard product with the mask; inactive rows become exactly zero.
template <typename Derived>
typename Derived::PlainObject apply_thinning(const Eigen::MatrixBase<Derived>& v, const ThinningVector& b) {
  if (v.rows() != b.size()) throw std::invalid_argument("apply_thinning: length mismatch");
  typename Derived::PlainObject out = v;
  for (int n = 0; n < b.size(); ++n)
    if (!b.active(n)) out.row(n).setZero();
  return out;
}

}  // namespace nfthin
