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

// Angle/range beam patterns, grating-lobe predictions and peak sidelobe level.

#pragma once

#include "nfthin/array_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace nfthin {

enum class PatternAxis { sine, angle, range };

template <typename Scalar = double>
struct BeamPattern {
  PatternAxis axis_kind = PatternAxis::sine;
  RVector<Scalar> axis;    // sin(theta), theta [rad] or r [m]
  RVector<Scalar> values;  // linear |.|^2
  FocusPoint<Scalar> focus;
  Scalar divisor{1};       // 1/divisor normalizes the coherent sum

  Eigen::Index size() const noexcept { return values.size(); }
};

// Presentation-layer conversion with a floor (default -80 dB).
template <typename Scalar>
Scalar to_db(Scalar linear, Scalar floor_db = Scalar(-80)) {
  if (!(linear > Scalar(0))) return floor_db;
  return std::max(floor_db, Scalar(10) * std::log10(linear));
}

template <typename Scalar = double>
RVector<Scalar> sine_grid(Eigen::Index n_points = 8192) {
  if (n_points < 2) throw std::invalid_argument("sine_grid: need at least two points");
  return RVector<Scalar>::LinSpaced(n_points, Scalar(-1), Scalar(1));
}

template <typename Scalar = double>
RVector<Scalar> log_range_grid(Scalar r_min, Scalar r_max, Eigen::Index n_points = 4096) {
  if (!(r_min > Scalar(0)) || !(r_max > r_min) || n_points < 2)
    throw std::invalid_argument("log_range_grid: need 0 < r_min < r_max and two points");
  RVector<Scalar> g = RVector<Scalar>::LinSpaced(n_points, std::log(r_min), std::log(r_max)).array().exp();
  g[0] = r_min;
  g[n_points - 1] = r_max;
  return g;
}

namespace detail {

template <typename Scalar>
Scalar resolve_divisor(const ArrayGeometry<Scalar>& geom, Scalar divisor) {
  return divisor > Scalar(0) ? divisor : static_cast<Scalar>(geom.size());
}

template <typename Scalar>
RVector<Scalar> active_positions(const ArrayGeometry<Scalar>& geom, const ThinningVector& b) {
  if (b.size() != geom.size()) throw std::invalid_argument("pattern: mask/geometry size mismatch");
  const auto idx = b.active_indices();
  RVector<Scalar> rho(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) rho[static_cast<Eigen::Index>(i)] = geom.positions()[idx[i]];
  return rho;
}

// |(1/div) sum_n exp(j phase_n)|^2
template <typename Derived>
typename Derived::Scalar coherent_gain(const Eigen::ArrayBase<Derived>& phase, typename Derived::Scalar div) {
  using Scalar = typename Derived::Scalar;
  Scalar re{0}, im{0};
  for (Eigen::Index n = 0; n < phase.size(); ++n) {
    re += std::cos(phase(n));
    im += std::sin(phase(n));
  }
  return (re * re + im * im) / (div * div);
}

}  // namespace detail

// G(b, u) = |(1/div) sum_n b_n exp(j k rho_n (u - sin(theta_focus)))|^2 over a grid of u = sin(theta).
template <typename Scalar>
BeamPattern<Scalar> angle_pattern(const ArrayGeometry<Scalar>& geom, const ThinningVector& b, Scalar focus_angle,
                                  const RVector<Scalar>& grid, Scalar divisor = Scalar(0)) {
  if (grid.size() == 0) throw std::invalid_argument("angle_pattern: empty grid");
  BeamPattern<Scalar> out;
  out.axis_kind = PatternAxis::sine;
  out.axis = grid;
  out.focus = {focus_angle, std::numeric_limits<Scalar>::infinity()};
  out.divisor = detail::resolve_divisor(geom, divisor);
  const RVector<Scalar> rho = detail::active_positions(geom, b);
  const Scalar k = geom.wavenumber();
  const Scalar u0 = std::sin(focus_angle);
  out.values.resize(grid.size());
  for (Eigen::Index m = 0; m < grid.size(); ++m)
    out.values[m] = detail::coherent_gain((k * (grid[m] - u0)) * rho.array(), out.divisor);
  return out;
}

// Range cut at the focus angle: |(1/div) sum_n b_n exp(-j k rho_n^2 cos^2(theta) r_eff)|^2,
// r_eff = |(r - r_f) / (2 r r_f)|.
template <typename Scalar>
BeamPattern<Scalar> range_pattern(const ArrayGeometry<Scalar>& geom, const ThinningVector& b,
                                  const FocusPoint<Scalar>& focus, const RVector<Scalar>& ranges,
                                  Scalar divisor = Scalar(0)) {
  validate_point(focus);
  if (ranges.size() == 0) throw std::invalid_argument("range_pattern: empty grid");
  if (!(ranges.minCoeff() > Scalar(0))) throw std::domain_error("range_pattern: ranges must be positive");
  BeamPattern<Scalar> out;
  out.axis_kind = PatternAxis::range;
  out.axis = ranges;
  out.focus = focus;
  out.divisor = detail::resolve_divisor(geom, divisor);
  const RVector<Scalar> rho2 = detail::active_positions(geom, b).array().square();
  const Scalar c2 = std::cos(focus.angle) * std::cos(focus.angle);
  const Scalar k = geom.wavenumber();
  out.values.resize(ranges.size());
  for (Eigen::Index m = 0; m < ranges.size(); ++m) {
    const Scalar r = ranges[m];
    const Scalar r_eff = std::abs((r - focus.range) / (Scalar(2) * r * focus.range));
    out.values[m] = detail::coherent_gain((-k * c2 * r_eff) * rho2.array(), out.divisor);
  }
  return out;
}

// |a^H(theta_f, r_f) (b .* a(theta, r))|^2 over a (range x angle) grid, angles in radians.
// Evaluated one range row at a time.
template <typename Scalar>
RMatrix<Scalar> pattern_2d(const ArrayGeometry<Scalar>& geom, const ThinningVector& b, const FocusPoint<Scalar>& focus,
                           const RVector<Scalar>& angles, const RVector<Scalar>& ranges, Scalar divisor = Scalar(0)) {
  validate_point(focus);
  if (angles.size() == 0 || ranges.size() == 0) throw std::invalid_argument("pattern_2d: empty grid");
  if (!(ranges.minCoeff() > Scalar(0))) throw std::domain_error("pattern_2d: ranges must be positive");
  const Scalar div = detail::resolve_divisor(geom, divisor);
  const RVector<Scalar> rho = detail::active_positions(geom, b);
  const auto rho2 = rho.array().square();
  const Scalar k = geom.wavenumber();
  const Scalar s0 = std::sin(focus.angle);
  const Scalar q0 = std::cos(focus.angle) * std::cos(focus.angle) / focus.range;
  RMatrix<Scalar> out(ranges.size(), angles.size());
  for (Eigen::Index i = 0; i < ranges.size(); ++i) {
    for (Eigen::Index j = 0; j < angles.size(); ++j) {
      const Scalar s = std::sin(angles[j]);
      const Scalar q = std::cos(angles[j]) * std::cos(angles[j]) / ranges[i];
      out(i, j) = detail::coherent_gain((k * (s - s0)) * rho.array() - (k * (q - q0) / Scalar(2)) * rho2, div);
    }
  }
  return out;
}

template <typename Scalar = double>
struct GratingLobePrediction {
  std::vector<int> orders;
  std::vector<Scalar> angles;  // NaN for invisible orders
  std::vector<bool> visible;

  std::vector<Scalar> visible_angles() const {
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (visible[i]) out.push_back(angles[i]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

// sin(theta_q) = sin(theta_focus) + q lambda / d, q != 0. Lists every order up to one past the
// last visible one on each side, with visibility |sin(theta_q)| < 1.
template <typename Scalar>
GratingLobePrediction<Scalar> grating_lobe_angles(Scalar spacing, Scalar wavelength, Scalar focus_angle) {
  if (!(spacing > Scalar(0)) || !(wavelength > Scalar(0)))
    throw std::invalid_argument("grating_lobe_angles: spacing and wavelength must be positive");
  constexpr Scalar tol = Scalar(1e-12);
  const Scalar s0 = std::sin(focus_angle);
  const Scalar ratio = wavelength / spacing;
  const int q_max = static_cast<int>(std::ceil(Scalar(2) / ratio)) + 1;
  GratingLobePrediction<Scalar> out;
  for (int q = -q_max; q <= q_max; ++q) {
    if (q == 0) continue;
    const Scalar s = s0 + static_cast<Scalar>(q) * ratio;
    const bool vis = std::abs(s) < Scalar(1) - tol;
    out.orders.push_back(q);
    out.visible.push_back(vis);
    out.angles.push_back(vis ? std::asin(std::clamp(s, Scalar(-1), Scalar(1)))
                             : std::numeric_limits<Scalar>::quiet_NaN());
  }
  return out;
}

template <typename Scalar = double>
struct RangeLobeCandidate {
  int order = 0;
  Scalar range{0};
  bool physical = false;
};

// r_q = r_f d^2 cos^2 / (d^2 cos^2 + 2 q r_f lambda) for each requested order q.
// q = 0 is the focus itself. For q < 0 the value is negative or undefined; for q >= 1 it lands
// orders of magnitude inside min_valid_range (2D), where the response model does not apply, so
// these candidates are not reachable lobes. `physical` is r_q > max(0, min_valid_range).
template <typename Scalar>
std::vector<RangeLobeCandidate<Scalar>> range_lobe_candidates(Scalar spacing, Scalar wavelength,
                                                              const FocusPoint<Scalar>& focus,
                                                              const std::vector<int>& orders,
                                                              Scalar min_valid_range = Scalar(0)) {
  validate_point(focus);
  const Scalar a = spacing * spacing * std::cos(focus.angle) * std::cos(focus.angle);
  std::vector<RangeLobeCandidate<Scalar>> out;
  for (int q : orders) {
    RangeLobeCandidate<Scalar> c;
    c.order = q;
    const Scalar den = a + Scalar(2) * static_cast<Scalar>(q) * focus.range * wavelength;
    c.range = den == Scalar(0) ? -std::numeric_limits<Scalar>::infinity() : focus.range * a / den;
    c.physical = std::isfinite(c.range) && c.range > std::max(Scalar(0), min_valid_range);
    if (q == 0) c.physical = true;
    out.push_back(c);
  }
  return out;
}

template <typename Scalar = double>
struct PsllResult {
  Scalar psll_db{0};
  Scalar worst_sidelobe_angle{0};       // rad
  Scalar mainlobe_exclusion_halfwidth{0};  // in sin(theta)
};

inline constexpr double kDefaultMainlobeKappa = 2.0;

// PSLL = 10 log10(max_{u in S} G(b, u) / G(b, u0)), S = grid without |u - u0| < kappa lambda / D.
template <typename Scalar>
PsllResult<Scalar> psll(const ArrayGeometry<Scalar>& geom, const ThinningVector& b, Scalar focus_angle,
                        const RVector<Scalar>& grid, Scalar kappa = Scalar(kDefaultMainlobeKappa)) {
  const auto pattern = angle_pattern(geom, b, focus_angle, grid);
  const Scalar main = Scalar(b.active_count()) * Scalar(b.active_count()) / (pattern.divisor * pattern.divisor);
  if (!(main > Scalar(0))) throw std::domain_error("psll: mainlobe gain is zero");
  const Scalar u0 = std::sin(focus_angle);
  const Scalar half = kappa * geom.wavelength() / geom.aperture();
  Scalar worst = -1;
  Eigen::Index arg = -1;
  for (Eigen::Index m = 0; m < grid.size(); ++m) {
    if (std::abs(grid[m] - u0) < half) continue;
    if (pattern.values[m] > worst) {
      worst = pattern.values[m];
      arg = m;
    }
  }
  if (arg < 0) throw std::invalid_argument("psll: sidelobe region is empty");
  PsllResult<Scalar> r;
  r.psll_db = Scalar(10) * std::log10(std::max(worst, std::numeric_limits<Scalar>::min()) / main);
  r.worst_sidelobe_angle = std::asin(std::clamp(grid[arg], Scalar(-1), Scalar(1)));
  r.mainlobe_exclusion_halfwidth = half;
  return r;
}

// Tabulated PSLL evaluation for repeated masks over one geometry and a fixed set of steering
// angles. Holds exp(j k rho_n u_m) for every element and grid point.
template <typename Scalar = double>
class PsllTable {
 public:
  PsllTable(const ArrayGeometry<Scalar>& geom, std::vector<Scalar> focus_angles, const RVector<Scalar>& grid,
            Scalar kappa = Scalar(kDefaultMainlobeKappa))
      : n_(geom.size()), grid_(grid), focus_(std::move(focus_angles)) {
    if (focus_.empty()) throw std::invalid_argument("PsllTable: no steering angles");
    const Scalar k = geom.wavenumber();
    const Eigen::Index m = grid.size();
    table_.resize(n_, m);
    for (Eigen::Index n = 0; n < n_; ++n)
      for (Eigen::Index i = 0; i < m; ++i) table_(n, i) = std::polar(Scalar(1), k * geom.positions()[n] * grid[i]);
    const Scalar half = kappa * geom.wavelength() / geom.aperture();
    for (Scalar th : focus_) {
      const Scalar u0 = std::sin(th);
      CVector<Scalar> steer(n_);
      for (Eigen::Index n = 0; n < n_; ++n) steer[n] = std::polar(Scalar(1), -k * geom.positions()[n] * u0);
      steering_.push_back(std::move(steer));
      std::vector<Eigen::Index> side;
      for (Eigen::Index i = 0; i < m; ++i)
        if (!(std::abs(grid[i] - u0) < half)) side.push_back(i);
      if (side.empty()) throw std::invalid_argument("PsllTable: sidelobe region is empty");
      sidelobe_.push_back(std::move(side));
    }
  }

  const std::vector<Scalar>& focus_angles() const noexcept { return focus_; }

  // PSLL (dB) of the mask at every steering angle.
  std::vector<Scalar> evaluate(const ThinningVector& b) const {
    if (b.size() != n_) throw std::invalid_argument("PsllTable: mask size mismatch");
    const auto active = b.active_indices();
    if (active.empty()) throw std::domain_error("PsllTable: mainlobe gain is zero");
    const Scalar main = Scalar(active.size()) * Scalar(active.size());
    std::vector<Scalar> out;
    out.reserve(focus_.size());
    CVector<Scalar> acc(grid_.size());
    for (std::size_t a = 0; a < focus_.size(); ++a) {
      acc.setZero();
      for (int n : active) acc.noalias() += steering_[a][n] * table_.row(n).transpose();
      Scalar worst{0};
      for (Eigen::Index i : sidelobe_[a]) worst = std::max(worst, std::norm(acc[i]));
      out.push_back(Scalar(10) * std::log10(std::max(worst, std::numeric_limits<Scalar>::min()) / main));
    }
    return out;
  }

 private:
  Eigen::Index n_;
  RVector<Scalar> grid_;
  std::vector<Scalar> focus_;
  Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> table_;
  std::vector<CVector<Scalar>> steering_;
  std::vector<std::vector<Eigen::Index>> sidelobe_;
};

}  // namespace nfthin
