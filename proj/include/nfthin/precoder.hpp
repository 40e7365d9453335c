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

// Regularized zero-forcing precoding, per-user SINR and sum-rate.

#pragma once

#include "nfthin/array_core.hpp"
#include "nfthin/channel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace nfthin {

template <typename Scalar = double>
struct PowerConfig {
  Scalar noise_variance{1};
  Scalar snr_db{20};
  Scalar total_power{1};

  // total_power = noise * 10^(snr/10) * reference_gain / beta(reference_range): a user at
  // reference_range served alone with the whole budget sees snr_db + 10 log10(reference_gain)
  // after normalized beamforming.
  static PowerConfig calibrated(Scalar snr_db, Scalar wavelength, Scalar reference_range,
                                Scalar noise_variance = Scalar(1), Scalar reference_gain = Scalar(1)) {
    if (!(noise_variance > 0)) throw std::invalid_argument("PowerConfig: noise variance must be positive");
    if (!(reference_gain > 0)) throw std::invalid_argument("PowerConfig: reference gain must be positive");
    PowerConfig p;
    p.noise_variance = noise_variance;
    p.snr_db = snr_db;
    p.total_power = noise_variance * std::pow(Scalar(10), snr_db / Scalar(10)) * reference_gain /
                    pathloss(wavelength, reference_range);
    return p;
  }

  void validate() const {
    if (!(noise_variance > 0) || !(total_power > 0))
      throw std::invalid_argument("PowerConfig: noise variance and total power must be positive");
  }
};

enum class PowerNormalization { sum_power, equal_per_user };

template <typename Scalar = double>
struct RzfOptions {
  std::optional<Scalar> regularization;  // default K sigma^2 / P
  PowerNormalization normalization = PowerNormalization::sum_power;
};

template <typename Scalar>
Scalar default_regularization(Eigen::Index n_users, const PowerConfig<Scalar>& p) {
  return static_cast<Scalar>(n_users) * p.noise_variance / p.total_power;
}

// Unnormalized RZF directions H (H^H H + alpha I)^{-1}. Works on any row subset of H.
template <typename Scalar>
CMatrix<Scalar> rzf_directions(const CMatrix<Scalar>& h, Scalar alpha) {
  const Eigen::Index k = h.cols();
  CMatrix<Scalar> gram = h.adjoint() * h;
  gram.diagonal().array() += alpha;
  CMatrix<Scalar> inv;
  if (alpha > Scalar(0)) {
    Eigen::LDLT<CMatrix<Scalar>> ldlt(gram);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("rzf: regularized Gram factorization failed");
    inv = ldlt.solve(CMatrix<Scalar>::Identity(k, k));
  } else {
    Eigen::FullPivLU<CMatrix<Scalar>> lu(gram);
    if (!lu.isInvertible()) throw std::runtime_error("rzf: Gram matrix is singular (alpha = 0)");
    inv = lu.inverse();
  }
  if (!inv.allFinite()) throw std::runtime_error("rzf: non-finite Gram inverse");
  return h * inv;
}

template <typename Scalar>
void normalize_power(CMatrix<Scalar>& w, const PowerConfig<Scalar>& p, PowerNormalization mode) {
  if (mode == PowerNormalization::sum_power) {
    const Scalar norm2 = w.squaredNorm();
    if (norm2 > Scalar(0)) w *= std::sqrt(p.total_power / norm2);
    return;
  }
  const Scalar per_user = p.total_power / static_cast<Scalar>(w.cols());
  for (Eigen::Index k = 0; k < w.cols(); ++k) {
    const Scalar n2 = w.col(k).squaredNorm();
    if (n2 > Scalar(0)) w.col(k) *= std::sqrt(per_user / n2);
  }
}

// RZF on the active rows of H, rows of inactive elements reinserted as exact zeros.
template <typename Scalar>
CMatrix<Scalar> rzf_precoder(const CMatrix<Scalar>& h, const ThinningVector& b, const PowerConfig<Scalar>& p,
                             const RzfOptions<Scalar>& opts = {}) {
  if (h.cols() == 0) throw std::invalid_argument("rzf_precoder: no users");
  if (h.rows() != b.size()) throw std::invalid_argument("rzf_precoder: mask/channel size mismatch");
  p.validate();
  const auto active = b.active_indices();
  CMatrix<Scalar> ha(static_cast<Eigen::Index>(active.size()), h.cols());
  for (std::size_t i = 0; i < active.size(); ++i) ha.row(static_cast<Eigen::Index>(i)) = h.row(active[i]);

  const Scalar alpha = opts.regularization.value_or(default_regularization(h.cols(), p));
  CMatrix<Scalar> wa = rzf_directions(ha, alpha);
  normalize_power(wa, p, opts.normalization);

  CMatrix<Scalar> w = CMatrix<Scalar>::Zero(h.rows(), h.cols());
  for (std::size_t i = 0; i < active.size(); ++i) w.row(active[i]) = wa.row(static_cast<Eigen::Index>(i));
  return w;
}

// Gamma_k = |w_k^H h_k|^2 / (sigma^2 + sum_{j != k} |w_j^H h_k|^2)
template <typename Scalar>
RVector<Scalar> sinr(const CMatrix<Scalar>& h, const CMatrix<Scalar>& w, Scalar noise_variance) {
  if (h.rows() != w.rows() || h.cols() != w.cols()) throw std::invalid_argument("sinr: shape mismatch");
  const RMatrix<Scalar> gains = (w.adjoint() * h).cwiseAbs2();  // (j, k) = |w_j^H h_k|^2
  RVector<Scalar> out(h.cols());
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    const Scalar signal = gains(k, k);
    out[k] = signal / (noise_variance + gains.col(k).sum() - signal);
  }
  return out;
}

template <typename Derived>
typename Derived::Scalar sum_rate(const Eigen::MatrixBase<Derived>& sinrs) {
  using Scalar = typename Derived::Scalar;
  Scalar total{0};
  for (Eigen::Index k = 0; k < sinrs.size(); ++k) {
    if (sinrs(k) < Scalar(0) || std::isnan(sinrs(k))) throw std::domain_error("sum_rate: negative SINR");
    total += std::log2(Scalar(1) + sinrs(k));
  }
  return total;
}

template <typename Scalar = double>
struct RateReport {
  RVector<Scalar> per_user_sinr;
  RVector<Scalar> per_user_rate;
  Scalar sum_rate{0};

  Scalar min_sinr_db() const {
    return Scalar(10) * std::log10(std::max(per_user_sinr.minCoeff(), std::numeric_limits<Scalar>::min()));
  }
};

template <typename Scalar>
RateReport<Scalar> make_rate_report(RVector<Scalar> sinrs) {
  RateReport<Scalar> r;
  r.per_user_rate = sinrs.unaryExpr([](Scalar g) { return std::log2(Scalar(1) + g); });
  r.sum_rate = sum_rate(sinrs);
  r.per_user_sinr = std::move(sinrs);
  return r;
}

template <typename Scalar>
RateReport<Scalar> evaluate_rates(const CMatrix<Scalar>& h, const ThinningVector& b, const PowerConfig<Scalar>& p,
                                  const RzfOptions<Scalar>& opts = {}) {
  const CMatrix<Scalar> w = rzf_precoder(h, b, p, opts);
  return make_rate_report<Scalar>(sinr(h, w, p.noise_variance));
}

// Sum-rate of sum-power RZF computed from the K x K Gram matrix only. With X = (G + alpha I)^{-1}
// and W = c H X we have W^H H = c X^H G and ||W||_F^2 = c^2 tr(X^H G X). Optimizer inner loop.
template <typename Scalar>
Scalar rzf_sum_rate_from_gram(const CMatrix<Scalar>& gram, const PowerConfig<Scalar>& p) {
  const Eigen::Index k = gram.rows();
  CMatrix<Scalar> reg = gram;
  reg.diagonal().array() += default_regularization(k, p);
  Eigen::LDLT<CMatrix<Scalar>> ldlt(reg);
  const CMatrix<Scalar> x = ldlt.solve(CMatrix<Scalar>::Identity(k, k));
  const CMatrix<Scalar> xg = x.adjoint() * gram;
  const Scalar norm2 = (xg * x).trace().real();
  if (!(norm2 > Scalar(0)) || !std::isfinite(norm2)) return Scalar(0);
  const Scalar c2 = p.total_power / norm2;
  const RMatrix<Scalar> gains = xg.cwiseAbs2() * c2;
  Scalar total{0};
  for (Eigen::Index j = 0; j < k; ++j) {
    const Scalar signal = gains(j, j);
    total += std::log2(Scalar(1) + signal / (p.noise_variance + gains.col(j).sum() - signal));
  }
  return total;
}

}  // namespace nfthin
