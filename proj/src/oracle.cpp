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

#include "nfthin/oracle.hpp"

#include "nfthin/beam_analysis.hpp"
#include "nfthin/channel.hpp"
#include "nfthin/precoder.hpp"
#include "nfthin/pso.hpp"
#include "nfthin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace nfthin {

namespace {

constexpr int kN = 12;
constexpr int kActive = 4;
constexpr double kLambda = 0.01;

ArrayGeometry<double> small_array() { return ArrayGeometry<double>::uniform(kN, 0.5 * kLambda, kLambda); }

// Every mask with kActive ones that contains both edge elements.
std::vector<ThinningVector> all_small_masks() {
  std::vector<ThinningVector> out;
  const auto f = edge_elements(kN);
  for (int i = 1; i < kN - 1; ++i)
    for (int j = i + 1; j < kN - 1; ++j) out.push_back(ThinningVector::from_indices(kN, {0, i, j, kN - 1}, f));
  return out;
}

SwarmConfig small_swarm(std::uint64_t seed) {
  SwarmConfig c;
  c.n_particles = 20;
  c.n_iterations = 40;
  c.seed = seed;
  return c;
}

Interval small_ranges() {
  const double two_d = small_array().min_valid_range();
  return {1.05 * two_d, 10 * two_d};
}

PowerConfig<double> small_power(int k) {
  const Interval r = small_ranges();
  return PowerConfig<double>::calibrated(20.0, kLambda, 0.5 * (r.lo + r.hi), 1.0, double(kN) * k);
}

// Sum-rate through the explicit N x K precoder, independent of the Gram-matrix shortcut.
double direct_sum_rate(const ThinningVector& b, const std::vector<UserLocation<double>>& users,
                       const PowerConfig<double>& p) {
  const auto h = channel_matrix(small_array(), ThinningVector::all_active(kN), users);
  return evaluate_rates(h.entries, b, p).sum_rate;
}

OracleCheck compare(std::string name, double value, double reference, double tol, std::string detail = {}) {
  OracleCheck c;
  c.name = std::move(name);
  c.error = std::abs(value - reference);
  c.tolerance = tol;
  c.passed = std::isfinite(value) && c.error <= tol;
  std::ostringstream os;
  os.precision(12);
  os << "value=" << value << " reference=" << reference;
  if (!detail.empty()) os << ' ' << detail;
  c.detail = os.str();
  return c;
}

OracleCheck sta_brute_force(std::uint64_t seed) {
  const auto sc = sample_scenario(2, small_ranges(), {-std::numbers::pi / 3, std::numbers::pi / 3}, seed);
  const auto p = small_power(2);
  double best = -1;
  for (const auto& m : all_small_masks()) best = std::max(best, direct_sum_rate(m, sc.users, p));
  const auto r = optimize_sta(small_array(), sc.users, kActive, edge_elements(kN), p, small_swarm(seed));
  return compare("sta_matches_exhaustive_search", direct_sum_rate(*r.best_mask, sc.users, p), best, 1e-9,
                 "mask=" + r.best_mask->to_bit_string());
}

OracleCheck pta_brute_force(std::uint64_t seed) {
  std::vector<Scenario> ensemble;
  for (int e = 0; e < 5; ++e)
    ensemble.push_back(sample_scenario(2, small_ranges(), {-std::numbers::pi / 3, std::numbers::pi / 3},
                                       derive_seed(seed, static_cast<std::uint64_t>(e))));
  const auto p = small_power(2);
  auto mean_rate = [&](const ThinningVector& m) {
    double s = 0;
    for (const auto& sc : ensemble) s += direct_sum_rate(m, sc.users, p);
    return s / static_cast<double>(ensemble.size());
  };
  double best = -1;
  for (const auto& m : all_small_masks()) best = std::max(best, mean_rate(m));
  const auto r = optimize_pta(small_array(), ensemble, kActive, edge_elements(kN), p, small_swarm(seed + 1));
  return compare("pta_matches_exhaustive_search", mean_rate(*r.best_mask), best, 1e-9,
                 "mask=" + r.best_mask->to_bit_string());
}

std::vector<OracleCheck> gta_brute_force(std::uint64_t seed) {
  const auto geom = small_array();
  const std::vector<double> coverage{0.0, std::numbers::pi / 9, -std::numbers::pi / 9};
  GtaOptions opts;
  opts.grid_points = 2048;
  const auto grid = sine_grid<double>(opts.grid_points);
  const GtaObjective objective(geom, coverage, opts);

  // Reference cost from per-angle psll() on the full pattern.
  auto reference_cost = [&](const ThinningVector& m) {
    double worst = -1e300, penalty = 0;
    for (double th : coverage) {
      const double v = psll(geom, m, th, grid, opts.kappa).psll_db;
      worst = std::max(worst, v);
      penalty += std::max(0.0, v - opts.tau_psll_db);
    }
    return worst + opts.penalty_weight * penalty;
  };
  double best = std::numeric_limits<double>::infinity();
  double table_error = 0;
  for (const auto& m : all_small_masks()) {
    const double ref = reference_cost(m);
    best = std::min(best, ref);
    table_error = std::max(table_error, std::abs(ref - objective(m)));
  }
  const auto r = optimize_gta(geom, kActive, edge_elements(kN), coverage, small_swarm(seed + 2), opts);
  return {compare("gta_table_matches_pattern_psll", table_error, 0.0, 1e-9),
          compare("gta_matches_exhaustive_search", reference_cost(*r.best_mask), best, 1e-9,
                  "mask=" + r.best_mask->to_bit_string())};
}

// Best placement on a lambda/4 lattice versus the continuous optimizer.
OracleCheck mula_grid_search(std::uint64_t seed) {
  constexpr int kElements = 3;
  const double step = kLambda / 4;
  const int cells = 16;
  MulaOptions opts;
  opts.bounds = {0.0, cells * step};
  opts.min_spacing = kLambda / 2;
  const std::vector<UserLocation<double>> users{{-0.3, 0.08}, {0.45, 0.12}};
  const auto p = PowerConfig<double>::calibrated(20.0, kLambda, 0.1, 1.0, 6.0);
  double best = -1;
  for (int a = 0; a <= cells; ++a)
    for (int b = a + 2; b <= cells; ++b)
      for (int c = b + 2; c <= cells; ++c) {
        Eigen::VectorXd x(3);
        x << a * step, b * step, c * step;
        best = std::max(best, positions_sum_rate(x, kLambda, users, p, kElements));
      }
  SwarmConfig cfg = small_swarm(seed + 3);
  cfg.n_iterations = 100;
  const auto r = optimize_positions_mula(users, kElements, kLambda, opts, p, cfg);
  const double found = -r.best_cost;
  OracleCheck c = compare("mula_reaches_lattice_optimum", found, best, 1e-3 * best);
  c.passed = std::isfinite(found) && found >= best - c.tolerance;
  c.error = std::max(0.0, best - found);
  return c;
}

OracleCheck hand_sinr() {
  CMatrix<double> h = CMatrix<double>::Identity(2, 2);
  CMatrix<double> w(2, 2);
  w << 1.0, 0.5, 0.0, 1.0;
  const auto s = sinr(h, w, 1.0);
  const double err = std::abs(s[0] - 0.8) + std::abs(s[1] - 1.0);
  return compare("sinr_two_user_closed_form", sum_rate(s) + err, std::log2(1.8) + 1.0, 1e-12);
}

// W = (H H^H + alpha I_N)^{-1} H against the K x K form used by the precoder.
OracleCheck rzf_push_through(std::uint64_t seed) {
  Rng rng(seed);
  CMatrix<double> h(8, 3);
  for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  const double alpha = 0.37;
  const CMatrix<double> ours = rzf_directions(h, alpha);
  CMatrix<double> big = h * h.adjoint();
  big.diagonal().array() += alpha;
  const CMatrix<double> ref = big.fullPivLu().solve(h);
  return compare("rzf_push_through_identity", (ours - ref).norm() / ref.norm(), 0.0, 1e-12);
}

OracleCheck gram_sum_rate(std::uint64_t seed) {
  const auto sc = sample_scenario(3, small_ranges(), {-1.0, 1.0}, seed + 7);
  const auto p = small_power(3);
  const auto m = ThinningVector::from_indices(kN, {0, 3, 7, 11});
  auto h = channel_matrix(small_array(), m, sc.users).entries;
  const double direct = evaluate_rates(h, m, p).sum_rate;
  CMatrix<double> ha(4, 3);
  const auto idx = m.active_indices();
  for (int i = 0; i < 4; ++i) ha.row(i) = h.row(idx[static_cast<std::size_t>(i)]);
  const CMatrix<double> gram = ha.adjoint() * ha;
  return compare("gram_sum_rate_matches_precoder", rzf_sum_rate_from_gram(gram, p), direct, 1e-9 * direct);
}

OracleCheck top_k_tie() {
  Eigen::VectorXd pr(4);
  pr << 0.7, 0.5, 0.7, 0.2;
  const auto m = top_k_binarize(pr, 3, {0, 5});
  OracleCheck c;
  c.name = "top_k_tie_goes_to_lower_index";
  c.detail = m.to_bit_string();
  c.passed = c.detail == "110001";
  c.error = c.passed ? 0 : 1;
  return c;
}

std::vector<OracleCheck> identities() {
  std::vector<OracleCheck> out;
  const auto geom = small_array();
  const UserLocation<double> u{0.4, 0.5};
  out.push_back(compare("steering_unit_norm", steering_vector(geom, u, kN).squaredNorm(), 1.0, 1e-12));

  const UserLocation<double> far{0.4, 1e12};
  const auto a = steering_vector(geom, far, kN);
  double err = 0;
  for (int n = 0; n < kN; ++n)
    err = std::max(err, std::abs(a[n] - std::polar(1.0 / std::sqrt(double(kN)),
                                                   -geom.wavenumber() * geom.positions()[n] * std::sin(0.4))));
  out.push_back(compare("far_field_limit", err, 0.0, 1e-9));

  out.push_back(compare("pathloss_inverse_square", pathloss(kLambda, 2.0) / pathloss(kLambda, 1.0), 0.25, 1e-15));
  out.push_back(compare("rayleigh_distance", rayleigh_distance(geom), 2 * std::pow(11 * 0.5 * kLambda, 2) / kLambda,
                        1e-15));

  const auto g = grating_lobe_angles(2 * kLambda, kLambda, 0.0).visible_angles();
  std::vector<double> deg;
  for (double x : g) deg.push_back(rad2deg(x));
  std::sort(deg.begin(), deg.end());
  const double gerr = deg.size() == 2 ? std::abs(deg[0] + 30) + std::abs(deg[1] - 30) : 1e9;
  out.push_back(compare("grating_lobes_two_lambda", gerr, 0.0, 1e-9));

  // Zero-forcing limit: interference vanishes as alpha -> 0.
  const auto sc = sample_scenario(3, small_ranges(), {-1.0, 1.0}, 99);
  const auto h = channel_matrix(geom, ThinningVector::all_active(kN), sc.users).entries;
  RzfOptions<double> zf;
  zf.regularization = 0.0;
  const auto w = rzf_precoder(h, ThinningVector::all_active(kN), small_power(3), zf);
  RMatrix<double> gains = (w.adjoint() * h).cwiseAbs2();
  const double leak = (gains.sum() - gains.trace()) / gains.trace();
  out.push_back(compare("zero_forcing_nulls_interference", leak, 0.0, 1e-9));
  return out;
}

}  // namespace

std::vector<OracleCheck> run_oracle_suite(std::uint64_t seed) {
  std::vector<OracleCheck> out;
  auto guard = [&](const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      out.push_back({name, false, std::numeric_limits<double>::infinity(), 0, std::string("threw: ") + e.what()});
    }
  };
  guard("identities", [&] {
    for (auto& c : identities()) out.push_back(std::move(c));
  });
  guard("sinr", [&] { out.push_back(hand_sinr()); });
  guard("rzf", [&] { out.push_back(rzf_push_through(seed)); });
  guard("gram", [&] { out.push_back(gram_sum_rate(seed)); });
  guard("top_k", [&] { out.push_back(top_k_tie()); });
  guard("sta", [&] { out.push_back(sta_brute_force(seed)); });
  guard("pta", [&] { out.push_back(pta_brute_force(seed)); });
  guard("gta", [&] {
    for (auto& c : gta_brute_force(seed)) out.push_back(std::move(c));
  });
  guard("mula", [&] { out.push_back(mula_grid_search(seed)); });
  return out;
}

}  // namespace nfthin
