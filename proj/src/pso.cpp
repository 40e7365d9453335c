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

#include "nfthin/pso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nfthin {

void SwarmConfig::validate() const {
  if (n_particles < 2) throw std::invalid_argument("SwarmConfig: need at least two particles");
  if (n_iterations < 0) throw std::invalid_argument("SwarmConfig: negative iteration count");
  if (inertia_start < 0 || inertia_start > 1 || inertia_end < 0 || inertia_end > 1)
    throw std::invalid_argument("SwarmConfig: inertia must lie in [0,1]");
  if (cognitive < 0 || social < 0) throw std::invalid_argument("SwarmConfig: acceleration coefficients must be >= 0");
  if (!(velocity_clamp > 0)) throw std::invalid_argument("SwarmConfig: velocity clamp must be positive");
}

double SwarmConfig::inertia_at(int iteration) const {
  if (n_iterations <= 1) return inertia_start;
  const double t = static_cast<double>(iteration) / static_cast<double>(n_iterations - 1);
  return inertia_start + (inertia_end - inertia_start) * std::clamp(t, 0.0, 1.0);
}

namespace {

double safe_cost(const PositionCost& cost, const Eigen::VectorXd& x, Swarm& swarm) {
  ++swarm.evaluations;
  const double c = cost(x);
  if (!std::isfinite(c)) {
    ++swarm.nonfinite_evaluations;
    return std::numeric_limits<double>::infinity();
  }
  return c;
}

}  // namespace

Swarm init_swarm(int dimension, const SwarmConfig& cfg, const PositionCost& cost, Rng& rng) {
  cfg.validate();
  if (dimension < 1) throw std::invalid_argument("init_swarm: dimension must be >= 1");
  Swarm s;
  s.particles.resize(static_cast<std::size_t>(cfg.n_particles));
  for (auto& p : s.particles) {
    p.position.resize(dimension);
    p.velocity.resize(dimension);
    for (int i = 0; i < dimension; ++i) p.position[i] = rng.uniform();
    for (int i = 0; i < dimension; ++i) p.velocity[i] = rng.uniform(-cfg.velocity_clamp, cfg.velocity_clamp);
  }
  std::size_t best = 0;
  for (std::size_t i = 0; i < s.particles.size(); ++i) {
    auto& p = s.particles[i];
    p.cost = safe_cost(cost, p.position, s);
    p.best_position = p.position;
    p.best_cost = p.cost;
    if (p.cost < s.particles[best].cost) best = i;
  }
  s.global_best_position = s.particles[best].position;
  s.global_best_cost = s.particles[best].cost;
  s.cost_history.push_back(s.global_best_cost);
  return s;
}

void pso_step(Swarm& swarm, const SwarmConfig& cfg, const PositionCost& cost, Rng& rng) {
  const double w = cfg.inertia_at(swarm.iteration);
  for (auto& p : swarm.particles) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    p.velocity = w * p.velocity + cfg.cognitive * u1 * (p.best_position - p.position) +
                 cfg.social * u2 * (swarm.global_best_position - p.position);
    p.velocity = p.velocity.cwiseMax(-cfg.velocity_clamp).cwiseMin(cfg.velocity_clamp);
    p.position = (p.position + p.velocity).cwiseMax(0.0).cwiseMin(1.0);
  }
  for (auto& p : swarm.particles) p.cost = safe_cost(cost, p.position, swarm);
  for (auto& p : swarm.particles) {
    if (p.cost < p.best_cost) {
      p.best_cost = p.cost;
      p.best_position = p.position;
    }
    if (p.cost < swarm.global_best_cost) {
      swarm.global_best_cost = p.cost;
      swarm.global_best_position = p.position;
    }
  }
  ++swarm.iteration;
  swarm.cost_history.push_back(swarm.global_best_cost);
}

ThinningVector top_k_binarize(const Eigen::VectorXd& priorities, int n_active, const std::vector<int>& fixed_set) {
  std::vector<int> fixed = fixed_set;
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  const int n_total = static_cast<int>(priorities.size()) + static_cast<int>(fixed.size());
  if (n_active > n_total) throw std::invalid_argument("top_k_binarize: n_active exceeds element count");
  if (n_active < static_cast<int>(fixed.size())) throw std::invalid_argument("top_k_binarize: n_active < |F|");
  for (int f : fixed)
    if (f < 0 || f >= n_total) throw std::invalid_argument("top_k_binarize: fixed index out of range");

  std::vector<int> variable;
  variable.reserve(static_cast<std::size_t>(priorities.size()));
  for (int n = 0, j = 0; n < n_total; ++n) {
    if (j < static_cast<int>(fixed.size()) && fixed[static_cast<std::size_t>(j)] == n) {
      ++j;
      continue;
    }
    variable.push_back(n);
  }
  std::vector<int> order(variable.size());
  std::iota(order.begin(), order.end(), 0);
  const auto take = static_cast<std::ptrdiff_t>(n_active - static_cast<int>(fixed.size()));
  std::partial_sort(order.begin(), order.begin() + take, order.end(), [&](int a, int b) {
    return priorities[a] > priorities[b] || (priorities[a] == priorities[b] && a < b);
  });
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n_total), 0);
  for (int f : fixed) mask[static_cast<std::size_t>(f)] = 1;
  for (std::ptrdiff_t i = 0; i < take; ++i) mask[static_cast<std::size_t>(variable[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])] = 1;
  return ThinningVector(std::move(mask), std::move(fixed));
}

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::gta: return "gta";
    case ObjectiveKind::sta: return "sta";
    case ObjectiveKind::pta: return "pta";
    case ObjectiveKind::mula_positions: return "mula_positions";
    case ObjectiveKind::custom: return "custom";
  }
  return "custom";
}

nlohmann::json to_json(const SwarmResult& r) {
  nlohmann::json j;
  j["objective"] = to_string(r.kind);
  if (r.best_mask) {
    j["mask"] = r.best_mask->to_bit_string();
    j["active_count"] = r.best_mask->active_count();
    j["fixed_set"] = r.best_mask->fixed_set();
  }
  if (r.best_elements) j["positions_m"] = std::vector<double>(r.best_elements->begin(), r.best_elements->end());
  j["best_cost"] = r.best_cost;
  j["cost_history"] = r.cost_history;
  j["evaluations"] = r.evaluations;
  j["nonfinite_evaluations"] = r.nonfinite_evaluations;
  j["config"] = {{"n_particles", r.config.n_particles},     {"n_iterations", r.config.n_iterations},
                 {"inertia_start", r.config.inertia_start}, {"inertia_end", r.config.inertia_end},
                 {"cognitive", r.config.cognitive},         {"social", r.config.social},
                 {"velocity_clamp", r.config.velocity_clamp}, {"seed", r.config.seed}};
  return j;
}

namespace {

SwarmResult run_swarm(int dimension, const SwarmConfig& cfg, const PositionCost& cost) {
  Rng rng(cfg.seed);
  Swarm swarm = init_swarm(dimension, cfg, cost, rng);
  for (int t = 0; t < cfg.n_iterations; ++t) pso_step(swarm, cfg, cost, rng);
  SwarmResult r;
  r.best_position = swarm.global_best_position;
  r.best_cost = swarm.global_best_cost;
  r.cost_history = std::move(swarm.cost_history);
  r.evaluations = swarm.evaluations;
  r.nonfinite_evaluations = swarm.nonfinite_evaluations;
  r.config = cfg;
  return r;
}

void check_feasible(const ThinningVector& b, int n_active, const std::vector<int>& fixed) {
  if (b.active_count() != n_active) throw std::logic_error("thinning: decoded mask violates the active count");
  for (int f : fixed)
    if (!b.active(f)) throw std::logic_error("thinning: decoded mask drops a fixed element");
}

}  // namespace

SwarmResult optimize_mask(int n_elements, int n_active, const std::vector<int>& fixed_set, const MaskCost& cost,
                          const SwarmConfig& cfg, ObjectiveKind kind) {
  std::vector<int> fixed = fixed_set;
  std::sort(fixed.begin(), fixed.end());
  fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
  if (n_active < static_cast<int>(fixed.size())) throw std::invalid_argument("optimize: N_T < |F|");
  if (n_active > n_elements) throw std::invalid_argument("optimize: N_T > N");
  const int n_var = n_elements - static_cast<int>(fixed.size());
  if (n_var < 1) throw std::invalid_argument("optimize: no variable elements");

  const PositionCost position_cost = [&](const Eigen::VectorXd& x) {
    const ThinningVector b = top_k_binarize(x, n_active, fixed);
    check_feasible(b, n_active, fixed);
    return cost(b);
  };
  SwarmResult r = run_swarm(n_var, cfg, position_cost);
  r.kind = kind;
  r.best_mask = top_k_binarize(r.best_position, n_active, fixed);
  return r;
}

std::vector<double> default_coverage_angles() {
  std::vector<double> out;
  for (double deg : {-60.0, -40.0, -20.0, 0.0, 20.0, 40.0, 60.0}) out.push_back(deg2rad(deg));
  return out;
}

GtaObjective::GtaObjective(const ArrayGeometry<double>& geom, std::vector<double> coverage_angles,
                           const GtaOptions& opts)
    : table_(geom, std::move(coverage_angles), sine_grid<double>(opts.grid_points), opts.kappa), opts_(opts) {}

double GtaObjective::worst_psll_db(const ThinningVector& b) const {
  const auto levels = table_.evaluate(b);
  return *std::max_element(levels.begin(), levels.end());
}

double GtaObjective::operator()(const ThinningVector& b) const {
  const auto levels = table_.evaluate(b);
  double worst = -std::numeric_limits<double>::infinity();
  double penalty = 0;
  for (double l : levels) {
    worst = std::max(worst, l);
    penalty += std::max(0.0, l - opts_.tau_psll_db);
  }
  return worst + opts_.penalty_weight * penalty;
}

StaObjective::StaObjective(const ArrayGeometry<double>& geom, const std::vector<UserLocation<double>>& users,
                           const PowerConfig<double>& power, const ChannelOptions& opts)
    : channel_(channel_matrix(geom, ThinningVector::all_active(static_cast<int>(geom.size())), users, opts).entries),
      power_(power) {
  power_.validate();
}

double StaObjective::sum_rate(const ThinningVector& b) const {
  if (b.size() != channel_.rows()) throw std::invalid_argument("StaObjective: mask size mismatch");
  const auto active = b.active_indices();
  CMatrix<double> ha(static_cast<Eigen::Index>(active.size()), channel_.cols());
  for (std::size_t i = 0; i < active.size(); ++i) ha.row(static_cast<Eigen::Index>(i)) = channel_.row(active[i]);
  const CMatrix<double> gram = ha.adjoint() * ha;
  return rzf_sum_rate_from_gram(gram, power_);
}

EnsembleStaObjective::EnsembleStaObjective(const ArrayGeometry<double>& geom, const std::vector<Scenario>& ensemble,
                                           const PowerConfig<double>& power, const ChannelOptions& opts) {
  if (ensemble.empty()) throw std::invalid_argument("EnsembleStaObjective: empty ensemble");
  members_.reserve(ensemble.size());
  for (const auto& s : ensemble) members_.emplace_back(geom, s.users, power, opts);
}

double EnsembleStaObjective::mean_sum_rate(const ThinningVector& b) const {
  double total = 0;
  for (const auto& m : members_) total += m.sum_rate(b);
  return total / static_cast<double>(members_.size());
}

SwarmResult optimize_gta(const ArrayGeometry<double>& geom, int n_active, const std::vector<int>& fixed_set,
                         const std::vector<double>& coverage_angles, const SwarmConfig& cfg, const GtaOptions& opts) {
  if (coverage_angles.empty()) throw std::invalid_argument("optimize_gta: empty coverage set");
  const GtaObjective objective(geom, coverage_angles, opts);
  return optimize_mask(static_cast<int>(geom.size()), n_active, fixed_set, std::cref(objective), cfg,
                       ObjectiveKind::gta);
}

SwarmResult optimize_sta(const ArrayGeometry<double>& geom, const std::vector<UserLocation<double>>& users,
                         int n_active, const std::vector<int>& fixed_set, const PowerConfig<double>& power,
                         const SwarmConfig& cfg, const ChannelOptions& channel_opts) {
  const StaObjective objective(geom, users, power, channel_opts);
  return optimize_mask(static_cast<int>(geom.size()), n_active, fixed_set, std::cref(objective), cfg,
                       ObjectiveKind::sta);
}

SwarmResult optimize_pta(const ArrayGeometry<double>& geom, const std::vector<Scenario>& ensemble, int n_active,
                         const std::vector<int>& fixed_set, const PowerConfig<double>& power,
                         const SwarmConfig& cfg, const ChannelOptions& channel_opts) {
  const EnsembleStaObjective objective(geom, ensemble, power, channel_opts);
  return optimize_mask(static_cast<int>(geom.size()), n_active, fixed_set, std::cref(objective), cfg,
                       ObjectiveKind::pta);
}

Eigen::VectorXd project_positions(const Eigen::VectorXd& raw, Interval bounds, double min_spacing) {
  const Eigen::Index n = raw.size();
  if (n < 1) throw std::invalid_argument("project_positions: no elements");
  if (!(min_spacing >= 0) || static_cast<double>(n - 1) * min_spacing > bounds.hi - bounds.lo)
    throw std::invalid_argument("project_positions: spacing infeasible within bounds");
  Eigen::VectorXd p = raw.cwiseMax(bounds.lo).cwiseMin(bounds.hi);
  std::sort(p.begin(), p.end());
  for (Eigen::Index i = 1; i < n; ++i) p[i] = std::max(p[i], p[i - 1] + min_spacing);
  if (p[n - 1] > bounds.hi) {
    p[n - 1] = bounds.hi;
    for (Eigen::Index i = n - 2; i >= 0; --i) p[i] = std::min(p[i], p[i + 1] - min_spacing);
  }
  return p;
}

Eigen::VectorXd decode_positions(const Eigen::VectorXd& priorities, const MulaOptions& opts) {
  const Eigen::VectorXd raw = (opts.bounds.lo + priorities.array() * (opts.bounds.hi - opts.bounds.lo)).matrix();
  return project_positions(raw, opts.bounds, opts.min_spacing);
}

double positions_sum_rate(const Eigen::VectorXd& positions, double wavelength,
                          const std::vector<UserLocation<double>>& users, const PowerConfig<double>& power,
                          Eigen::Index norm_count) {
  const ArrayGeometry<double> geom(wavelength, positions);
  ChannelOptions opts;
  opts.norm_count = norm_count;
  // Movable bounds may exceed the fixed aperture by a fraction of a wavelength.
  opts.validity = ValidityMode::lenient;
  const auto h = channel_matrix(geom, ThinningVector::all_active(static_cast<int>(geom.size())), users, opts);
  const CMatrix<double> gram = h.entries.adjoint() * h.entries;
  return rzf_sum_rate_from_gram(gram, power);
}

SwarmResult optimize_positions_mula(const std::vector<UserLocation<double>>& users, int n_elements,
                                    double wavelength, const MulaOptions& opts, const PowerConfig<double>& power,
                                    const SwarmConfig& cfg) {
  if (n_elements < 2) throw std::invalid_argument("optimize_positions_mula: need at least two elements");
  if (!(opts.min_spacing > 0)) throw std::invalid_argument("optimize_positions_mula: min_spacing must be positive");
  if (!(opts.bounds.hi > opts.bounds.lo) ||
      static_cast<double>(n_elements - 1) * opts.min_spacing > opts.bounds.hi - opts.bounds.lo)
    throw std::invalid_argument("optimize_positions_mula: infeasible spacing for the bounds");
  const Eigen::Index norm = opts.norm_count > 0 ? opts.norm_count : n_elements;
  const PositionCost cost = [&](const Eigen::VectorXd& x) {
    return -positions_sum_rate(decode_positions(x, opts), wavelength, users, power, norm);
  };
  SwarmResult r = run_swarm(n_elements, cfg, cost);
  r.kind = ObjectiveKind::mula_positions;
  r.best_elements = decode_positions(r.best_position, opts);
  return r;
}

}  // namespace nfthin
