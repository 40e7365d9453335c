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

// Particle swarm engine with continuous relaxation and top-k binarization, and the thinning
// objectives built on it: PSLL minimax (GTA), sum-rate (STA), ensemble sum-rate (PTA) and
// continuous element positions (MULA).

#pragma once

#include "nfthin/array_core.hpp"
#include "nfthin/beam_analysis.hpp"
#include "nfthin/channel.hpp"
#include "nfthin/precoder.hpp"
#include "nfthin/rng.hpp"

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nfthin {

struct SwarmConfig {
  int n_particles = 50;
  int n_iterations = 100;
  double inertia_start = 0.9;  // omega, decayed linearly to inertia_end
  double inertia_end = 0.4;
  double cognitive = 1.49445;  // c1
  double social = 1.49445;     // c2
  double velocity_clamp = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
  double inertia_at(int iteration) const;
};

struct Particle {
  Eigen::VectorXd position;
  Eigen::VectorXd velocity;
  Eigen::VectorXd best_position;
  double cost = 0;
  double best_cost = 0;
};

struct Swarm {
  std::vector<Particle> particles;
  Eigen::VectorXd global_best_position;
  double global_best_cost = 0;
  int iteration = 0;
  std::vector<double> cost_history;  // global best after init and after every step
  long evaluations = 0;
  long nonfinite_evaluations = 0;
};

// Cost of a continuous position. Lower is better.
using PositionCost = std::function<double(const Eigen::VectorXd&)>;

Swarm init_swarm(int dimension, const SwarmConfig& cfg, const PositionCost& cost, Rng& rng);

// One synchronous iteration: velocity/position update with fresh u1, u2 per particle, clip to
// [0,1], evaluate, then personal/global best updates in particle order on strict improvement.
void pso_step(Swarm& swarm, const SwarmConfig& cfg, const PositionCost& cost, Rng& rng);

// Active set = F plus the (n_active - |F|) largest priorities; ties go to the lower index.
// `priorities` covers the variable (non-fixed) elements in ascending element order.
ThinningVector top_k_binarize(const Eigen::VectorXd& priorities, int n_active, const std::vector<int>& fixed_set);

enum class ObjectiveKind { gta, sta, pta, mula_positions, custom };
std::string to_string(ObjectiveKind kind);

struct SwarmResult {
  ObjectiveKind kind = ObjectiveKind::custom;
  std::optional<ThinningVector> best_mask;      // mask modes
  std::optional<Eigen::VectorXd> best_elements; // positions in continuous mode
  Eigen::VectorXd best_position;                // raw particle position
  double best_cost = 0;
  std::vector<double> cost_history;
  long evaluations = 0;
  long nonfinite_evaluations = 0;
  SwarmConfig config;
};

nlohmann::json to_json(const SwarmResult& r);

using MaskCost = std::function<double(const ThinningVector&)>;

// Generic thinning search over masks with exactly n_active ones including fixed_set.
// Every decoded mask is checked for feasibility before it reaches `cost`.
SwarmResult optimize_mask(int n_elements, int n_active, const std::vector<int>& fixed_set, const MaskCost& cost,
                          const SwarmConfig& cfg, ObjectiveKind kind = ObjectiveKind::custom);

struct GtaOptions {
  double tau_psll_db = -10.0;  // tolerated PSLL per steering angle
  double penalty_weight = 10.0;  // per dB above tau
  Eigen::Index grid_points = 8192;
  double kappa = kDefaultMainlobeKappa;
};

// Default steering set {0, +-20, +-40, +-60} degrees.
std::vector<double> default_coverage_angles();

// max_theta PSLL(b, theta) + mu sum_theta max(0, PSLL(b, theta) - tau)
class GtaObjective {
 public:
  GtaObjective(const ArrayGeometry<double>& geom, std::vector<double> coverage_angles, const GtaOptions& opts = {});
  double operator()(const ThinningVector& b) const;
  double worst_psll_db(const ThinningVector& b) const;
  std::vector<double> psll_db(const ThinningVector& b) const { return table_.evaluate(b); }

 private:
  PsllTable<double> table_;
  GtaOptions opts_;
};

// Negative RZF sum-rate of the thinned array for fixed users. Thinning keeps the active rows
// of the full-array channel, so the full channel is built once.
class StaObjective {
 public:
  StaObjective(const ArrayGeometry<double>& geom, const std::vector<UserLocation<double>>& users,
               const PowerConfig<double>& power, const ChannelOptions& opts = {});
  double operator()(const ThinningVector& b) const { return -sum_rate(b); }
  double sum_rate(const ThinningVector& b) const;
  const CMatrix<double>& full_channel() const noexcept { return channel_; }

 private:
  CMatrix<double> channel_;
  PowerConfig<double> power_;
};

// Negative ensemble-average sum-rate (statistical CSI).
class EnsembleStaObjective {
 public:
  EnsembleStaObjective(const ArrayGeometry<double>& geom, const std::vector<Scenario>& ensemble,
                       const PowerConfig<double>& power, const ChannelOptions& opts = {});
  double operator()(const ThinningVector& b) const { return -mean_sum_rate(b); }
  double mean_sum_rate(const ThinningVector& b) const;

 private:
  std::vector<StaObjective> members_;
};

SwarmResult optimize_gta(const ArrayGeometry<double>& geom, int n_active, const std::vector<int>& fixed_set,
                         const std::vector<double>& coverage_angles, const SwarmConfig& cfg,
                         const GtaOptions& opts = {});

SwarmResult optimize_sta(const ArrayGeometry<double>& geom, const std::vector<UserLocation<double>>& users,
                         int n_active, const std::vector<int>& fixed_set, const PowerConfig<double>& power,
                         const SwarmConfig& cfg, const ChannelOptions& channel_opts = {});

SwarmResult optimize_pta(const ArrayGeometry<double>& geom, const std::vector<Scenario>& ensemble, int n_active,
                         const std::vector<int>& fixed_set, const PowerConfig<double>& power,
                         const SwarmConfig& cfg, const ChannelOptions& channel_opts = {});

struct MulaOptions {
  Interval bounds;            // element coordinates (m), common frame
  double min_spacing = 0;     // m
  Eigen::Index norm_count = 0;  // 0: number of movable elements
};

// Sorts the raw coordinates and enforces min_spacing with a left-to-right sweep, then a
// right-to-left sweep if the upper bound is exceeded.
Eigen::VectorXd project_positions(const Eigen::VectorXd& raw, Interval bounds, double min_spacing);

// Maps priorities in [0,1]^n to feasible element coordinates.
Eigen::VectorXd decode_positions(const Eigen::VectorXd& priorities, const MulaOptions& opts);

double positions_sum_rate(const Eigen::VectorXd& positions, double wavelength,
                          const std::vector<UserLocation<double>>& users, const PowerConfig<double>& power,
                          Eigen::Index norm_count = 0);

SwarmResult optimize_positions_mula(const std::vector<UserLocation<double>>& users, int n_elements,
                                    double wavelength, const MulaOptions& opts, const PowerConfig<double>& power,
                                    const SwarmConfig& cfg);

}  // namespace nfthin
