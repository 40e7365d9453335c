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

// Randomized invariant harness for the swarm engine: monotone global best, exact-N_T masks that
// contain F, positions clipped to [0,1], bit-exact reruns, and feasible continuous decoding.

#pragma once

#include "nfthin/pso.hpp"
#include "nfthin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace testutil {

struct PropertyReport {
  int cases = 0;
  int failures = 0;
  long evaluations = 0;
  std::string first_failure;
};

namespace detail {

inline double mask_cost(const nfthin::ThinningVector& b, int family, std::uint64_t salt,
                        const std::vector<double>& weights) {
  switch (family) {
    case 0: {
      double c = 0;
      for (int n = 0; n < b.size(); ++n) c += b.active(n) ? weights[static_cast<std::size_t>(n)] : 0.0;
      return c;
    }
    case 1: {
      double c = 0;
      const auto idx = b.active_indices();
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
          c += weights[static_cast<std::size_t>(idx[i])] * weights[static_cast<std::size_t>(idx[j])];
      return c;
    }
    case 2: {
      std::uint64_t h = salt;
      for (int n = 0; n < b.size(); ++n) h = nfthin::splitmix64(h ^ (b.active(n) ? 0x9eULL + n : 0ULL));
      return static_cast<double>(h >> 11) * 0x1.0p-53;
    }
    default: {
      // Mostly finite with occasional NaN/inf to exercise the non-finite path.
      std::uint64_t h = salt;
      for (int n = 0; n < b.size(); ++n) h = nfthin::splitmix64(h + (b.active(n) ? 1ULL + n : 0ULL));
      if (h % 7 == 0) return std::numeric_limits<double>::quiet_NaN();
      if (h % 11 == 0) return std::numeric_limits<double>::infinity();
      return static_cast<double>(h % 1000);
    }
  }
}

}  // namespace detail

inline PropertyReport run_engine_properties(int n_cases, std::uint64_t seed) {
  PropertyReport rep;
  nfthin::Rng gen(seed);
  auto fail = [&](int c, const std::string& what) {
    ++rep.failures;
    if (rep.first_failure.empty()) {
      std::ostringstream os;
      os << "case " << c << ": " << what;
      rep.first_failure = os.str();
    }
  };
  for (int c = 0; c < n_cases; ++c) {
    ++rep.cases;
    const int n = 3 + static_cast<int>(gen() % 28);
    std::vector<int> fixed;
    switch (gen() % 3) {
      case 0: fixed = {0, n - 1}; break;
      case 1: break;
      default:
        for (int i = 0; i < n; ++i)
          if (gen() % 5 == 0 && static_cast<int>(fixed.size()) < n - 1) fixed.push_back(i);
    }
    const int lo = std::max<int>(1, static_cast<int>(fixed.size()));
    const int n_active = lo + static_cast<int>(gen() % static_cast<std::uint64_t>(n - lo + 1));
    nfthin::SwarmConfig cfg;
    cfg.n_particles = 2 + static_cast<int>(gen() % 7);
    cfg.n_iterations = static_cast<int>(gen() % 7);
    cfg.inertia_start = gen.uniform();
    cfg.inertia_end = gen.uniform();
    cfg.cognitive = gen.uniform(0, 3);
    cfg.social = gen.uniform(0, 3);
    cfg.velocity_clamp = gen.uniform(0.01, 1.0);
    cfg.seed = gen();
    const int family = static_cast<int>(gen() % 4);
    const std::uint64_t salt = gen();
    std::vector<double> weights(static_cast<std::size_t>(n));
    for (auto& w : weights) w = gen.uniform(-1, 1);

    bool infeasible = false;
    const nfthin::MaskCost cost = [&](const nfthin::ThinningVector& b) {
      ++rep.evaluations;
      if (b.size() != n || b.active_count() != n_active) infeasible = true;
      for (int f : fixed)
        if (!b.active(f)) infeasible = true;
      return detail::mask_cost(b, family, salt, weights);
    };

    // Engine loop with per-step inspection.
    std::vector<int> fixed_sorted = fixed;
    const int n_var = n - static_cast<int>(fixed.size());
    if (n_var > 0) {
      const nfthin::PositionCost pc = [&](const Eigen::VectorXd& x) {
        return cost(nfthin::top_k_binarize(x, n_active, fixed_sorted));
      };
      nfthin::Rng rng(cfg.seed);
      auto swarm = nfthin::init_swarm(n_var, cfg, pc, rng);
      for (int t = 0; t < cfg.n_iterations; ++t) {
        nfthin::pso_step(swarm, cfg, pc, rng);
        for (const auto& p : swarm.particles)
          if (p.position.minCoeff() < 0.0 || p.position.maxCoeff() > 1.0 ||
              p.velocity.cwiseAbs().maxCoeff() > cfg.velocity_clamp)
            fail(c, "particle left [0,1] or exceeded the velocity clamp");
      }
      for (std::size_t i = 1; i < swarm.cost_history.size(); ++i)
        if (!(swarm.cost_history[i] <= swarm.cost_history[i - 1])) fail(c, "engine cost history increased");
    }

    const auto a = nfthin::optimize_mask(n, n_active, fixed, cost, cfg);
    const auto b = nfthin::optimize_mask(n, n_active, fixed, cost, cfg);
    if (infeasible) fail(c, "an evaluated mask violated N_T or F");
    for (std::size_t i = 1; i < a.cost_history.size(); ++i)
      if (!(a.cost_history[i] <= a.cost_history[i - 1])) fail(c, "result cost history increased");
    if (!a.best_mask || a.best_mask->active_count() != n_active) fail(c, "best mask has the wrong weight");
    for (int f : fixed)
      if (a.best_mask && !a.best_mask->active(f)) fail(c, "best mask drops a fixed element");
    const bool same = a.best_mask == b.best_mask && a.cost_history == b.cost_history &&
                      a.best_position == b.best_position && a.evaluations == b.evaluations &&
                      (a.best_cost == b.best_cost || (std::isnan(a.best_cost) && std::isnan(b.best_cost)));
    if (!same) fail(c, "rerun with the same seed differs");
    if (a.best_mask && std::isfinite(a.best_cost) && detail::mask_cost(*a.best_mask, family, salt, weights) != a.best_cost)
      fail(c, "best cost does not match its mask");

    // Continuous decoding stays feasible.
    const double width = gen.uniform(1.0, 5.0);
    const int m = 2 + static_cast<int>(gen() % 8);
    nfthin::MulaOptions mo;
    mo.bounds = {-width / 2, width / 2};
    mo.min_spacing = gen.uniform(0.0, width / (m - 1));
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) x[i] = gen.uniform();
    const auto pos = nfthin::decode_positions(x, mo);
    for (int i = 0; i < m; ++i) {
      if (pos[i] < mo.bounds.lo - 1e-12 || pos[i] > mo.bounds.hi + 1e-12) fail(c, "decoded position out of bounds");
      if (i > 0 && pos[i] - pos[i - 1] < mo.min_spacing * (1 - 1e-9)) fail(c, "decoded positions too close");
    }
  }
  return rep;
}

}  // namespace testutil
