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

#include "nfthin/baselines.hpp"

#include <set>

using namespace nfthin;
using testutil::kPi;

namespace {

EvaluationContext default_context(int n_users, double snr_db = 20.0) {
  EvaluationContext ctx;
  const auto r = ctx.setup.range_interval();
  ctx.power = PowerConfig<double>::calibrated(snr_db, ctx.setup.wavelength(), 0.5 * (r.lo + r.hi), 1.0,
                                              double(ctx.setup.n_full) * n_users);
  ctx.swarm.n_particles = 6;
  ctx.swarm.n_iterations = 5;
  return ctx;
}

// One user, one stream: RZF reduces to matched filtering and SINR = P |h|^2 / sigma^2, with
// |h|^2 = beta * (active elements) / (normalization count).
double single_user_rate(const EvaluationContext& ctx, double range, double active, double norm) {
  const double lambda = ctx.setup.wavelength();
  const double beta = lambda * lambda / (16 * kPi * kPi * range * range);
  return std::log2(1 + ctx.power.total_power * beta * active / norm / ctx.power.noise_variance);
}

}  // namespace

TEST_CASE("scheme names round-trip") {
  for (Scheme s : all_schemes()) CHECK(parse_scheme(to_string(s)) == s);
  CHECK(parse_scheme("sta") == Scheme::sta);
  CHECK(parse_scheme("Hula") == Scheme::hula);
  CHECK_THROWS_AS(parse_scheme("ULA"), std::invalid_argument);
  CHECK_THROWS_AS(parse_scheme(""), std::invalid_argument);
  CHECK(all_schemes().size() == 7);
}

TEST_CASE("default system layout") {
  const SystemSetup su;
  CHECK(su.wavelength() == doctest::Approx(0.01));
  const auto full = su.full_geometry();
  CHECK(full.size() == 320);
  CHECK(full.aperture() == doctest::Approx(319 * 0.005));
  CHECK(full.min_valid_range() == doctest::Approx(3.18).epsilon(0.01));
  const auto r = su.range_interval();
  CHECK(r.lo == doctest::Approx(full.min_valid_range()));
  CHECK(r.hi == doctest::Approx(2 * 1.595 * 1.595 / 0.01 / 7));
  CHECK_NOTHROW(su.validate());
}

TEST_CASE("system validation") {
  SystemSetup su;
  su.n_active = 400;
  CHECK_THROWS_AS(su.validate(), std::invalid_argument);
  su = {};
  su.carrier_hz = 0;
  CHECK_THROWS_AS(su.validate(), std::invalid_argument);
  su = {};
  su.sula_spacing_wl = -1;
  CHECK_THROWS_AS(su.validate(), std::invalid_argument);
  su = {};
  su.mula_half_width_wl = 2;
  CHECK_THROWS_AS(su.validate(), std::invalid_argument);
}

TEST_CASE("baseline geometries") {
  const SystemSetup su;
  const double lambda = su.wavelength();
  const double center = su.full_geometry().aperture() / 2;
  const auto fula = make_fula(320, lambda / 2, lambda);
  CHECK(fula.mask.active_count() == 320);
  CHECK(fula.geometry.positions()[0] == 0.0);

  const auto sula = make_sula(32, 5 * lambda, lambda, center);
  CHECK(sula.geometry.aperture() == doctest::Approx(155 * lambda));
  CHECK(0.5 * (sula.geometry.positions()[0] + sula.geometry.positions()[31]) == doctest::Approx(center));
  CHECK(sula.geometry.aperture() == doctest::Approx(fula.geometry.aperture()).epsilon(0.03));

  const auto hula = make_hula(32, lambda / 2, lambda, center);
  CHECK(hula.geometry.aperture() == doctest::Approx(15.5 * lambda));
  CHECK(0.5 * (hula.geometry.positions()[0] + hula.geometry.positions()[31]) == doctest::Approx(center));

  const auto origin = make_sula(32, 5 * lambda, lambda);
  CHECK(origin.geometry.positions()[0] == 0.0);
}

TEST_CASE("SULA has grating lobes at q/5, HULA has none") {
  const double lambda = 0.01;
  const auto s = grating_lobe_angles(5 * lambda, lambda, 0.0);
  std::set<int> vis;
  for (std::size_t i = 0; i < s.orders.size(); ++i)
    if (s.visible[i]) {
      vis.insert(s.orders[i]);
      CHECK(std::sin(s.angles[i]) == doctest::Approx(s.orders[i] / 5.0));
    }
  CHECK(vis == std::set<int>{-4, -3, -2, -1, 1, 2, 3, 4});
  CHECK(grating_lobe_angles(lambda / 2, lambda, 0.0).visible_angles().empty());
  CHECK(grating_lobe_angles(lambda / 2, lambda, kPi / 3).visible_angles().empty());
}

TEST_CASE("channel options follow the gain normalization") {
  EvaluationContext ctx;
  CHECK(channel_options(ctx, 32, ValidityMode::strict).norm_count == 320);
  ctx.normalization = GainNormalization::per_scheme;
  const auto o = channel_options(ctx, 32, ValidityMode::lenient);
  CHECK(o.norm_count == 32);
  CHECK(o.validity == ValidityMode::lenient);
}

TEST_CASE("fixed arrays match the single-user closed form") {
  auto ctx = default_context(1);
  const Scenario s{{{0.3, 20.0}}, 0};
  SchemeBuildOptions bo;
  for (Scheme sc : {Scheme::fula, Scheme::sula, Scheme::hula}) {
    const auto ev = make_scheme(sc, ctx, bo);
    const double active = sc == Scheme::fula ? 320 : 32;
    CHECK(ev->scheme() == sc);
    CHECK(ev->evaluate(s, 0).sum_rate == doctest::Approx(single_user_rate(ctx, 20.0, active, 320)).epsilon(1e-10));
  }
  ctx.normalization = GainNormalization::per_scheme;
  const double fula = make_scheme(Scheme::fula, ctx, bo)->evaluate(s, 0).sum_rate;
  const double sula = make_scheme(Scheme::sula, ctx, bo)->evaluate(s, 0).sum_rate;
  CHECK(sula == doctest::Approx(fula).epsilon(1e-10));
}

TEST_CASE("strict validity rejects users inside 2D of the full array") {
  const auto ctx = default_context(1);
  const Scenario close{{{0.0, 2.0}}, 0};
  const auto fula = make_scheme(Scheme::fula, ctx, {});
  CHECK_THROWS_AS(fula->evaluate(close, 0), ValidityError);
  auto lenient = ctx;
  lenient.validity = ValidityMode::lenient;
  CHECK(std::isfinite(make_scheme(Scheme::fula, lenient, {})->evaluate(close, 0).sum_rate));
}

TEST_CASE("equal-per-user power is a separate reporting mode") {
  auto ctx = default_context(4);
  const auto users = sample_scenario(4, ctx.setup.range_interval(), {-kPi / 3, kPi / 3}, 9);
  const double sum = make_scheme(Scheme::hula, ctx, {})->evaluate(users, 0).sum_rate;
  ctx.precoder = PowerNormalization::equal_per_user;
  const double eq = make_scheme(Scheme::hula, ctx, {})->evaluate(users, 0).sum_rate;
  CHECK(std::isfinite(eq));
  CHECK(eq != sum);
  auto one = default_context(1);
  const Scenario s{{{0.1, 30.0}}, 0};
  const double a = make_scheme(Scheme::fula, one, {})->evaluate(s, 0).sum_rate;
  one.precoder = PowerNormalization::equal_per_user;
  CHECK(make_scheme(Scheme::fula, one, {})->evaluate(s, 0).sum_rate == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("STA re-optimizes per scenario and is reproducible") {
  const auto ctx = default_context(4);
  const StaEvaluator sta(ctx);
  const Interval angles{-kPi / 3, kPi / 3};
  const auto s1 = sample_scenario(4, ctx.setup.range_interval(), angles, 1);
  const auto s2 = sample_scenario(4, ctx.setup.range_interval(), angles, 2);
  const auto a = sta.optimize(s1, 5), b = sta.optimize(s1, 5), c = sta.optimize(s2, 5);
  CHECK(a.best_mask == b.best_mask);
  CHECK(a.best_mask != c.best_mask);
  CHECK(a.best_mask->active_count() == 32);
  CHECK(a.best_mask->active(0));
  CHECK(a.best_mask->active(319));
  CHECK(sta.fixed_mask() == nullptr);
  CHECK(sta.evaluate(s1, 5).sum_rate == doctest::Approx(-a.best_cost).epsilon(1e-10));
}

TEST_CASE("MULA positions stay inside the movable window") {
  const auto ctx = default_context(3);
  const MulaEvaluator mula(ctx);
  const auto o = mula.options();
  const double center = ctx.setup.full_geometry().aperture() / 2;
  CHECK(0.5 * (o.bounds.lo + o.bounds.hi) == doctest::Approx(center));
  CHECK(o.bounds.hi - o.bounds.lo == doctest::Approx(1.6));
  CHECK(o.norm_count == 320);
  const auto s = sample_scenario(3, ctx.setup.range_interval(), {-kPi / 3, kPi / 3}, 4);
  const auto r = mula.optimize(s, 3);
  const auto& p = *r.best_elements;
  CHECK(p.size() == 32);
  CHECK(p[0] >= o.bounds.lo);
  CHECK(p[31] <= o.bounds.hi);
  for (Eigen::Index i = 1; i < p.size(); ++i) CHECK(p[i] - p[i - 1] >= o.min_spacing * (1 - 1e-12));
  CHECK(mula.evaluate(s, 3).sum_rate == doctest::Approx(-r.best_cost).epsilon(1e-10));
}

TEST_CASE("GTA and PTA masks are built once and reused") {
  auto ctx = default_context(4);
  SchemeBuildOptions bo;
  bo.gta.grid_points = 1024;
  bo.gta_swarm.n_particles = 4;
  bo.gta_swarm.n_iterations = 2;
  bo.pta_swarm = bo.gta_swarm;
  bo.pta_ensemble = 3;
  bo.n_users = 4;
  bo.angle_interval = {-kPi / 3, kPi / 3};
  const auto s1 = sample_scenario(4, ctx.setup.range_interval(), bo.angle_interval, 1);
  const auto s2 = sample_scenario(4, ctx.setup.range_interval(), bo.angle_interval, 2);
  for (Scheme sc : {Scheme::gta, Scheme::pta}) {
    const auto ev = make_scheme(sc, ctx, bo);
    REQUIRE(ev->fixed_mask() != nullptr);
    const ThinningVector before = *ev->fixed_mask();
    CHECK(before.active_count() == 32);
    CHECK(before.active(0));
    CHECK(before.active(319));
    const double r1 = ev->evaluate(s1, 1).sum_rate;
    ev->evaluate(s2, 2);
    CHECK(*ev->fixed_mask() == before);
    CHECK(ev->evaluate(s1, 99).sum_rate == r1);
  }
  const auto g1 = make_gta_mask(ctx.setup, bo.gta_coverage, bo.gta_swarm, bo.gta);
  const auto g2 = make_gta_mask(ctx.setup, bo.gta_coverage, bo.gta_swarm, bo.gta);
  CHECK(g1 == g2);
  CHECK_THROWS_AS(make_pta(ctx.setup, {}, ctx, bo.pta_swarm), std::invalid_argument);
}

TEST_CASE("thinned fixed arrays normalize by their active count in per-scheme mode") {
  auto ctx = default_context(1);
  ctx.normalization = GainNormalization::per_scheme;
  std::vector<int> idx;
  for (int n = 0; n < 320; n += 10) idx.push_back(n);
  idx.back() = 319;
  const FixedArrayEvaluator ev(Scheme::gta, {ctx.setup.full_geometry(), ThinningVector::from_indices(320, idx)}, ctx);
  const Scenario s{{{-0.4, 15.0}}, 0};
  CHECK(ev.evaluate(s, 0).sum_rate == doctest::Approx(single_user_rate(ctx, 15.0, 32, 32)).epsilon(1e-10));
}
