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

#include "nfthin/baselines.hpp"

#include <stdexcept>

namespace nfthin {

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::fula: return "FULA";
    case Scheme::mula: return "MULA";
    case Scheme::sta: return "STA";
    case Scheme::gta: return "GTA";
    case Scheme::pta: return "PTA";
    case Scheme::sula: return "SULA";
    case Scheme::hula: return "HULA";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : all_schemes()) {
    const std::string canon = to_string(s);
    if (name.size() != canon.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < name.size(); ++i)
      same = same && std::toupper(static_cast<unsigned char>(name[i])) == canon[i];
    if (same) return s;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

const std::vector<Scheme>& all_schemes() {
  static const std::vector<Scheme> schemes{Scheme::fula, Scheme::mula, Scheme::sta, Scheme::gta,
                                           Scheme::pta,  Scheme::sula, Scheme::hula};
  return schemes;
}

ArrayGeometry<double> SystemSetup::full_geometry() const {
  return ArrayGeometry<double>::uniform(n_full, full_spacing_wl * wavelength(), wavelength());
}

Interval SystemSetup::range_interval() const {
  const auto g = full_geometry();
  return {g.min_valid_range(), rayleigh_distance(g) / 7.0};
}

void SystemSetup::validate() const {
  if (!(carrier_hz > 0)) throw std::invalid_argument("system.carrier_hz must be positive");
  if (n_full < 2) throw std::invalid_argument("system.n_full must be >= 2");
  if (n_active < 2 || n_active > n_full) throw std::invalid_argument("system.n_active must lie in [2, n_full]");
  if (!(full_spacing_wl > 0) || !(sula_spacing_wl > 0) || !(hula_spacing_wl > 0))
    throw std::invalid_argument("system: spacings must be positive");
  if (!(mula_min_spacing_wl > 0) || static_cast<double>(n_active) * mula_min_spacing_wl > 2 * mula_half_width_wl)
    throw std::invalid_argument("system: MULA spacing infeasible within its bounds");
}

SchemeArray make_fula(int n_elements, double spacing, double wavelength) {
  auto g = ArrayGeometry<double>::uniform(n_elements, spacing, wavelength);
  return {std::move(g), ThinningVector::all_active(n_elements)};
}

namespace {

SchemeArray centered_uniform(int n_elements, double spacing, double wavelength, double center) {
  auto g = ArrayGeometry<double>::uniform(n_elements, spacing, wavelength);
  if (center >= 0) g = g.translated(center - g.aperture() / 2);
  return {std::move(g), ThinningVector::all_active(n_elements)};
}

}  // namespace

SchemeArray make_sula(int n_elements, double spacing, double wavelength, double center) {
  return centered_uniform(n_elements, spacing, wavelength, center);
}

SchemeArray make_hula(int n_elements, double spacing, double wavelength, double center) {
  return centered_uniform(n_elements, spacing, wavelength, center);
}

ChannelOptions channel_options(const EvaluationContext& ctx, Eigen::Index own_count, ValidityMode mode) {
  ChannelOptions o;
  o.norm_count = ctx.normalization == GainNormalization::full_array ? ctx.setup.n_full : own_count;
  o.validity = mode;
  return o;
}

RateReport<double> rate_report(const ArrayGeometry<double>& geom, const ThinningVector& mask, const Scenario& s,
                               const PowerConfig<double>& power, const ChannelOptions& opts,
                               PowerNormalization precoder) {
  const auto h = channel_matrix(geom, mask, s.users, opts);
  RzfOptions<double> rzf;
  rzf.normalization = precoder;
  return evaluate_rates(h.entries, mask, power, rzf);
}

FixedArrayEvaluator::FixedArrayEvaluator(Scheme scheme, SchemeArray array, const EvaluationContext& ctx)
    : scheme_(scheme), array_(std::move(array)), ctx_(ctx) {}

RateReport<double> FixedArrayEvaluator::evaluate(const Scenario& s, std::uint64_t) const {
  // Thinned schemes count their active elements, standalone arrays all of theirs.
  const Eigen::Index own = scheme_ == Scheme::gta || scheme_ == Scheme::pta ? array_.mask.active_count()
                                                                          : array_.geometry.size();
  const auto opts = channel_options(ctx_, own, ctx_.validity);
  return rate_report(array_.geometry, array_.mask, s, ctx_.power, opts, ctx_.precoder);
}

StaEvaluator::StaEvaluator(const EvaluationContext& ctx) : ctx_(ctx), full_(ctx.setup.full_geometry()) {}

SwarmResult StaEvaluator::optimize(const Scenario& s, std::uint64_t seed) const {
  SwarmConfig cfg = ctx_.swarm;
  cfg.seed = seed;
  const auto opts = channel_options(ctx_, ctx_.setup.n_active, ctx_.validity);
  return optimize_sta(full_, s.users, ctx_.setup.n_active, edge_elements(ctx_.setup.n_full), ctx_.power, cfg, opts);
}

RateReport<double> StaEvaluator::evaluate(const Scenario& s, std::uint64_t seed) const {
  const SwarmResult r = optimize(s, seed);
  const auto opts = channel_options(ctx_, ctx_.setup.n_active, ctx_.validity);
  return rate_report(full_, *r.best_mask, s, ctx_.power, opts, ctx_.precoder);
}

MulaEvaluator::MulaEvaluator(const EvaluationContext& ctx) : ctx_(ctx) {}

MulaOptions MulaEvaluator::options() const {
  const double lambda = ctx_.setup.wavelength();
  const double center = ctx_.setup.full_geometry().aperture() / 2;
  MulaOptions o;
  o.bounds = {center - ctx_.setup.mula_half_width_wl * lambda, center + ctx_.setup.mula_half_width_wl * lambda};
  o.min_spacing = ctx_.setup.mula_min_spacing_wl * lambda;
  o.norm_count = ctx_.normalization == GainNormalization::full_array ? ctx_.setup.n_full : ctx_.setup.n_active;
  return o;
}

SwarmResult MulaEvaluator::optimize(const Scenario& s, std::uint64_t seed) const {
  SwarmConfig cfg = ctx_.swarm;
  cfg.seed = seed;
  return optimize_positions_mula(s.users, ctx_.setup.n_active, ctx_.setup.wavelength(), options(), ctx_.power, cfg);
}

RateReport<double> MulaEvaluator::evaluate(const Scenario& s, std::uint64_t seed) const {
  const SwarmResult r = optimize(s, seed);
  const ArrayGeometry<double> geom(ctx_.setup.wavelength(), *r.best_elements);
  ChannelOptions opts;
  opts.norm_count = options().norm_count;
  opts.validity = ValidityMode::lenient;
  return rate_report(geom, ThinningVector::all_active(static_cast<int>(geom.size())), s, ctx_.power, opts,
                     ctx_.precoder);
}

ThinningVector make_gta_mask(const SystemSetup& setup, const std::vector<double>& coverage_angles,
                             const SwarmConfig& cfg, const GtaOptions& opts) {
  const auto r = optimize_gta(setup.full_geometry(), setup.n_active, edge_elements(setup.n_full), coverage_angles,
                              cfg, opts);
  return *r.best_mask;
}

ThinningVector make_pta(const SystemSetup& setup, const std::vector<Scenario>& ensemble,
                        const EvaluationContext& ctx, const SwarmConfig& cfg) {
  if (ensemble.empty()) throw std::invalid_argument("make_pta: empty ensemble");
  const auto opts = channel_options(ctx, setup.n_active, ctx.validity);
  const auto r = optimize_pta(setup.full_geometry(), ensemble, setup.n_active, edge_elements(setup.n_full),
                              ctx.power, cfg, opts);
  return *r.best_mask;
}

std::unique_ptr<SchemeEvaluator> make_scheme(Scheme s, const EvaluationContext& ctx, const SchemeBuildOptions& opts) {
  const SystemSetup& su = ctx.setup;
  const double lambda = su.wavelength();
  const double center = su.full_geometry().aperture() / 2;
  switch (s) {
    case Scheme::fula:
      return std::make_unique<FixedArrayEvaluator>(s, make_fula(su.n_full, su.full_spacing_wl * lambda, lambda), ctx);
    case Scheme::sula:
      return std::make_unique<FixedArrayEvaluator>(
          s, make_sula(su.n_active, su.sula_spacing_wl * lambda, lambda, center), ctx);
    case Scheme::hula:
      return std::make_unique<FixedArrayEvaluator>(
          s, make_hula(su.n_active, su.hula_spacing_wl * lambda, lambda, center), ctx);
    case Scheme::gta: {
      auto mask = make_gta_mask(su, opts.gta_coverage, opts.gta_swarm, opts.gta);
      return std::make_unique<FixedArrayEvaluator>(s, SchemeArray{su.full_geometry(), std::move(mask)}, ctx);
    }
    case Scheme::pta: {
      const Interval ranges = su.range_interval();
      std::vector<Scenario> ensemble;
      for (int e = 0; e < opts.pta_ensemble; ++e)
        ensemble.push_back(sample_scenario(opts.n_users, ranges, opts.angle_interval, derive_seed(opts.pta_seed, e)));
      auto mask = make_pta(su, ensemble, ctx, opts.pta_swarm);
      return std::make_unique<FixedArrayEvaluator>(s, SchemeArray{su.full_geometry(), std::move(mask)}, ctx);
    }
    case Scheme::sta: return std::make_unique<StaEvaluator>(ctx);
    case Scheme::mula: return std::make_unique<MulaEvaluator>(ctx);
  }
  throw std::invalid_argument("make_scheme: unknown scheme");
}

}  // namespace nfthin
