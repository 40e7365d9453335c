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

// Benchmark array configurations and per-scheme sum-rate evaluators.

#pragma once

#include "nfthin/array_core.hpp"
#include "nfthin/channel.hpp"
#include "nfthin/precoder.hpp"
#include "nfthin/pso.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nfthin {

enum class Scheme { fula, mula, sta, gta, pta, sula, hula };

std::string to_string(Scheme s);
Scheme parse_scheme(std::string_view name);
const std::vector<Scheme>& all_schemes();

// Physical layout shared by every scheme.
struct SystemSetup {
  double carrier_hz = 30e9;
  int n_full = 320;
  double full_spacing_wl = 0.5;
  int n_active = 32;
  double sula_spacing_wl = 5.0;
  double hula_spacing_wl = 0.5;
  double mula_half_width_wl = 80.0;
  double mula_min_spacing_wl = 0.5;

  double wavelength() const { return wavelength_from_frequency(carrier_hz); }
  ArrayGeometry<double> full_geometry() const;
  // User sector: r ~ U[2D, R_D/7] of the full array.
  Interval range_interval() const;
  void validate() const;
};

struct SchemeArray {
  ArrayGeometry<double> geometry;
  ThinningVector mask;
};

SchemeArray make_fula(int n_elements, double spacing, double wavelength);
// Uniform array of n elements centered on `center` (m). center < 0 keeps element 0 at the origin.
SchemeArray make_sula(int n_elements, double spacing, double wavelength, double center = -1);
SchemeArray make_hula(int n_elements, double spacing, double wavelength, double center = -1);

// How each scheme's response vector is normalized.
enum class GainNormalization {
  full_array,  // 1/sqrt(N_full) for every scheme (per-element gain)
  per_scheme,  // 1/sqrt(own element count)
};

struct EvaluationContext {
  SystemSetup setup;
  PowerConfig<double> power;
  GainNormalization normalization = GainNormalization::full_array;
  SwarmConfig swarm;  // STA / MULA per-trial budget
  ValidityMode validity = ValidityMode::strict;  // fixed arrays and STA; MULA is always lenient
  PowerNormalization precoder = PowerNormalization::sum_power;  // reported rates; optimizers use sum power
};

// Sum-rate report of one scheme on one scenario. `seed` drives per-trial optimizers.
class SchemeEvaluator {
 public:
  virtual ~SchemeEvaluator() = default;
  virtual Scheme scheme() const = 0;
  virtual RateReport<double> evaluate(const Scenario& s, std::uint64_t seed) const = 0;
  // Mask of fixed-mask schemes; nullptr for schemes re-optimized per scenario.
  virtual const ThinningVector* fixed_mask() const { return nullptr; }
};

// Fixed geometry + fixed mask (FULA, SULA, HULA, GTA, PTA).
class FixedArrayEvaluator final : public SchemeEvaluator {
 public:
  FixedArrayEvaluator(Scheme scheme, SchemeArray array, const EvaluationContext& ctx);
  Scheme scheme() const override { return scheme_; }
  RateReport<double> evaluate(const Scenario& s, std::uint64_t seed) const override;
  const ThinningVector* fixed_mask() const override { return &array_.mask; }

 private:
  Scheme scheme_;
  SchemeArray array_;
  EvaluationContext ctx_;
};

// Mask re-optimized for every scenario.
class StaEvaluator final : public SchemeEvaluator {
 public:
  explicit StaEvaluator(const EvaluationContext& ctx);
  Scheme scheme() const override { return Scheme::sta; }
  RateReport<double> evaluate(const Scenario& s, std::uint64_t seed) const override;
  SwarmResult optimize(const Scenario& s, std::uint64_t seed) const;

 private:
  EvaluationContext ctx_;
  ArrayGeometry<double> full_;
};

// Element positions re-optimized for every scenario.
class MulaEvaluator final : public SchemeEvaluator {
 public:
  explicit MulaEvaluator(const EvaluationContext& ctx);
  Scheme scheme() const override { return Scheme::mula; }
  RateReport<double> evaluate(const Scenario& s, std::uint64_t seed) const override;
  SwarmResult optimize(const Scenario& s, std::uint64_t seed) const;
  MulaOptions options() const;

 private:
  EvaluationContext ctx_;
};

ChannelOptions channel_options(const EvaluationContext& ctx, Eigen::Index own_count, ValidityMode mode);

RateReport<double> rate_report(const ArrayGeometry<double>& geom, const ThinningVector& mask, const Scenario& s,
                               const PowerConfig<double>& power, const ChannelOptions& opts,
                               PowerNormalization precoder = PowerNormalization::sum_power);

// Pre-optimized masks, computed once and reused.
ThinningVector make_gta_mask(const SystemSetup& setup, const std::vector<double>& coverage_angles,
                             const SwarmConfig& cfg, const GtaOptions& opts = {});
ThinningVector make_pta(const SystemSetup& setup, const std::vector<Scenario>& ensemble,
                        const EvaluationContext& ctx, const SwarmConfig& cfg);

struct SchemeBuildOptions {
  std::vector<double> gta_coverage = default_coverage_angles();
  GtaOptions gta;
  SwarmConfig gta_swarm;
  SwarmConfig pta_swarm;
  int pta_ensemble = 100;
  std::uint64_t pta_seed = 0;
  int n_users = 16;
  Interval angle_interval;
};

std::unique_ptr<SchemeEvaluator> make_scheme(Scheme s, const EvaluationContext& ctx, const SchemeBuildOptions& opts);

}  // namespace nfthin
