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

// Monte Carlo experiment driver: pattern figure, sum-rate figures and aggregation.

#pragma once

#include "nfthin/baselines.hpp"
#include "nfthin/beam_analysis.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace nfthin {

// Software version string embedded in every artifact.
std::string version_string();

struct ExperimentSpec {
  SystemSetup setup;
  int n_trials = 500;
  std::vector<Scheme> schemes = all_schemes();
  int n_users = 16;
  Interval angle_interval{-std::numbers::pi / 3, std::numbers::pi / 3};
  std::optional<Interval> range_interval;  // default: setup.range_interval()
  std::uint64_t master_seed = 1;
  double snr_db = 20.0;
  double noise_variance = 1.0;
  GainNormalization normalization = GainNormalization::full_array;
  ValidityMode validity = ValidityMode::strict;
  PowerNormalization precoder = PowerNormalization::sum_power;
  SwarmConfig swarm;      // per-trial STA / MULA
  SwarmConfig gta_swarm;  // one-off GTA design
  SwarmConfig pta_swarm;  // one-off PTA design
  int pta_ensemble = 100;
  GtaOptions gta;
  std::vector<double> gta_coverage = default_coverage_angles();
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  Interval ranges() const { return range_interval.value_or(setup.range_interval()); }
  void validate() const;
};

// Per-antenna, per-stream SNR at the midpoint of the range interval:
// total_power = sigma^2 10^(snr/10) N_full K / beta(r_ref).
PowerConfig<double> power_for(const ExperimentSpec& spec, int n_users);

struct EmpiricalCdf {
  std::vector<double> x;  // sorted samples
  std::vector<double> p;  // i / n at x[i-1] (right-continuous)

  double operator()(double v) const;
  double quantile(double q) const;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

struct SchemeSamples {
  Scheme scheme;
  std::vector<double> sum_rate;
  std::vector<double> min_sinr_db;

  double mean() const;
  double standard_error() const;
  double median() const;
};

struct AggregateResult {
  int n_users = 0;
  std::vector<Scenario> scenarios;  // one per trial, shared by every scheme
  std::vector<SchemeSamples> schemes;
  std::map<Scheme, std::string> mask_bits;  // fixed masks (GTA/PTA) for the record

  const SchemeSamples& at(Scheme s) const;
  bool has(Scheme s) const;
};

// Paired trials: trial t draws one scenario from derive_seed(master, t) and every scheme is
// evaluated on it. Results do not depend on the worker count.
AggregateResult run_monte_carlo(const ExperimentSpec& spec, int n_users);

AggregateResult run_fig2(ExperimentSpec spec);
AggregateResult run_fig3(ExperimentSpec spec);

struct Fig4Result {
  std::vector<int> k_values;
  std::vector<AggregateResult> per_k;
};
Fig4Result run_fig4(ExperimentSpec spec, const std::vector<int>& k_values);

struct Fig1Spec {
  double carrier_hz = 15e9;
  int n_elements = 256;
  double spacing_wl = 2.0;
  double focus_angle = 0.0;
  double focus_range = 0;       // 0: R_D / 30
  Eigen::Index angle_points = 8192;  // sin(theta) grid for the angle cut
  Eigen::Index range_points = 4096;  // log grid for the range cut
  double range_min = 0.01;
  double short_range_max = 0.02;  // ripple window [range_min, short_range_max]: first octave
  Eigen::Index map_angles = 181;
  Eigen::Index map_ranges = 160;
};

struct Fig1Result {
  Fig1Spec spec;
  ArrayGeometry<double> geometry;
  FocusPoint<double> focus;
  double rayleigh = 0;
  BeamPattern<double> angle_cut;
  BeamPattern<double> range_cut;
  RVector<double> map_angles;  // rad
  RVector<double> map_ranges;  // m
  RMatrix<double> map;         // (range, angle)
  std::vector<double> predicted_lobes;       // rad
  std::vector<double> measured_lobes;        // rad, local maxima >= half the mainlobe outside it
  std::vector<double> measured_lobe_gain_db; // relative to the mainlobe
  double range_sidelobe_max_db = -80;        // highest local max outside the range mainlobe
  double range_sidelobe_at = 0;
  double short_range_ripple_db = -80;        // highest gain in [range_min, short_range_max]
  double short_range_ripple_at = 0;
};

Fig1Result run_fig1(const Fig1Spec& spec = {});

// Local maxima of the angle pattern at >= `fraction` of the peak, excluding the mainlobe region.
std::vector<Eigen::Index> grating_peaks(const BeamPattern<double>& angle_cut, double exclusion_halfwidth,
                                        double fraction = 0.5);

// Highest local maximum of a range cut outside the connected above-threshold region around the focus.
struct RangeSidelobe {
  double gain = 0;
  double range = 0;
  bool found = false;
};
RangeSidelobe range_sidelobe(const BeamPattern<double>& range_cut, double mainlobe_threshold = 0.5);

// Artifact writers: <outdir>/figN_data.csv, figN.svg, figN_meta.json.
void write_fig1(const Fig1Result& r, const std::filesystem::path& outdir, const nlohmann::json& config);
void write_sum_rate_figure(const std::string& fig, const AggregateResult& r, const ExperimentSpec& spec,
                           const std::filesystem::path& outdir, const nlohmann::json& config);
void write_fig4(const Fig4Result& r, const ExperimentSpec& spec, const std::filesystem::path& outdir,
                const nlohmann::json& config);
void write_pattern_csv(std::ostream& os, const BeamPattern<double>& p);

nlohmann::json to_json(const ExperimentSpec& spec);

}  // namespace nfthin
