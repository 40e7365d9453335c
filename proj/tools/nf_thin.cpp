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

// nf-thin command-line driver.

#include "nfthin/experiment.hpp"
#include "nfthin/oracle.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace nfthin;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ExperimentSpec exp;
  Fig1Spec fig1;
  std::vector<int> fig4_k{2, 4, 8, 16, 24, 32};
  std::optional<double> range_min, range_max;
  double fig1_focus_deg = 0;
};

// Degrees for display: drops the last-bit noise of the radian round trip.
double shown_deg(double rad) { return std::round(rad2deg(rad) * 1e9) / 1e9; }

struct Tunable {
  std::string key;
  std::string help;
  std::function<void(RunConfig&, const json&)> set;
  std::function<json(const RunConfig&)> get;
};

template <typename T>
T as(const json& v, const std::string& key) {
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ConfigError(key + ": expected a string");
    return v.get<std::string>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError(key + ": expected an integer");
    return v.get<T>();
  } else {
    if (!v.is_number()) throw ConfigError(key + ": expected a number");
    return v.get<T>();
  }
}

template <typename T, typename M>
Tunable field(std::string key, std::string help, M member) {
  return {key, std::move(help), [key, member](RunConfig& c, const json& v) { member(c) = as<T>(v, key); },
          [member](const RunConfig& c) { return json(member(const_cast<RunConfig&>(c))); }};
}

void swarm_fields(std::vector<Tunable>& t, const std::string& section, const std::string& what,
                  SwarmConfig& (*pick)(RunConfig&)) {
  t.push_back(field<int>(section + ".n_particles", what + " swarm size P",
                         [pick](RunConfig& c) -> int& { return pick(c).n_particles; }));
  t.push_back(field<int>(section + ".n_iterations", what + " iterations n_PSO",
                         [pick](RunConfig& c) -> int& { return pick(c).n_iterations; }));
  t.push_back(field<double>(section + ".inertia_start", what + " inertia at the first iteration",
                            [pick](RunConfig& c) -> double& { return pick(c).inertia_start; }));
  t.push_back(field<double>(section + ".inertia_end", what + " inertia at the last iteration",
                            [pick](RunConfig& c) -> double& { return pick(c).inertia_end; }));
  t.push_back(field<double>(section + ".cognitive", what + " cognitive coefficient c1",
                            [pick](RunConfig& c) -> double& { return pick(c).cognitive; }));
  t.push_back(field<double>(section + ".social", what + " social coefficient c2",
                            [pick](RunConfig& c) -> double& { return pick(c).social; }));
  t.push_back(field<double>(section + ".velocity_clamp", what + " per-dimension velocity clamp",
                            [pick](RunConfig& c) -> double& { return pick(c).velocity_clamp; }));
}

std::vector<Scheme> parse_scheme_list(const json& v) {
  std::vector<std::string> names;
  if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) names.push_back(item);
  } else if (v.is_array()) {
    for (const auto& x : v) names.push_back(as<std::string>(x, "experiment.schemes"));
  } else {
    throw ConfigError("experiment.schemes: expected a list of names");
  }
  std::vector<Scheme> out;
  for (const auto& n : names) {
    try {
      out.push_back(parse_scheme(n));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("experiment.schemes: ") + e.what());
    }
  }
  return out;
}

template <typename E>
Tunable enum_field(std::string key, std::string help, std::vector<std::pair<std::string, E>> names,
                   std::function<E&(RunConfig&)> member) {
  return {key, help,
          [key, names, member](RunConfig& c, const json& v) {
            const auto s = as<std::string>(v, key);
            for (const auto& [n, e] : names)
              if (n == s) {
                member(c) = e;
                return;
              }
            throw ConfigError(key + ": unknown value '" + s + "'");
          },
          [names, member](const RunConfig& c) {
            const E e = member(const_cast<RunConfig&>(c));
            for (const auto& [n, x] : names)
              if (x == e) return json(n);
            return json();
          }};
}

std::vector<double> degrees_list(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) throw ConfigError(key + ": expected a non-empty list of degrees");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(deg2rad(as<double>(x, key)));
  return out;
}

const std::vector<Tunable>& tunables() {
  static const std::vector<Tunable> t = [] {
    std::vector<Tunable> t;
    using C = RunConfig;
    t.push_back(field<double>("system.carrier_hz", "carrier frequency", [](C& c) -> double& { return c.exp.setup.carrier_hz; }));
    t.push_back(field<int>("system.n_full", "full array size N", [](C& c) -> int& { return c.exp.setup.n_full; }));
    t.push_back(field<double>("system.full_spacing_wl", "full array spacing (wavelengths)",
                              [](C& c) -> double& { return c.exp.setup.full_spacing_wl; }));
    t.push_back(field<int>("system.n_active", "active elements N_T", [](C& c) -> int& { return c.exp.setup.n_active; }));
    t.push_back(field<double>("system.sula_spacing_wl", "SULA spacing (wavelengths)",
                              [](C& c) -> double& { return c.exp.setup.sula_spacing_wl; }));
    t.push_back(field<double>("system.hula_spacing_wl", "HULA spacing (wavelengths)",
                              [](C& c) -> double& { return c.exp.setup.hula_spacing_wl; }));
    t.push_back(field<double>("system.mula_half_width_wl", "MULA placement half-width (wavelengths)",
                              [](C& c) -> double& { return c.exp.setup.mula_half_width_wl; }));
    t.push_back(field<double>("system.mula_min_spacing_wl", "MULA minimum element gap (wavelengths)",
                              [](C& c) -> double& { return c.exp.setup.mula_min_spacing_wl; }));

    t.push_back(enum_field<ValidityMode>("channel.validity", "r > 2D check: strict | lenient",
                                         {{"strict", ValidityMode::strict}, {"lenient", ValidityMode::lenient}},
                                         [](C& c) -> ValidityMode& { return c.exp.validity; }));

    t.push_back(field<double>("power.snr_db", "SNR (dB)", [](C& c) -> double& { return c.exp.snr_db; }));
    t.push_back(field<double>("power.noise_variance", "noise variance", [](C& c) -> double& { return c.exp.noise_variance; }));
    t.push_back(enum_field<PowerNormalization>(
        "power.precoder_normalization", "RZF power scaling: sum_power | equal_per_user",
        {{"sum_power", PowerNormalization::sum_power}, {"equal_per_user", PowerNormalization::equal_per_user}},
        [](C& c) -> PowerNormalization& { return c.exp.precoder; }));

    t.push_back(field<int>("experiment.n_trials", "Monte Carlo trials", [](C& c) -> int& { return c.exp.n_trials; }));
    t.push_back(field<int>("experiment.n_users", "users K (fig2, fig3)", [](C& c) -> int& { return c.exp.n_users; }));
    t.push_back({"experiment.schemes", "schemes to evaluate (fig3, fig4)",
                 [](C& c, const json& v) { c.exp.schemes = parse_scheme_list(v); },
                 [](const C& c) {
                   json j = json::array();
                   for (Scheme s : c.exp.schemes) j.push_back(to_string(s));
                   return j;
                 }});
    t.push_back({"experiment.angle_min_deg", "lower user angle",
                 [](C& c, const json& v) { c.exp.angle_interval.lo = deg2rad(as<double>(v, "experiment.angle_min_deg")); },
                 [](const C& c) { return json(shown_deg(c.exp.angle_interval.lo)); }});
    t.push_back({"experiment.angle_max_deg", "upper user angle",
                 [](C& c, const json& v) { c.exp.angle_interval.hi = deg2rad(as<double>(v, "experiment.angle_max_deg")); },
                 [](const C& c) { return json(shown_deg(c.exp.angle_interval.hi)); }});
    t.push_back({"experiment.range_min_m", "lower user range (default 2D)",
                 [](C& c, const json& v) { c.range_min = as<double>(v, "experiment.range_min_m"); },
                 [](const C& c) { return json(c.exp.ranges().lo); }});
    t.push_back({"experiment.range_max_m", "upper user range (default R_D/7)",
                 [](C& c, const json& v) { c.range_max = as<double>(v, "experiment.range_max_m"); },
                 [](const C& c) { return json(c.exp.ranges().hi); }});
    t.push_back(field<std::uint64_t>("experiment.master_seed", "master seed",
                                     [](C& c) -> std::uint64_t& { return c.exp.master_seed; }));
    t.push_back(enum_field<GainNormalization>(
        "experiment.normalization", "response normalization: full_array | per_scheme (fig2 forces per_scheme)",
        {{"full_array", GainNormalization::full_array}, {"per_scheme", GainNormalization::per_scheme}},
        [](C& c) -> GainNormalization& { return c.exp.normalization; }));
    t.push_back(field<int>("experiment.pta_ensemble", "PTA scenario ensemble size",
                           [](C& c) -> int& { return c.exp.pta_ensemble; }));
    t.push_back(field<int>("experiment.workers", "worker threads", [](C& c) -> int& { return c.exp.workers; }));
    t.push_back({"experiment.fig4_k", "user counts swept by fig4",
                 [](C& c, const json& v) {
                   if (!v.is_array() || v.empty()) throw ConfigError("experiment.fig4_k: expected a list of integers");
                   c.fig4_k.clear();
                   for (const auto& x : v) c.fig4_k.push_back(as<int>(x, "experiment.fig4_k"));
                 },
                 [](const C& c) { return json(c.fig4_k); }});

    swarm_fields(t, "pso", "STA/MULA", [](C& c) -> SwarmConfig& { return c.exp.swarm; });
    swarm_fields(t, "gta_pso", "GTA", [](C& c) -> SwarmConfig& { return c.exp.gta_swarm; });
    swarm_fields(t, "pta_pso", "PTA", [](C& c) -> SwarmConfig& { return c.exp.pta_swarm; });

    t.push_back(field<double>("gta.tau_psll_db", "tolerated PSLL per steering angle (dB)",
                              [](C& c) -> double& { return c.exp.gta.tau_psll_db; }));
    t.push_back(field<double>("gta.penalty_weight", "penalty per dB above tau",
                              [](C& c) -> double& { return c.exp.gta.penalty_weight; }));
    t.push_back(field<Eigen::Index>("gta.grid_points", "sin(theta) grid points",
                                    [](C& c) -> Eigen::Index& { return c.exp.gta.grid_points; }));
    t.push_back(field<double>("gta.kappa", "mainlobe exclusion kappa (halfwidth kappa lambda / D)",
                              [](C& c) -> double& { return c.exp.gta.kappa; }));
    t.push_back({"gta.coverage_deg", "steering angles for the minimax",
                 [](C& c, const json& v) { c.exp.gta_coverage = degrees_list(v, "gta.coverage_deg"); },
                 [](const C& c) {
                   json j = json::array();
                   for (double a : c.exp.gta_coverage) j.push_back(shown_deg(a));
                   return j;
                 }});

    t.push_back(field<double>("fig1.carrier_hz", "carrier frequency", [](C& c) -> double& { return c.fig1.carrier_hz; }));
    t.push_back(field<int>("fig1.n_elements", "elements N", [](C& c) -> int& { return c.fig1.n_elements; }));
    t.push_back(field<double>("fig1.spacing_wl", "spacing (wavelengths)", [](C& c) -> double& { return c.fig1.spacing_wl; }));
    t.push_back(field<double>("fig1.focus_deg", "focus angle", [](C& c) -> double& { return c.fig1_focus_deg; }));
    t.push_back(field<double>("fig1.focus_range_m", "focus range (0: R_D/30)",
                              [](C& c) -> double& { return c.fig1.focus_range; }));
    t.push_back(field<Eigen::Index>("fig1.angle_points", "sin(theta) grid points",
                                    [](C& c) -> Eigen::Index& { return c.fig1.angle_points; }));
    t.push_back(field<Eigen::Index>("fig1.range_points", "log range grid points",
                                    [](C& c) -> Eigen::Index& { return c.fig1.range_points; }));
    t.push_back(field<double>("fig1.range_min_m", "range cut start", [](C& c) -> double& { return c.fig1.range_min; }));
    t.push_back(field<double>("fig1.short_range_max_m", "short-range ripple window end",
                              [](C& c) -> double& { return c.fig1.short_range_max; }));
    t.push_back(field<Eigen::Index>("fig1.map_angles", "2D map angle samples",
                                    [](C& c) -> Eigen::Index& { return c.fig1.map_angles; }));
    t.push_back(field<Eigen::Index>("fig1.map_ranges", "2D map range samples",
                                    [](C& c) -> Eigen::Index& { return c.fig1.map_ranges; }));
    return t;
  }();
  return t;
}

const Tunable& find_tunable(const std::string& key) {
  for (const auto& t : tunables())
    if (t.key == key) return t;
  throw ConfigError("unknown config key '" + key + "'");
}

void apply_json(RunConfig& c, const json& root) {
  if (!root.is_object()) throw ConfigError("config: top level must be an object of sections");
  for (const auto& [section, body] : root.items()) {
    if (!body.is_object()) throw ConfigError("config: section '" + section + "' must be an object");
    for (const auto& [key, value] : body.items()) find_tunable(section + "." + key).set(c, value);
  }
}

void apply_override(RunConfig& c, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + kv + "'");
  const std::string key = kv.substr(0, eq);
  const std::string text = kv.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  find_tunable(key).set(c, value);
}

json effective_config(const RunConfig& c) {
  json j = json::object();
  for (const auto& t : tunables()) {
    const auto dot = t.key.find('.');
    j[t.key.substr(0, dot)][t.key.substr(dot + 1)] = t.get(c);
  }
  return j;
}

std::string tunables_help() {
  RunConfig defaults;
  std::ostringstream os;
  os << "\nConfig keys (JSON sections or --set section.key=value), with defaults:\n";
  for (const auto& t : tunables()) os << "  " << t.key << " = " << t.get(defaults).dump() << "  " << t.help << '\n';
  return os.str();
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void print_summary(const AggregateResult& r) {
  for (const auto& s : r.schemes)
    std::cout << to_string(s.scheme) << ": mean " << fixed3(s.mean()) << " +- " << fixed3(s.standard_error())
              << ", median " << fixed3(s.median()) << " bit/s/Hz\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nf-thin: thinned arrays for near-field multi-user MIMO (" + version_string() + ")"};
  app.footer(tunables_help());
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_file;
  std::vector<std::string> overrides;
  std::string outdir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials, workers;
  int verbosity = 1;
  app.add_option("--config", config_file, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--set", overrides, "override a config key (section.key=value)");
  app.add_option("--out", outdir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "master seed (falls back to NF_THIN_SEED)");
  app.add_option("--trials", trials, "Monte Carlo trials");
  app.add_option("--workers", workers, "worker threads (default: core count)");
  app.add_flag_function("-v,--verbose", [&](std::int64_t n) { verbosity += static_cast<int>(n); }, "more output");
  app.add_flag_function("-q,--quiet", [&](std::int64_t) { verbosity = 0; }, "only errors");

  auto* fig1 = app.add_subcommand("fig1", "beam pattern of a focused sparse ULA (2D map, angle and range cuts)");
  auto* fig2 = app.add_subcommand("fig2", "FULA vs SULA with boresight users");
  auto* fig3 = app.add_subcommand("fig3", "sum-rate CDFs of every scheme");
  auto* fig4 = app.add_subcommand("fig4", "average sum-rate versus number of users");

  auto* pattern = app.add_subcommand("pattern", "angle or range cut of a focused uniform array as CSV");
  std::string axis = "angle";
  int p_n = 256;
  double p_dwl = 2, p_freq = 15e9, p_focus_deg = 0, p_focus_range = 0, p_rmin = 0.01;
  Eigen::Index p_points = 0;
  pattern->add_option("--axis", axis, "angle | range")->check(CLI::IsMember({"angle", "range"}))->capture_default_str();
  pattern->add_option("--elements", p_n, "elements")->capture_default_str();
  pattern->add_option("--d-over-lambda", p_dwl, "spacing in wavelengths")->capture_default_str();
  pattern->add_option("--carrier-hz", p_freq, "carrier frequency")->capture_default_str();
  pattern->add_option("--focus-deg", p_focus_deg, "focus angle")->capture_default_str();
  pattern->add_option("--focus-range", p_focus_range, "focus range in m (0: R_D/30)")->capture_default_str();
  pattern->add_option("--range-min", p_rmin, "range cut start (m)")->capture_default_str();
  pattern->add_option("--points", p_points, "grid points (default 8192 angle, 4096 range)");

  auto* grating = app.add_subcommand("grating", "visible grating-lobe angles of a uniform array");
  double g_dwl = 2, g_focus = 0;
  grating->add_option("--d-over-lambda", g_dwl, "spacing in wavelengths")->capture_default_str();
  grating->add_option("--focus-deg", g_focus, "steering angle")->capture_default_str();

  auto* thin_gta = app.add_subcommand("thin-gta", "grating-lobe-aware thinning mask (PSLL minimax)");
  auto* thin_sta = app.add_subcommand("thin-sta", "sum-rate thinning mask for one user drop");
  auto* mula = app.add_subcommand("mula", "movable element positions for one user drop");
  std::string scenario_file;
  for (auto* sc : {thin_sta, mula}) sc->add_option("--scenario", scenario_file, "user CSV (user_id,theta_rad,range_m)");

  auto* oracle = app.add_subcommand("oracle", "brute-force and closed-form self checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  RunConfig cfg;
  try {
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      json root;
      try {
        root = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError(config_file + ": " + e.what());
      }
      apply_json(cfg, root);
    }
    for (const auto& kv : overrides) apply_override(cfg, kv);
    if (seed) {
      cfg.exp.master_seed = *seed;
    } else if (const char* env = std::getenv("NF_THIN_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        cfg.exp.master_seed = std::stoull(env, &used);
        if (env[used] != '\0') throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw ConfigError(std::string("NF_THIN_SEED: not an unsigned integer: ") + env);
      }
    }
    if (trials) cfg.exp.n_trials = *trials;
    if (workers) cfg.exp.workers = *workers;
    if (cfg.range_min || cfg.range_max) {
      const Interval d = cfg.exp.setup.range_interval();
      cfg.exp.range_interval = Interval{cfg.range_min.value_or(d.lo), cfg.range_max.value_or(d.hi)};
    }
    cfg.fig1.focus_angle = deg2rad(cfg.fig1_focus_deg);
    cfg.exp.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  const std::filesystem::path out(outdir);
  const json config = effective_config(cfg);
  const bool loud = verbosity > 0;
  try {
    if (*fig1) {
      const auto r = run_fig1(cfg.fig1);
      write_fig1(r, out, config);
      if (loud) {
        std::cout << "rayleigh distance " << fixed3(r.rayleigh) << " m, focus " << fixed3(r.focus.range) << " m\n";
        std::cout << "grating lobes (deg):";
        for (double a : r.measured_lobes) std::cout << ' ' << fixed3(rad2deg(a));
        std::cout << "\nrange sidelobe max " << fixed3(r.range_sidelobe_max_db) << " dB at "
                  << fixed3(r.range_sidelobe_at) << " m\n";
        std::cout << "short-range ripple " << fixed3(r.short_range_ripple_db) << " dB at "
                  << r.short_range_ripple_at << " m\n";
      }
    } else if (*fig2) {
      const auto r = run_fig2(cfg.exp);
      write_sum_rate_figure("fig2", r, cfg.exp, out, config);
      if (loud) {
        print_summary(r);
        std::cout << "SULA/FULA " << fixed3(r.at(Scheme::sula).mean() / r.at(Scheme::fula).mean()) << '\n';
      }
    } else if (*fig3) {
      const auto r = run_fig3(cfg.exp);
      write_sum_rate_figure("fig3", r, cfg.exp, out, config);
      if (loud) print_summary(r);
    } else if (*fig4) {
      const auto r = run_fig4(cfg.exp, cfg.fig4_k);
      write_fig4(r, cfg.exp, out, config);
      if (loud)
        for (std::size_t i = 0; i < r.k_values.size(); ++i) {
          std::cout << "K = " << r.k_values[i] << '\n';
          print_summary(r.per_k[i]);
        }
    } else if (*pattern) {
      const double lambda = wavelength_from_frequency(p_freq);
      const auto geom = ArrayGeometry<double>::uniform(p_n, p_dwl * lambda, lambda);
      const double rd = rayleigh_distance(geom);
      const FocusPoint<double> focus{deg2rad(p_focus_deg), p_focus_range > 0 ? p_focus_range : rd / 30};
      const auto mask = ThinningVector::all_active(p_n);
      const auto cut = axis == "angle"
                           ? angle_pattern(geom, mask, focus.angle, sine_grid<double>(p_points > 0 ? p_points : 8192))
                           : range_pattern(geom, mask, focus, log_range_grid<double>(p_rmin, rd, p_points > 0 ? p_points : 4096));
      write_pattern_csv(std::cout, cut);
    } else if (*grating) {
      const auto g = grating_lobe_angles(g_dwl, 1.0, deg2rad(g_focus)).visible_angles();
      std::vector<double> deg;
      for (double a : g) deg.push_back(rad2deg(a));
      std::sort(deg.begin(), deg.end());
      for (std::size_t i = 0; i < deg.size(); ++i) std::cout << (i ? ", " : "") << fixed3(deg[i]);
      std::cout << '\n';
    } else if (*thin_gta) {
      SwarmConfig sw = cfg.exp.gta_swarm;
      sw.seed = cfg.exp.master_seed;
      const auto geom = cfg.exp.setup.full_geometry();
      const auto r = optimize_gta(geom, cfg.exp.setup.n_active, edge_elements(cfg.exp.setup.n_full),
                                  cfg.exp.gta_coverage, sw, cfg.exp.gta);
      const GtaObjective obj(geom, cfg.exp.gta_coverage, cfg.exp.gta);
      json j = to_json(r);
      j["psll_db"] = obj.psll_db(*r.best_mask);
      j["config"] = config;
      std::filesystem::create_directories(out);
      std::ofstream(out / "thin_gta.json") << j.dump(2) << '\n';
      if (loud) {
        std::cout << r.best_mask->to_bit_string() << '\n';
        std::cout << "worst PSLL " << fixed3(obj.worst_psll_db(*r.best_mask)) << " dB\n";
      }
    } else if (*thin_sta || *mula) {
      Scenario sc;
      if (!scenario_file.empty()) {
        std::ifstream in(scenario_file);
        if (!in) throw ConfigError("cannot read " + scenario_file);
        sc = read_scenario_csv(in);
      } else {
        sc = sample_scenario(cfg.exp.n_users, cfg.exp.ranges(), cfg.exp.angle_interval, cfg.exp.master_seed);
      }
      EvaluationContext ctx;
      ctx.setup = cfg.exp.setup;
      ctx.power = power_for(cfg.exp, static_cast<int>(sc.size()));
      ctx.normalization = cfg.exp.normalization;
      ctx.swarm = cfg.exp.swarm;
      ctx.validity = cfg.exp.validity;
      ctx.precoder = cfg.exp.precoder;
      const std::string name = *thin_sta ? "thin_sta" : "mula";
      SwarmResult r;
      RateReport<double> rep;
      if (*thin_sta) {
        const StaEvaluator ev(ctx);
        r = ev.optimize(sc, cfg.exp.master_seed);
        rep = ev.evaluate(sc, cfg.exp.master_seed);
      } else {
        const MulaEvaluator ev(ctx);
        r = ev.optimize(sc, cfg.exp.master_seed);
        rep = ev.evaluate(sc, cfg.exp.master_seed);
      }
      json j = to_json(r);
      j["sum_rate"] = rep.sum_rate;
      j["min_sinr_db"] = rep.min_sinr_db();
      j["config"] = config;
      std::filesystem::create_directories(out);
      std::ofstream(out / (name + ".json")) << j.dump(2) << '\n';
      {
        std::ofstream users(out / (name + "_users.csv"));
        write_scenario_csv(users, sc);
      }
      if (loud) {
        if (r.best_mask) std::cout << r.best_mask->to_bit_string() << '\n';
        std::cout << "sum-rate " << fixed3(rep.sum_rate) << " bit/s/Hz, min SINR " << fixed3(rep.min_sinr_db())
                  << " dB\n";
      }
    } else if (*oracle) {
      const auto checks = run_oracle_suite(cfg.exp.master_seed);
      bool ok = true;
      for (const auto& c : checks) {
        ok = ok && c.passed;
        if (loud || !c.passed) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
      }
      return ok ? 0 : 2;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
