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

#include "nfthin/experiment.hpp"

#include "nfthin/csv.hpp"
#include "nfthin/svg.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace nfthin {

std::string version_string() { return "nf-thin 0.1.0"; }

void ExperimentSpec::validate() const {
  setup.validate();
  if (n_trials < 1) throw std::invalid_argument("experiment.n_trials must be >= 1");
  if (n_users < 1) throw std::invalid_argument("experiment.n_users must be >= 1");
  if (schemes.empty()) throw std::invalid_argument("experiment.schemes is empty");
  if (workers < 1) throw std::invalid_argument("experiment.workers must be >= 1");
  if (pta_ensemble < 1) throw std::invalid_argument("experiment.pta_ensemble must be >= 1");
  if (gta_coverage.empty()) throw std::invalid_argument("gta.coverage_deg is empty");
  if (!(noise_variance > 0)) throw std::invalid_argument("power.noise_variance must be positive");
  const Interval r = ranges();
  if (!(r.lo > 0) || r.hi < r.lo) throw std::invalid_argument("experiment: invalid range interval");
  if (angle_interval.hi < angle_interval.lo) throw std::invalid_argument("experiment: invalid angle interval");
  swarm.validate();
  gta_swarm.validate();
  pta_swarm.validate();
}

PowerConfig<double> power_for(const ExperimentSpec& spec, int n_users) {
  const Interval r = spec.ranges();
  const double reference_gain = static_cast<double>(spec.setup.n_full) * static_cast<double>(n_users);
  return PowerConfig<double>::calibrated(spec.snr_db, spec.setup.wavelength(), 0.5 * (r.lo + r.hi),
                                         spec.noise_variance, reference_gain);
}

double EmpiricalCdf::operator()(double v) const {
  if (x.empty()) return 0;
  const auto it = std::upper_bound(x.begin(), x.end(), v);
  return static_cast<double>(it - x.begin()) / static_cast<double>(x.size());
}

double EmpiricalCdf::quantile(double q) const {
  if (x.empty()) throw std::invalid_argument("EmpiricalCdf: no samples");
  const double n = static_cast<double>(x.size());
  const auto idx = static_cast<std::size_t>(std::clamp(std::ceil(q * n) - 1.0, 0.0, n - 1.0));
  return x[idx];
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) {
  EmpiricalCdf c;
  std::sort(samples.begin(), samples.end());
  c.x = std::move(samples);
  c.p.resize(c.x.size());
  for (std::size_t i = 0; i < c.x.size(); ++i) c.p[i] = static_cast<double>(i + 1) / static_cast<double>(c.x.size());
  return c;
}

double SchemeSamples::mean() const {
  if (sum_rate.empty()) return 0;
  return std::accumulate(sum_rate.begin(), sum_rate.end(), 0.0) / static_cast<double>(sum_rate.size());
}

double SchemeSamples::standard_error() const {
  const std::size_t n = sum_rate.size();
  if (n < 2) return 0;
  const double m = mean();
  double ss = 0;
  for (double v : sum_rate) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

double SchemeSamples::median() const {
  std::vector<double> v = sum_rate;
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

const SchemeSamples& AggregateResult::at(Scheme s) const {
  for (const auto& x : schemes)
    if (x.scheme == s) return x;
  throw std::out_of_range("AggregateResult: scheme " + to_string(s) + " not evaluated");
}

bool AggregateResult::has(Scheme s) const {
  return std::any_of(schemes.begin(), schemes.end(), [s](const auto& x) { return x.scheme == s; });
}

namespace {

template <typename Fn>
void parallel_for(int n, int workers, Fn&& fn) {
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  const int w = std::max(1, std::min(workers, n));
  if (w == 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < w; ++i) pool.emplace_back(body);
  }
  if (error) std::rethrow_exception(error);
}

std::uint64_t scheme_seed(std::uint64_t scenario_seed, Scheme s) {
  return derive_seed(scenario_seed, static_cast<std::uint64_t>(s) + 1);
}

}  // namespace

AggregateResult run_monte_carlo(const ExperimentSpec& spec, int n_users) {
  spec.validate();
  EvaluationContext ctx;
  ctx.setup = spec.setup;
  ctx.power = power_for(spec, n_users);
  ctx.normalization = spec.normalization;
  ctx.swarm = spec.swarm;
  ctx.validity = spec.validity;
  ctx.precoder = spec.precoder;

  SchemeBuildOptions build;
  build.gta_coverage = spec.gta_coverage;
  build.gta = spec.gta;
  build.gta_swarm = spec.gta_swarm;
  build.gta_swarm.seed = derive_seed(spec.master_seed, 0x67746100ULL);
  build.pta_swarm = spec.pta_swarm;
  build.pta_swarm.seed = derive_seed(spec.master_seed, 0x70746100ULL + static_cast<std::uint64_t>(n_users));
  build.pta_ensemble = spec.pta_ensemble;
  build.pta_seed = derive_seed(spec.master_seed, 0x656e7300ULL + static_cast<std::uint64_t>(n_users));
  build.n_users = n_users;
  build.angle_interval = spec.angle_interval;

  AggregateResult out;
  out.n_users = n_users;
  std::vector<std::unique_ptr<SchemeEvaluator>> evaluators;
  for (Scheme s : spec.schemes) {
    evaluators.push_back(make_scheme(s, ctx, build));
    if (const auto* m = evaluators.back()->fixed_mask(); m && (s == Scheme::gta || s == Scheme::pta))
      out.mask_bits[s] = m->to_bit_string();
  }

  const Interval ranges = spec.ranges();
  out.scenarios.resize(static_cast<std::size_t>(spec.n_trials));
  for (int t = 0; t < spec.n_trials; ++t)
    out.scenarios[static_cast<std::size_t>(t)] =
        sample_scenario(n_users, ranges, spec.angle_interval, derive_seed(spec.master_seed, static_cast<std::uint64_t>(t)));

  const std::size_t n_schemes = evaluators.size();
  std::vector<RateReport<double>> reports(n_schemes * static_cast<std::size_t>(spec.n_trials));
  parallel_for(spec.n_trials, spec.workers, [&](int t) {
    const Scenario& sc = out.scenarios[static_cast<std::size_t>(t)];
    for (std::size_t i = 0; i < n_schemes; ++i)
      reports[static_cast<std::size_t>(t) * n_schemes + i] =
          evaluators[i]->evaluate(sc, scheme_seed(sc.seed, evaluators[i]->scheme()));
  });

  for (std::size_t i = 0; i < n_schemes; ++i) {
    SchemeSamples ss{evaluators[i]->scheme(), {}, {}};
    for (int t = 0; t < spec.n_trials; ++t) {
      const auto& r = reports[static_cast<std::size_t>(t) * n_schemes + i];
      ss.sum_rate.push_back(r.sum_rate);
      ss.min_sinr_db.push_back(r.min_sinr_db());
    }
    out.schemes.push_back(std::move(ss));
  }
  return out;
}

AggregateResult run_fig2(ExperimentSpec spec) {
  spec.angle_interval = {0.0, 0.0};
  spec.normalization = GainNormalization::per_scheme;
  spec.schemes = {Scheme::fula, Scheme::sula};
  return run_monte_carlo(spec, spec.n_users);
}

AggregateResult run_fig3(ExperimentSpec spec) { return run_monte_carlo(spec, spec.n_users); }

Fig4Result run_fig4(ExperimentSpec spec, const std::vector<int>& k_values) {
  if (k_values.empty()) throw std::invalid_argument("run_fig4: no K values");
  Fig4Result r;
  r.k_values = k_values;
  for (int k : k_values) r.per_k.push_back(run_monte_carlo(spec, k));
  return r;
}

std::vector<Eigen::Index> grating_peaks(const BeamPattern<double>& cut, double exclusion_halfwidth, double fraction) {
  const double u0 = std::sin(cut.focus.angle);
  const double peak = cut.values.maxCoeff();
  std::vector<Eigen::Index> out;
  const Eigen::Index n = cut.values.size();
  // Interior samples only: a lobe sitting on endfire is not a visible-region maximum.
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double v = cut.values[i];
    if (v < fraction * peak || std::abs(cut.axis[i] - u0) < exclusion_halfwidth) continue;
    const bool left = v >= cut.values[i - 1];
    const bool right = v > cut.values[i + 1];
    if (left && right) out.push_back(i);
  }
  return out;
}

RangeSidelobe range_sidelobe(const BeamPattern<double>& cut, double threshold) {
  const Eigen::Index n = cut.values.size();
  Eigen::Index focus = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (std::abs(std::log(cut.axis[i] / cut.focus.range)) < std::abs(std::log(cut.axis[focus] / cut.focus.range)))
      focus = i;
  // Mainlobe: connected run around the focus sample above the threshold.
  Eigen::Index lo = focus, hi = focus;
  while (lo > 0 && cut.values[lo - 1] >= threshold) --lo;
  while (hi < n - 1 && cut.values[hi + 1] >= threshold) ++hi;
  RangeSidelobe best;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i >= lo && i <= hi) continue;
    const double v = cut.values[i];
    const bool left = i == 0 || v >= cut.values[i - 1];
    const bool right = i == n - 1 || v >= cut.values[i + 1];
    if (left && right && (!best.found || v > best.gain)) best = {v, cut.axis[i], true};
  }
  return best;
}

Fig1Result run_fig1(const Fig1Spec& spec) {
  const double lambda = wavelength_from_frequency(spec.carrier_hz);
  auto geom = ArrayGeometry<double>::uniform(spec.n_elements, spec.spacing_wl * lambda, lambda);
  const double rd = rayleigh_distance(geom);
  const FocusPoint<double> focus{spec.focus_angle, spec.focus_range > 0 ? spec.focus_range : rd / 30.0};
  const auto mask = ThinningVector::all_active(spec.n_elements);

  Fig1Result r{spec, geom, focus, rd, {}, {}, {}, {}, {}, {}, {}, {}};
  r.angle_cut = angle_pattern(geom, mask, focus.angle, sine_grid<double>(spec.angle_points));
  r.range_cut = range_pattern(geom, mask, focus, log_range_grid<double>(spec.range_min, rd, spec.range_points));

  r.map_angles = RVector<double>::LinSpaced(spec.map_angles, deg2rad(-89.5), deg2rad(89.5));
  r.map_ranges = log_range_grid<double>(std::max(spec.range_min, 1.0), rd, spec.map_ranges);
  r.map = pattern_2d(geom, mask, focus, r.map_angles, r.map_ranges);

  r.predicted_lobes = grating_lobe_angles(spec.spacing_wl * lambda, lambda, focus.angle).visible_angles();
  const double half = kDefaultMainlobeKappa * lambda / geom.aperture();
  const double main = r.angle_cut.values.maxCoeff();
  for (Eigen::Index i : grating_peaks(r.angle_cut, half)) {
    r.measured_lobes.push_back(std::asin(std::clamp(r.angle_cut.axis[i], -1.0, 1.0)));
    r.measured_lobe_gain_db.push_back(10 * std::log10(r.angle_cut.values[i] / main));
  }

  const RangeSidelobe side = range_sidelobe(r.range_cut);
  if (side.found) {
    r.range_sidelobe_max_db = to_db(side.gain);
    r.range_sidelobe_at = side.range;
  }
  for (Eigen::Index i = 0; i < r.range_cut.size(); ++i) {
    if (r.range_cut.axis[i] > spec.short_range_max) break;
    const double db = to_db(r.range_cut.values[i]);
    if (db > r.short_range_ripple_db) {
      r.short_range_ripple_db = db;
      r.short_range_ripple_at = r.range_cut.axis[i];
    }
  }
  return r;
}

// ---------------------------------------------------------------------------------------------
// Artifact writers

void write_pattern_csv(std::ostream& os, const BeamPattern<double>& p) {
  os << "axis_value,gain_linear,gain_db\n";
  for (Eigen::Index i = 0; i < p.size(); ++i)
    os << csv::format_double(p.axis[i]) << ',' << csv::format_double(p.values[i]) << ','
       << csv::format_double(to_db(p.values[i])) << '\n';
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  auto os = open_out(p);
  os << text;
}

void write_meta(const std::filesystem::path& p, const std::string& fig, const nlohmann::json& config,
                const nlohmann::json& summary) {
  nlohmann::json meta;
  meta["figure"] = fig;
  meta["version"] = version_string();
  meta["config"] = config;
  meta["summary"] = summary;
  write_text(p, meta.dump(2) + "\n");
}

nlohmann::json scheme_summary(const AggregateResult& r) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& s : r.schemes) {
    j[to_string(s.scheme)] = {{"mean", s.mean()}, {"stderr", s.standard_error()}, {"median", s.median()},
                              {"n", s.sum_rate.size()}};
  }
  for (const auto& [s, bits] : r.mask_bits) j[to_string(s)]["mask"] = bits;
  return j;
}

}  // namespace

void write_fig1(const Fig1Result& r, const std::filesystem::path& outdir, const nlohmann::json& config) {
  {
    auto os = open_out(outdir / "fig1_data.csv");
    os << "range_m,theta_rad,gain_linear,gain_db\n";
    for (Eigen::Index i = 0; i < r.map.rows(); ++i)
      for (Eigen::Index j = 0; j < r.map.cols(); ++j)
        os << csv::format_double(r.map_ranges[i]) << ',' << csv::format_double(r.map_angles[j]) << ','
           << csv::format_double(r.map(i, j)) << ',' << csv::format_double(to_db(r.map(i, j))) << '\n';
  }
  {
    auto os = open_out(outdir / "fig1_angle.csv");
    write_pattern_csv(os, r.angle_cut);
  }
  {
    auto os = open_out(outdir / "fig1_range.csv");
    write_pattern_csv(os, r.range_cut);
  }

  std::vector<std::vector<double>> cells(static_cast<std::size_t>(r.map.rows()));
  for (Eigen::Index i = 0; i < r.map.rows(); ++i)
    for (Eigen::Index j = 0; j < r.map.cols(); ++j) cells[static_cast<std::size_t>(i)].push_back(to_db(r.map(i, j), -40.0));
  std::vector<double> xs, ys;
  for (Eigen::Index j = 0; j < r.map_angles.size(); ++j) xs.push_back(rad2deg(r.map_angles[j]));
  for (Eigen::Index i = 0; i < r.map_ranges.size(); ++i) ys.push_back(r.map_ranges[i]);
  write_text(outdir / "fig1.svg",
             svg::heatmap(cells, xs, ys, -40, 0, {"Beam pattern (dB), angle x range", "angle (deg)", "range (m, log rows)"}));

  svg::Series angle{"angle cut", {}, {}};
  for (Eigen::Index i = 0; i < r.angle_cut.size(); ++i) {
    angle.x.push_back(rad2deg(std::asin(std::clamp(r.angle_cut.axis[i], -1.0, 1.0))));
    angle.y.push_back(to_db(r.angle_cut.values[i], -60.0));
  }
  write_text(outdir / "fig1_angle.svg", svg::line_plot({angle}, {"Angle cut", "angle (deg)", "gain (dB)"}));
  svg::Series range{"range cut", {}, {}};
  for (Eigen::Index i = 0; i < r.range_cut.size(); ++i) {
    range.x.push_back(r.range_cut.axis[i]);
    range.y.push_back(to_db(r.range_cut.values[i], -60.0));
  }
  svg::PlotOptions ro{"Range cut", "range (m)", "gain (dB)"};
  ro.log_x = true;
  write_text(outdir / "fig1_range.svg", svg::line_plot({range}, ro));

  nlohmann::json summary;
  summary["rayleigh_distance_m"] = r.rayleigh;
  summary["focus"] = {{"angle_rad", r.focus.angle}, {"range_m", r.focus.range}};
  summary["predicted_grating_deg"] = nlohmann::json::array();
  for (double a : r.predicted_lobes) summary["predicted_grating_deg"].push_back(rad2deg(a));
  summary["measured_grating_deg"] = nlohmann::json::array();
  for (double a : r.measured_lobes) summary["measured_grating_deg"].push_back(rad2deg(a));
  summary["measured_grating_gain_db"] = r.measured_lobe_gain_db;
  summary["range_sidelobe_max_db"] = r.range_sidelobe_max_db;
  summary["range_sidelobe_at_m"] = r.range_sidelobe_at;
  summary["short_range_ripple_db"] = r.short_range_ripple_db;
  summary["short_range_ripple_at_m"] = r.short_range_ripple_at;
  write_meta(outdir / "fig1_meta.json", "fig1", config, summary);
}

void write_sum_rate_figure(const std::string& fig, const AggregateResult& r, const ExperimentSpec& spec,
                           const std::filesystem::path& outdir, const nlohmann::json& config) {
  {
    auto os = open_out(outdir / (fig + "_data.csv"));
    os << "scheme,trial,K,sum_rate,min_sinr_db\n";
    for (const auto& s : r.schemes)
      for (std::size_t t = 0; t < s.sum_rate.size(); ++t)
        os << to_string(s.scheme) << ',' << t << ',' << r.n_users << ',' << csv::format_double(s.sum_rate[t]) << ','
           << csv::format_double(s.min_sinr_db[t]) << '\n';
  }

  std::vector<svg::Series> series;
  if (fig == "fig2") {
    // Sum-rate against the mean user range of each trial, in equal-width bins.
    const Interval ranges = spec.ranges();
    constexpr int kBins = 8;
    auto os = open_out(outdir / "fig2_bins.csv");
    os << "scheme,bin_lo_m,bin_hi_m,count,mean_sum_rate\n";
    for (const auto& s : r.schemes) {
      svg::Series line{to_string(s.scheme), {}, {}};
      for (int b = 0; b < kBins; ++b) {
        const double lo = ranges.lo + (ranges.hi - ranges.lo) * b / kBins;
        const double hi = ranges.lo + (ranges.hi - ranges.lo) * (b + 1) / kBins;
        double total = 0;
        int count = 0;
        for (std::size_t t = 0; t < r.scenarios.size(); ++t) {
          double mean_r = 0;
          for (const auto& u : r.scenarios[t].users) mean_r += u.range;
          mean_r /= static_cast<double>(r.scenarios[t].users.size());
          if (mean_r >= lo && (mean_r < hi || (b == kBins - 1 && mean_r <= hi))) {
            total += s.sum_rate[t];
            ++count;
          }
        }
        const double mean = count ? total / count : std::nan("");
        os << to_string(s.scheme) << ',' << csv::format_double(lo) << ',' << csv::format_double(hi) << ',' << count
           << ',' << csv::format_double(mean) << '\n';
        if (count) {
          line.x.push_back(0.5 * (lo + hi));
          line.y.push_back(mean);
        }
      }
      series.push_back(std::move(line));
    }
    write_text(outdir / "fig2.svg",
               svg::line_plot(series, {"Sum-rate, users on boresight", "mean user range (m)", "sum-rate (bit/s/Hz)"}));
  } else {
    for (const auto& s : r.schemes) {
      const auto cdf = empirical_cdf(s.sum_rate);
      svg::Series line{to_string(s.scheme), {cdf.x.front()}, {0.0}, true};
      line.x.insert(line.x.end(), cdf.x.begin(), cdf.x.end());
      line.y.insert(line.y.end(), cdf.p.begin(), cdf.p.end());
      series.push_back(std::move(line));
    }
    write_text(outdir / (fig + ".svg"),
               svg::line_plot(series, {"Sum-rate CDF", "sum-rate (bit/s/Hz)", "CDF"}));
  }
  write_meta(outdir / (fig + "_meta.json"), fig, config, scheme_summary(r));
}

void write_fig4(const Fig4Result& r, const ExperimentSpec& spec, const std::filesystem::path& outdir,
                const nlohmann::json& config) {
  auto os = open_out(outdir / "fig4_data.csv");
  os << "scheme,K,mean_sum_rate,stderr,n_trials\n";
  std::vector<svg::Series> series;
  for (Scheme s : spec.schemes) {
    svg::Series line{to_string(s), {}, {}};
    for (std::size_t i = 0; i < r.k_values.size(); ++i) {
      const auto& ss = r.per_k[i].at(s);
      os << to_string(s) << ',' << r.k_values[i] << ',' << csv::format_double(ss.mean()) << ','
         << csv::format_double(ss.standard_error()) << ',' << ss.sum_rate.size() << '\n';
      line.x.push_back(r.k_values[i]);
      line.y.push_back(ss.mean());
    }
    series.push_back(std::move(line));
  }
  write_text(outdir / "fig4.svg",
             svg::line_plot(series, {"Average sum-rate vs users", "number of users K", "sum-rate (bit/s/Hz)"}));
  nlohmann::json summary = nlohmann::json::object();
  for (std::size_t i = 0; i < r.k_values.size(); ++i) summary[std::to_string(r.k_values[i])] = scheme_summary(r.per_k[i]);
  write_meta(outdir / "fig4_meta.json", "fig4", config, summary);
}

nlohmann::json to_json(const ExperimentSpec& spec) {
  auto swarm = [](const SwarmConfig& c) {
    return nlohmann::json{{"n_particles", c.n_particles},     {"n_iterations", c.n_iterations},
                          {"inertia_start", c.inertia_start}, {"inertia_end", c.inertia_end},
                          {"cognitive", c.cognitive},         {"social", c.social},
                          {"velocity_clamp", c.velocity_clamp}};
  };
  nlohmann::json j;
  j["system"] = {{"carrier_hz", spec.setup.carrier_hz},
                 {"n_full", spec.setup.n_full},
                 {"full_spacing_wl", spec.setup.full_spacing_wl},
                 {"n_active", spec.setup.n_active},
                 {"sula_spacing_wl", spec.setup.sula_spacing_wl},
                 {"hula_spacing_wl", spec.setup.hula_spacing_wl},
                 {"mula_half_width_wl", spec.setup.mula_half_width_wl},
                 {"mula_min_spacing_wl", spec.setup.mula_min_spacing_wl}};
  const Interval r = spec.ranges();
  std::vector<std::string> schemes;
  for (Scheme s : spec.schemes) schemes.push_back(to_string(s));
  j["experiment"] = {{"n_trials", spec.n_trials},
                     {"n_users", spec.n_users},
                     {"schemes", schemes},
                     {"angle_min_deg", rad2deg(spec.angle_interval.lo)},
                     {"angle_max_deg", rad2deg(spec.angle_interval.hi)},
                     {"range_min_m", r.lo},
                     {"range_max_m", r.hi},
                     {"master_seed", spec.master_seed},
                     {"normalization", spec.normalization == GainNormalization::full_array ? "full_array" : "per_scheme"},
                     {"pta_ensemble", spec.pta_ensemble}};
  j["power"] = {{"snr_db", spec.snr_db},
                {"noise_variance", spec.noise_variance},
                {"precoder_normalization", spec.precoder == PowerNormalization::sum_power ? "sum_power" : "equal_per_user"}};
  j["channel"] = {{"validity", spec.validity == ValidityMode::strict ? "strict" : "lenient"}};
  j["pso"] = swarm(spec.swarm);
  j["gta_pso"] = swarm(spec.gta_swarm);
  j["pta_pso"] = swarm(spec.pta_swarm);
  std::vector<double> cov;
  for (double a : spec.gta_coverage) cov.push_back(rad2deg(a));
  j["gta"] = {{"tau_psll_db", spec.gta.tau_psll_db},
              {"penalty_weight", spec.gta.penalty_weight},
              {"grid_points", spec.gta.grid_points},
              {"kappa", spec.gta.kappa},
              {"coverage_deg", cov}};
  return j;
}

}  // namespace nfthin
