/*
 Copyright 2026 The zpmsim Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "zpm/experiments.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>

namespace zpm {

namespace {

// Per-sample stream derivation (splitmix64 over seed and index), so the
// draw for sample k never depends on how many samples ran before it.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) {
  // 53 random bits; the standard fully specifies the engine output, so
  // draws are reproducible across platforms (unlike std distributions).
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double normal(std::mt19937_64& rng) {
  // Marsaglia polar method with explicit uniforms.
  while (true) {
    const double a = 2.0 * uniform01(rng) - 1.0;
    const double b = 2.0 * uniform01(rng) - 1.0;
    const double r2 = a * a + b * b;
    if (r2 > 0.0 && r2 < 1.0) {
      return a * std::sqrt(-2.0 * std::log(r2) / r2);
    }
  }
}

Vec3 isotropic_direction(std::mt19937_64& rng) {
  while (true) {
    const Vec3 v(normal(rng), normal(rng), normal(rng));
    const double norm = v.norm();
    if (norm > 1e-12) {
      return v / norm;
    }
  }
}

Mat3 scale_principal_moments(const Mat3& inertia, const std::array<double, 3>& scales) {
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  const Mat3 axes = eig.eigenvectors();
  Vec3 moments = eig.eigenvalues();
  for (int i = 0; i < 3; ++i) moments[i] *= scales[static_cast<std::size_t>(i)];
  return axes * moments.asDiagonal() * axes.transpose();
}

}  // namespace

void ErrorSpec::validate() const {
  if (attitude_angle_deg < 0.0 || omega_frac < 0.0 || hc_mag < 0.0) {
    throw ValidationError("ErrorSpec: magnitudes must be nonnegative");
  }
  if (!(inertia_lo <= inertia_hi) || !(inertia_lo > 0.0)) {
    throw ValidationError("ErrorSpec: need 0 < inertia_lo <= inertia_hi");
  }
}

ErrorDraw sample_errors(const ErrorSpec& spec, std::uint64_t sample_index,
                        std::uint64_t master_seed) {
  spec.validate();
  std::mt19937_64 rng(mix64(master_seed ^ mix64(sample_index + 1)));

  // Fixed draw order keeps samples paired across modes and independent
  // of which error channels are actually enabled.
  ErrorDraw draw;
  draw.attitude_axis = isotropic_direction(rng);
  draw.omega_dir = isotropic_direction(rng);
  draw.hc_dir = isotropic_direction(rng);
  for (auto& s : draw.inertia_scales) {
    s = spec.inertia_lo + (spec.inertia_hi - spec.inertia_lo) * uniform01(rng);
  }
  draw.global_scale =
      spec.inertia_lo + (spec.inertia_hi - spec.inertia_lo) * uniform01(rng);
  return draw;
}

Scenario scenario_for_sample(const Scenario& base, const ErrorSpec& spec,
                             const ErrorDraw& draw) {
  Scenario s = base;
  s.initial_errors.attitude_axis = draw.attitude_axis;
  s.initial_errors.attitude_angle = spec.attitude_angle_deg * M_PI / 180.0;
  s.initial_errors.omega_error =
      draw.omega_dir * (spec.omega_frac * base.truth_model.params.orbit_rate);
  s.initial_errors.hc_error = draw.hc_dir * spec.hc_mag;

  if (spec.inertia_lo != 1.0 || spec.inertia_hi != 1.0) {
    const bool controller_follows_truth =
        base.controller_model.params.inertia == base.truth_model.params.inertia;
    Mat3 scaled;
    if (spec.inertia_mode == ErrorSpec::InertiaMode::global) {
      scaled = draw.global_scale * base.truth_model.params.inertia;
    } else {
      scaled = scale_principal_moments(base.truth_model.params.inertia,
                                       draw.inertia_scales);
    }
    s.truth_model.params.inertia = scaled;
    if (controller_follows_truth) {
      s.controller_model.params.inertia = scaled;
    }
  }

  if (spec.disturbance_vd.has_value()) {
    s.truth_model.disturbance = true;
    s.truth_model.dist.v_d = *spec.disturbance_vd;
    s.truth_model.dist.t0 = base.bounds.t0;
    s.truth_model.dist.tf = base.bounds.tf;
  }
  return s;
}

std::size_t CampaignResult::failed_count() const {
  std::size_t n = 0;
  for (const auto& s : samples) n += s.failed ? 1 : 0;
  return n;
}

std::map<GuidanceMode, Aggregate> aggregate(const CampaignResult& result) {
  std::map<GuidanceMode, Aggregate> out;
  for (const GuidanceMode mode : result.modes) {
    Aggregate agg;
    for (const auto& sample : result.samples) {
      if (sample.failed) continue;
      const auto it = sample.metrics.find(mode);
      if (it == sample.metrics.end()) continue;
      const TerminalErrors& e = it->second;
      agg.average.attitude_deg += e.attitude_deg;
      agg.average.omega_err += e.omega_err;
      agg.average.hc_err += e.hc_err;
      agg.average.H_err += e.H_err;
      agg.maximum.attitude_deg = std::max(agg.maximum.attitude_deg, e.attitude_deg);
      agg.maximum.omega_err = std::max(agg.maximum.omega_err, e.omega_err);
      agg.maximum.hc_err = std::max(agg.maximum.hc_err, e.hc_err);
      agg.maximum.H_err = std::max(agg.maximum.H_err, e.H_err);
      ++agg.count;
    }
    if (agg.count > 0) {
      const double inv = 1.0 / static_cast<double>(agg.count);
      agg.average.attitude_deg *= inv;
      agg.average.omega_err *= inv;
      agg.average.hc_err *= inv;
      agg.average.H_err *= inv;
    }
    out[mode] = agg;
  }
  return out;
}

CampaignResult run_campaign(const Scenario& base, const NominalTrajectory& nominal,
                            const ErrorSpec& spec, int n_samples,
                            const std::vector<GuidanceMode>& modes,
                            std::uint64_t master_seed, int threads) {
  if (n_samples < 1) {
    throw ValidationError("run_campaign: n_samples must be at least 1");
  }
  spec.validate();

  CampaignResult result;
  result.modes = modes;
  result.master_seed = master_seed;
  result.spec = spec;
  result.samples.resize(static_cast<std::size_t>(n_samples));

  const bool needs_series =
      std::any_of(modes.begin(), modes.end(),
                  [](GuidanceMode m) { return m != GuidanceMode::traditional; });

  const auto run_sample = [&](std::uint64_t index) {
    SampleResult sample;
    sample.index = index;
    try {
      const ErrorDraw draw = sample_errors(spec, index, master_seed);
      Scenario scenario = scenario_for_sample(base, spec, draw);

      SensitivitySeries series;
      if (needs_series) {
        series = sensitivity_series(nominal, scenario.controller_model,
                                    scenario.fd_step);
      }
      for (const GuidanceMode mode : modes) {
        scenario.mode = mode;
        const SimLog log = run(scenario, nominal, needs_series ? &series : nullptr);
        sample.metrics[mode] = terminal_metrics(log, scenario.bounds, nominal);
      }
    } catch (const std::exception& e) {
      sample.failed = true;
      sample.error = e.what();
      sample.metrics.clear();
    }
    result.samples[index] = std::move(sample);
  };

  unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                   : std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n_samples));

  if (n_threads <= 1) {
    for (int i = 0; i < n_samples; ++i) run_sample(static_cast<std::uint64_t>(i));
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) {
      pool.emplace_back([&] {
        while (true) {
          const std::uint64_t index = next.fetch_add(1);
          if (index >= static_cast<std::uint64_t>(n_samples)) break;
          run_sample(index);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  result.aggregates = aggregate(result);
  const auto failed = result.failed_count();
  if (10 * failed > static_cast<std::size_t>(n_samples)) {
    std::string first;
    for (const auto& s : result.samples) {
      if (s.failed) {
        first = s.error;
        break;
      }
    }
    throw std::runtime_error("run_campaign: " + std::to_string(failed) + " of " +
                             std::to_string(n_samples) + " samples failed; first error: " +
                             first);
  }
  return result;
}

}  // namespace zpm
