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

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zpm/simulation.hpp"

namespace zpm {

/// Statistical description of the initial-state and model errors a
/// campaign draws from. Directions are always isotropic; magnitudes are
/// fixed by the spec fields.
struct ErrorSpec {
  double attitude_angle_deg = 5.0;  // principal rotation angle of the attitude error
  double omega_frac = 0.05;         // rate error magnitude as a fraction of n
  double hc_mag = 1000.0;           // CMG momentum error magnitude, N m s
  double inertia_lo = 1.0;          // uniform principal-moment scaling range
  double inertia_hi = 1.0;
  enum class InertiaMode { principal, global } inertia_mode = InertiaMode::principal;
  std::optional<Vec3> disturbance_vd;  // truth-only torque bump peak, N m

  void validate() const;
};

/// One concrete draw; the same draw is applied to every guidance mode of
/// a sample so the comparison is paired.
struct ErrorDraw {
  Vec3 attitude_axis = Vec3::UnitX();
  Vec3 omega_dir = Vec3::UnitX();
  Vec3 hc_dir = Vec3::UnitX();
  std::array<double, 3> inertia_scales{1.0, 1.0, 1.0};
  double global_scale = 1.0;
};

/// Deterministic draw for (master_seed, sample_index); the stream is
/// derived per sample, so execution order and parallelism cannot change
/// the result.
ErrorDraw sample_errors(const ErrorSpec& spec, std::uint64_t sample_index,
                        std::uint64_t master_seed);

/// Applies a draw to a base scenario: initial-state errors, truth
/// inertia scaling (mirrored into the controller model when the base had
/// them equal) and the optional disturbance torque.
Scenario scenario_for_sample(const Scenario& base, const ErrorSpec& spec,
                             const ErrorDraw& draw);

struct SampleResult {
  std::uint64_t index = 0;
  std::map<GuidanceMode, TerminalErrors> metrics;
  bool failed = false;
  std::string error;
};

struct Aggregate {
  TerminalErrors average;
  TerminalErrors maximum;
  std::size_t count = 0;
};

struct CampaignResult {
  std::vector<SampleResult> samples;  // ordered by sample index
  std::vector<GuidanceMode> modes;
  std::uint64_t master_seed = 0;
  ErrorSpec spec;
  std::map<GuidanceMode, Aggregate> aggregates;

  std::size_t failed_count() const;
};

/// Recomputes the per-mode aggregates from the sample rows.
std::map<GuidanceMode, Aggregate> aggregate(const CampaignResult& result);

/// Runs n_samples paired comparisons of the requested guidance modes.
/// Samples execute concurrently (threads = 0 picks the hardware count);
/// per-sample failures are recorded, and the campaign only throws when
/// more than 10% of the runs failed.
CampaignResult run_campaign(const Scenario& base, const NominalTrajectory& nominal,
                            const ErrorSpec& spec, int n_samples,
                            const std::vector<GuidanceMode>& modes,
                            std::uint64_t master_seed, int threads = 0);

}  // namespace zpm
