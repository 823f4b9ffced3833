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

#include <string>

#include "zpm/guidance.hpp"
#include "zpm/tracking.hpp"

namespace zpm {

enum class GuidanceMode { traditional, ltac, rtac };

std::string to_string(GuidanceMode mode);
GuidanceMode mode_from_string(const std::string& name);

/// Deviations applied to the nominal initial state at maneuver start.
struct InitialErrors {
  Vec3 attitude_axis = Vec3::UnitX();
  double attitude_angle = 0.0;  // rad; extra body-frame rotation
  Vec3 omega_error = Vec3::Zero();
  Vec3 hc_error = Vec3::Zero();
};

struct IntegratorSettings {
  double rel_tol = 1e-6;
  double abs_tol = 1e-9;
};

/// Everything one closed-loop run depends on. Three torque models play
/// different roles: `nominal_model` plans the reference trajectory,
/// `truth_model` drives the plant, and `controller_model` is what the
/// guidance and tracking laws believe (usually equal to the truth; set
/// apart to study mismatches).
struct Scenario {
  BoundaryConditions bounds;
  TorqueModel nominal_model;
  TorqueModel truth_model;
  TorqueModel controller_model;

  GuidanceMode mode = GuidanceMode::traditional;
  AdjustGains adjust;
  TrackerGains tracker;
  CmgLimits limits;
  InitialErrors initial_errors;
  IntegratorSettings integrator;

  double control_period = 1.0;  // s; 0 evaluates the control inside the integrator
  double log_step = 1.0;        // s
  double nominal_step = 1.0;    // s, reference trajectory grid
  double fd_step = 1e-6;        // sensitivity finite-difference step
  double rate_margin = 0.8;     // fraction of hdot_max allowed when planning

  void validate() const;
};

/// The four terminal error metrics of a run, measured against the
/// nominal trajectory endpoint.
struct TerminalErrors {
  double attitude_deg = 0.0;  // principal rotation angle, deg
  double omega_err = 0.0;     // rad/s
  double hc_err = 0.0;        // N m s
  double H_err = 0.0;         // N m s
};

/// Initial plant state: boundary state with the configured errors applied.
StationState initial_state(const Scenario& scenario);

/// Runs the closed loop over [t0, tf]: at each control epoch the
/// adjustment law shifts the reference (unless traditional), the tracker
/// turns the tracking error into a commanded torque, the CMG limits clip
/// it, and the plant integrates under the held command with an adaptive
/// embedded Runge-Kutta 4(5) pair. Deterministic for a fixed scenario.
///
/// `series` may supply a precomputed sensitivity series (it must match
/// the nominal grid and the controller model); otherwise one is built on
/// demand for the adjusting modes.
SimLog run(const Scenario& scenario, const NominalTrajectory& nominal,
           const SensitivitySeries* series = nullptr);

/// Terminal metrics of a completed run against the nominal endpoint.
TerminalErrors terminal_metrics(const SimLog& log, const BoundaryConditions& bounds,
                                const NominalTrajectory& nominal);

/// Whole-run momentum conservation residual (delegates to the dynamics
/// bookkeeping; emitted into every run summary as a health check).
double conservation_residual(const SimLog& log, const TorqueModel& truth_model);

}  // namespace zpm
