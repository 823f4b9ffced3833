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

#include "zpm/dynamics.hpp"

namespace zpm {

/// Tracking loop gains derived from a control bandwidth and damping
/// ratio: each attitude component is an exactly linearized double
/// integrator closed with k_p = -omega_n^2, k_d = -2 omega_n zeta.
struct TrackerGains {
  double omega_n = 0.01;  // rad/s
  double zeta = 0.707;

  double kp() const { return -omega_n * omega_n; }
  double kd() const { return -2.0 * omega_n * zeta; }
  void validate() const;
};

/// CMG actuator capability.
struct CmgLimits {
  double h_max = 19524.0;    // N m s
  double hdot_max = 271.16;  // N m

  void validate() const;
};

/// Per-axis PD feedback on the tracking error, delta_v_i = k_p ds_i + k_d dds_i.
Vec3 feedback(const Vec3& sigma_err, const Vec3& sigma_dot_err, const TrackerGains& gains);

/// Feedforward plus feedback in the transformed (linearized) coordinates.
Vec3 transformed_control(const Vec3& sigma_ddot_ref, const Vec3& delta_v);

/// Inverts the exact linearization: the CMG torque that realizes the
/// commanded attitude acceleration v given the current state. Evaluated
/// with the controller's model of the environment and inertia, which may
/// differ from the truth the plant integrates.
Vec3 command_torque(const StationState& state, const Vec3& v,
                    const TorqueModel& controller_model,
                    const SpacecraftParams& controller_params);

struct LimitedCommand {
  Vec3 u = Vec3::Zero();
  bool rate_clamped = false;
  bool envelope_clamped = false;
};

/// Applies the CMG capability to a commanded torque: first the momentum
/// rate is scaled down to hdot_max, then, sitting on the momentum
/// envelope, any outward radial momentum rate is removed so only control
/// toward the inside of the envelope remains.
LimitedCommand limit_command(const Vec3& u_cmd, const StationState& state,
                             const CmgLimits& limits);

}  // namespace zpm
