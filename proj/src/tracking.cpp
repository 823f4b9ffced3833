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

#include "zpm/tracking.hpp"

#include <cmath>

namespace zpm {

void TrackerGains::validate() const {
  if (!(omega_n > 0.0) || !(zeta > 0.0)) {
    throw ValidationError("TrackerGains: omega_n and zeta must be positive");
  }
}

void CmgLimits::validate() const {
  if (!(h_max > 0.0) || !(hdot_max > 0.0)) {
    throw ValidationError("CmgLimits: h_max and hdot_max must be positive");
  }
}

Vec3 feedback(const Vec3& sigma_err, const Vec3& sigma_dot_err,
              const TrackerGains& gains) {
  return gains.kp() * sigma_err + gains.kd() * sigma_dot_err;
}

Vec3 transformed_control(const Vec3& sigma_ddot_ref, const Vec3& delta_v) {
  return sigma_ddot_ref + delta_v;
}

Vec3 command_torque(const StationState& state, const Vec3& v,
                    const TorqueModel& controller_model,
                    const SpacecraftParams& controller_params) {
  const Mrp& sigma = state.sigma;
  const double n = controller_params.orbit_rate;
  const Mat3& inertia = controller_params.inertia;

  const Mat3 t_mat = kinematic_matrix(sigma);
  const Mat3 t_inv = kinematic_matrix_inverse(sigma);
  const Vec3 omega_o = orbit_rate_body(sigma, n);
  const Vec3 omega_rel = state.omega - omega_o;
  const Vec3 sigma_dot = t_mat * omega_rel;

  const Mat3 t_dot = kinematic_matrix_dot(sigma, sigma_dot);
  // Transport theorem for the body-relative-to-orbit rotation.
  const Mat3 r_dot = -skew(omega_rel) * rotation_o_to_b(sigma);
  const Vec3 omega_o_orbit(0.0, -n, 0.0);

  const Vec3 tau_e = environmental_torque_body(sigma, state.t, controller_model);
  const Vec3 inner = -t_dot * omega_rel + t_mat * (r_dot * omega_o_orbit) + v;
  return tau_e - state.omega.cross(inertia * state.omega) - inertia * (t_inv * inner);
}

LimitedCommand limit_command(const Vec3& u_cmd, const StationState& state,
                             const CmgLimits& limits) {
  LimitedCommand out;
  const Vec3 gyro = state.omega.cross(state.h_cmg);

  // The physical capability limits the momentum rate, not u itself.
  Vec3 hc_rate = u_cmd - gyro;
  const double rate_mag = hc_rate.norm();
  if (rate_mag > limits.hdot_max) {
    hc_rate *= limits.hdot_max / rate_mag;
    out.rate_clamped = true;
  }

  // On the envelope only control toward the inside is allowed.
  const double hc_mag = state.h_cmg.norm();
  if (hc_mag >= limits.h_max && hc_mag > 0.0) {
    const Vec3 radial = state.h_cmg / hc_mag;
    const double outward = radial.dot(hc_rate);
    if (outward > 0.0) {
      hc_rate -= outward * radial;
      out.envelope_clamped = true;
    }
  }

  out.u = hc_rate + gyro;
  return out;
}

}  // namespace zpm
