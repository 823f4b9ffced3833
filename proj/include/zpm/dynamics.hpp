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

#include "zpm/environment.hpp"
#include "zpm/sim_log.hpp"

namespace zpm {

/// Plant state: attitude vs the orbit frame, inertially referenced body
/// rates, and CMG momentum in the body frame.
struct StationState {
  Mrp sigma;
  Vec3 omega = Vec3::Zero();   // rad/s
  Vec3 h_cmg = Vec3::Zero();   // N m s
  double t = 0.0;              // s
};

struct StateDerivative {
  Vec3 sigma_dot = Vec3::Zero();
  Vec3 omega_dot = Vec3::Zero();
  Vec3 hc_dot = Vec3::Zero();
};

/// The system total angular momentum h_c + J omega seen from each frame.
struct MomentumView {
  Vec3 body = Vec3::Zero();
  Vec3 orbit = Vec3::Zero();
  Vec3 inertial = Vec3::Zero();
  Vec3 station = Vec3::Zero();  // J omega alone, body frame
};

/// Orbit frame angular velocity expressed in the body frame,
/// omega_o = R_o^b(sigma) * (0, -n, 0).
Vec3 orbit_rate_body(const Mrp& sigma, double orbit_rate);

/// Right hand side of the coupled kinematics / dynamics / CMG equations:
///   sigma_dot = T(sigma) (omega - omega_o)
///   omega_dot = J^-1 (tau_e - u - omega x J omega)
///   hc_dot    = u - omega x h_c
StateDerivative state_derivative(const StationState& state, const Vec3& u,
                                 const TorqueModel& model,
                                 const SpacecraftParams& params);

/// Rotation from the orbit frame at t0 + t_since_epoch to the inertial
/// frame (which coincides with the orbit frame at t_since_epoch = 0).
/// The shared y axis is the rotation axis.
Mat3 orbit_to_inertial(double t_since_epoch, double orbit_rate);

/// Total momentum of the station system in body / orbit / inertial
/// frames. t0 anchors the inertial frame.
MomentumView total_momentum(const StationState& state, const SpacecraftParams& params,
                            double t0 = 0.0);

/// Conservation check: because the CMGs only exchange momentum, the
/// inertial total momentum can change solely through the environmental
/// torque. Returns max_t | H_i(t) - H_i(t0) - integral of tau_e_i |
/// with the integral taken by 4th order quadrature over the log grid.
/// Throws ValidationError for logs with fewer than 10 samples.
double momentum_increment_residual(const SimLog& log, const TorqueModel& model);

}  // namespace zpm
