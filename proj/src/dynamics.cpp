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

#include "zpm/dynamics.hpp"

#include <cmath>

namespace zpm {

Vec3 orbit_rate_body(const Mrp& sigma, double orbit_rate) {
  return rotation_o_to_b(sigma) * Vec3(0.0, -orbit_rate, 0.0);
}

StateDerivative state_derivative(const StationState& state, const Vec3& u,
                                 const TorqueModel& model,
                                 const SpacecraftParams& params) {
  StateDerivative d;
  const Vec3 omega_o = orbit_rate_body(state.sigma, params.orbit_rate);
  d.sigma_dot = kinematic_matrix(state.sigma) * (state.omega - omega_o);

  const Vec3 tau_e = environmental_torque_body(state.sigma, state.t, model);
  const Vec3 gyro = state.omega.cross(params.inertia * state.omega);
  d.omega_dot = params.inertia.ldlt().solve(tau_e - u - gyro);

  d.hc_dot = u - state.omega.cross(state.h_cmg);
  return d;
}

Mat3 orbit_to_inertial(double t_since_epoch, double orbit_rate) {
  // The orbit frame turns about its own -y axis, so relative to the
  // inertial snapshot it has rotated by -n * t about the shared y axis.
  const double a = -orbit_rate * t_since_epoch;
  const double c = std::cos(a);
  const double s = std::sin(a);
  Mat3 r;
  r << c, 0.0, s,
       0.0, 1.0, 0.0,
      -s, 0.0, c;
  return r;
}

MomentumView total_momentum(const StationState& state, const SpacecraftParams& params,
                            double t0) {
  MomentumView m;
  m.station = params.inertia * state.omega;
  m.body = state.h_cmg + m.station;
  m.orbit = rotation_o_to_b(state.sigma).transpose() * m.body;
  m.inertial = orbit_to_inertial(state.t - t0, params.orbit_rate) * m.orbit;
  return m;
}

double momentum_increment_residual(const SimLog& log, const TorqueModel& model) {
  const auto& rows = log.rows;
  if (rows.size() < 10) {
    throw ValidationError("momentum_increment_residual: log too sparse for quadrature");
  }
  const double t0 = rows.front().t;
  const double n = model.params.orbit_rate;

  std::vector<Vec3> tau_i(rows.size());
  std::vector<Vec3> h_i(rows.size());
  for (size_t k = 0; k < rows.size(); ++k) {
    const auto& row = rows[k];
    const Mat3 r_oi = orbit_to_inertial(row.t - t0, n);
    const Vec3 tau_o = environmental_torque_orbit(row.sigma, row.t, model);
    tau_i[k] = r_oi * tau_o;
    h_i[k] = r_oi * row.H_orbit;
  }

  // Cumulative integral of tau_e with the three point closed
  // Newton-Cotes rule per interval (4th order locally).
  double residual = 0.0;
  Vec3 integral = Vec3::Zero();
  for (size_t k = 1; k < rows.size(); ++k) {
    const double h = rows[k].t - rows[k - 1].t;
    Vec3 seg;
    if (k == 1) {
      seg = h / 12.0 * (5.0 * tau_i[0] + 8.0 * tau_i[1] - tau_i[2]);
    } else {
      seg = h / 12.0 * (-tau_i[k - 2] + 8.0 * tau_i[k - 1] + 5.0 * tau_i[k]);
    }
    integral += seg;
    residual = std::max(residual, (h_i[k] - h_i[0] - integral).norm());
  }
  return residual;
}

}  // namespace zpm
