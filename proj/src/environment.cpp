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

#include "zpm/environment.hpp"

#include <cmath>

namespace zpm {

double SpacecraftParams::orbital_speed() const {
  return orbit_rate * std::cbrt(mu / (orbit_rate * orbit_rate));
}

void SpacecraftParams::validate() const {
  if (!inertia.allFinite() || (inertia - inertia.transpose()).norm() > 1e-6 * inertia.norm()) {
    throw ValidationError("SpacecraftParams: inertia must be finite and symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw ValidationError("SpacecraftParams: inertia must be positive definite");
  }
  if (!(orbit_rate > 0.0) || !(h_max > 0.0) || !(hdot_max > 0.0) || !(mu > 0.0)) {
    throw ValidationError("SpacecraftParams: orbit_rate, h_max, hdot_max, mu must be positive");
  }
}

void AeroParams::validate() const {
  if (!(area > 0.0) || !(density >= 0.0) || !(drag_coeff > 0.0) || !(wind_speed > 0.0)) {
    throw ValidationError("AeroParams: area, drag_coeff, wind_speed must be positive, density >= 0");
  }
  if (!(corotation_factor >= 0.0) || !(corotation_factor <= 1.0)) {
    throw ValidationError("AeroParams: corotation_factor must lie in [0, 1]");
  }
}

void DisturbanceSpec::validate() const {
  if (!(tf > t0)) {
    throw ValidationError("DisturbanceSpec: tf must exceed t0");
  }
}

Vec3 gravity_gradient_torque(const Mrp& sigma, const SpacecraftParams& params) {
  const Vec3 nadir = rotation_o_to_b(sigma) * Vec3::UnitZ();
  const double n = params.orbit_rate;
  return 3.0 * n * n * nadir.cross(params.inertia * nadir);
}

Vec3 aerodynamic_torque(const Mrp& sigma, const AeroParams& aero) {
  // Wind velocity relative to the station, orbit frame components.
  const Vec3 v_rel_o = -aero.wind_speed * aero.corotation_factor * Vec3::UnitX();
  const double speed = v_rel_o.norm();
  const Vec3 force_b = 0.5 * aero.density * aero.drag_coeff * aero.area * speed *
                       (rotation_o_to_b(sigma) * v_rel_o);
  return aero.cp_offset.cross(force_b);
}

Vec3 disturbance_torque(double t, const DisturbanceSpec& spec) {
  if (t < spec.t0 || t > spec.tf) {
    return Vec3::Zero();
  }
  const double s = 2.0 * (t - spec.t0) / (spec.tf - spec.t0);
  const double a = std::pow(s, 6);
  const double b = std::pow(s - 2.0, 6);
  return spec.v_d * (a * b);
}

Vec3 environmental_torque_body(const Mrp& sigma, double t, const TorqueModel& model) {
  Vec3 tau = Vec3::Zero();
  if (model.gravity_gradient) {
    tau += gravity_gradient_torque(sigma, model.params);
  }
  if (model.aerodynamic) {
    tau += aerodynamic_torque(sigma, model.aero);
  }
  if (model.disturbance) {
    Vec3 dist = disturbance_torque(t, model.dist);
    if (model.dist.frame == Frame::orbit) {
      dist = rotation_o_to_b(sigma) * dist;
    }
    tau += dist;
  }
  return tau;
}

Vec3 environmental_torque_orbit(const Mrp& sigma, double t, const TorqueModel& model) {
  return rotation_o_to_b(sigma).transpose() * environmental_torque_body(sigma, t, model);
}

}  // namespace zpm
