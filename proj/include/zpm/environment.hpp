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

#include "zpm/attitude.hpp"
#include "zpm/spacecraft.hpp"

namespace zpm {

enum class Frame { body, orbit };

/// Constant-area drag model parameters.
struct AeroParams {
  double area = 500.0;                  // projected cross section, m^2
  Vec3 cp_offset{-9.70, 1.71, 1.74};    // mass center -> pressure center, body frame, m
  double density = 2e-11;               // atmospheric density, kg/m^3
  double drag_coeff = 2.2;              // C_d
  double wind_speed = 7703.97;          // relative wind magnitude, m/s
  double corotation_factor = 1.0;       // scales the along-track wind, [0, 1]

  void validate() const;
};

/// Smooth torque bump that ramps up from zero at t0, peaks at the
/// midpoint with value v_d and returns to zero at tf. Zero outside
/// [t0, tf].
struct DisturbanceSpec {
  Vec3 v_d = Vec3::Zero();  // peak torque, N m
  double t0 = 0.0;          // s
  double tf = 6000.0;       // s
  Frame frame = Frame::body;

  bool active() const { return v_d.squaredNorm() > 0.0; }
  void validate() const;
};

/// Which environmental torques act, and with which parameters.
struct TorqueModel {
  bool gravity_gradient = true;
  bool aerodynamic = true;
  bool disturbance = false;

  SpacecraftParams params;
  AeroParams aero;
  DisturbanceSpec dist;
};

/// Gravity gradient torque in the body frame,
/// tau = 3 n^2 nadir x (J nadir) with nadir = R_o^b * e_z.
Vec3 gravity_gradient_torque(const Mrp& sigma, const SpacecraftParams& params);

/// Drag torque in the body frame. The relative wind blows along -x of
/// the orbit frame with magnitude wind_speed * corotation_factor; the
/// resulting force acts at the (fixed, body frame) pressure center.
Vec3 aerodynamic_torque(const Mrp& sigma, const AeroParams& aero);

/// Disturbance torque at time t (frame given by spec.frame).
Vec3 disturbance_torque(double t, const DisturbanceSpec& spec);

/// Sum of the enabled torque contributions, body frame.
Vec3 environmental_torque_body(const Mrp& sigma, double t, const TorqueModel& model);

/// Same sum expressed in the orbit frame.
Vec3 environmental_torque_orbit(const Mrp& sigma, double t, const TorqueModel& model);

}  // namespace zpm
