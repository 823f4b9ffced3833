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

#include <cmath>
#include <random>

#include "zpm/nominal.hpp"

namespace zpm_test {

using zpm::Mat3;
using zpm::Vec3;

// Independent axis-angle rotation oracle (Rodrigues form of the passive
// orbit-to-body matrix): R = I - sin(t) [e x] + (1 - cos(t)) [e x]^2.
inline Mat3 axis_angle_dcm(const Vec3& axis, double angle) {
  Mat3 ex;
  ex << 0.0, -axis.z(), axis.y(),
        axis.z(), 0.0, -axis.x(),
       -axis.y(), axis.x(), 0.0;
  return Mat3::Identity() - std::sin(angle) * ex +
         (1.0 - std::cos(angle)) * ex * ex;
}

// -90 deg station maneuver example parameters.
inline zpm::SpacecraftParams station_params() {
  zpm::SpacecraftParams p;
  p.inertia << 24180443.0, 3780010.0, 3896127.0,
               3780010.0, 37607882.0, -1171169.0,
               3896127.0, -1171169.0, 51562389.0;
  p.orbit_rate = 1.1461e-3;
  p.h_max = 19524.0;
  p.hdot_max = 271.16;
  p.mu = 3.986004418e14;
  return p;
}

inline zpm::TorqueModel station_model() {
  zpm::TorqueModel m;
  m.params = station_params();
  m.aero.wind_speed = m.params.orbital_speed();
  return m;
}

inline zpm::BoundaryConditions mission_bounds() {
  zpm::BoundaryConditions b;
  b.sigma0 = zpm::Mrp(0.01352, -0.04144, 0.05742);
  b.sigmaf = zpm::Mrp(-0.03636, -0.02063, -0.41360);
  b.omega0 = Vec3(-0.2541e-3, -1.1145e-3, 0.0826e-3);
  b.omegaf = Vec3(1.1353e-3, 0.0030e-3, -0.1571e-3);
  b.hc0 = Vec3(-672.5, -237.3, -5276.8);
  b.hcf = Vec3(-12.2, -4822.6, -183.0);
  b.t0 = 0.0;
  b.tf = 6000.0;
  return b;
}

// Feasible without interior shaping: hold the initial boundary state for
// a short span.
inline zpm::BoundaryConditions holding_bounds(double span = 300.0) {
  zpm::BoundaryConditions b = mission_bounds();
  b.sigmaf = b.sigma0;
  b.omegaf = b.omega0;
  b.hcf = b.hc0;
  b.tf = b.t0 + span;
  return b;
}

// The mission plan is expensive (interior shaping); share one instance
// across test cases.
inline const zpm::ManeuverPlan& mission_plan() {
  static const zpm::ManeuverPlan plan =
      zpm::plan_maneuver(mission_bounds(), station_params(), station_model());
  return plan;
}

inline const zpm::NominalTrajectory& mission_nominal() {
  static const zpm::NominalTrajectory traj = zpm::sample_plan(mission_plan(), 1.0);
  return traj;
}

inline Vec3 random_vec(std::mt19937& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}

inline Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  while (v.norm() < 1e-6) v = Vec3(n(rng), n(rng), n(rng));
  return v.normalized();
}

}  // namespace zpm_test
