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

#include "zpm/types.hpp"

namespace zpm {

/// Mass and orbit properties of the station plus CMG capability limits.
///
/// Two instances of this struct typically exist side by side: the truth
/// values the plant integrates with and the values the controllers
/// believe in (they coincide unless a mismatch is being studied).
struct SpacecraftParams {
  Mat3 inertia = Mat3::Identity();  // J, kg m^2, symmetric positive definite
  double orbit_rate = 1.1461e-3;    // n, rad/s (circular orbit)
  double h_max = 19524.0;           // CMG momentum envelope, N m s
  double hdot_max = 271.16;         // CMG torque capability, N m
  double mu = 3.986004418e14;       // gravitational parameter, m^3/s^2

  /// Circular-orbit speed n * (mu / n^2)^(1/3); used as the default
  /// relative wind magnitude for the drag model.
  double orbital_speed() const;

  /// Throws ValidationError unless J is symmetric positive definite and
  /// the scalar parameters are positive.
  void validate() const;
};

}  // namespace zpm
