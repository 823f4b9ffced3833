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

/// Modified Rodrigues Parameters, sigma = axis * tan(angle/4).
///
/// The representation is singular only at a principal rotation of
/// +-360 deg; construction rejects |sigma| > 3 (about 289 deg), which is
/// far beyond any maneuver this library simulates, instead of switching
/// to the shadow set.
class Mrp {
 public:
  Mrp() : sigma_(Vec3::Zero()) {}

  /// Throws ValidationError for non-finite components or |sigma| > 3.
  explicit Mrp(const Vec3& sigma);
  Mrp(double s1, double s2, double s3) : Mrp(Vec3(s1, s2, s3)) {}

  const Vec3& vec() const { return sigma_; }
  double operator[](int i) const { return sigma_[i]; }
  double norm() const { return sigma_.norm(); }
  double squared_norm() const { return sigma_.squaredNorm(); }

 private:
  Vec3 sigma_;
};

/// Largest |sigma| accepted by the Mrp constructor.
inline constexpr double kMrpNormLimit = 3.0;

/// Mrp for a principal rotation about a unit axis.
/// Requires |axis| = 1 within 1e-9 and |angle| < 4*atan(3).
Mrp mrp_from_principal(const Vec3& axis, double angle_rad);

/// Principal rotation angle, theta = 4*atan(|sigma|) >= 0.
double principal_angle(const Mrp& sigma);

/// Unit principal axis (e1 for the zero rotation).
Vec3 principal_axis(const Mrp& sigma);

/// Skew symmetric cross product matrix, skew(v)*w = v x w.
Mat3 skew(const Vec3& v);

/// Kinematic matrix T(sigma) with sigma_dot = T(sigma) * omega_rel,
/// T = 1/4 [ (1 - s.s) I + 2 skew(s) + 2 s s^T ].
Mat3 kinematic_matrix(const Mrp& sigma);

/// Closed-form inverse, T^-1 = 16 / (1 + s.s)^2 * T^T.
Mat3 kinematic_matrix_inverse(const Mrp& sigma);

/// Time derivative of T(sigma) given sigma_dot.
Mat3 kinematic_matrix_dot(const Mrp& sigma, const Vec3& sigma_dot);

/// Rotation matrix mapping orbit-frame components to body-frame
/// components for attitude sigma (body relative to orbit).
Mat3 rotation_o_to_b(const Mrp& sigma);

/// Mrp of the composed rotation: first a, then b, so that
/// rotation_o_to_b(result) = rotation_o_to_b(b) * rotation_o_to_b(a).
/// Throws ValidationError when the composition approaches 360 deg.
Mrp mrp_compose(const Mrp& a, const Mrp& b);

/// Mrp of the inverse rotation (just -sigma).
Mrp mrp_inverse(const Mrp& sigma);

/// Principal rotation angle between two attitudes, in [0, pi].
double attitude_error_angle(const Mrp& a, const Mrp& b);

}  // namespace zpm
