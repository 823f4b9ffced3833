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

#include "zpm/attitude.hpp"

#include <algorithm>
#include <cmath>

namespace zpm {

Mrp::Mrp(const Vec3& sigma) : sigma_(sigma) {
  if (!sigma.allFinite()) {
    throw ValidationError("Mrp: non-finite components");
  }
  if (sigma.norm() > kMrpNormLimit) {
    throw ValidationError("Mrp: |sigma| = " + std::to_string(sigma.norm()) +
                          " exceeds the representable range (|sigma| <= 3)");
  }
}

Mrp mrp_from_principal(const Vec3& axis, double angle_rad) {
  const double axis_norm = axis.norm();
  if (std::abs(axis_norm - 1.0) > 1e-9) {
    throw ValidationError("mrp_from_principal: axis is not unit length");
  }
  const double max_angle = 4.0 * std::atan(kMrpNormLimit);
  if (!(std::abs(angle_rad) < max_angle)) {
    throw ValidationError("mrp_from_principal: angle out of representable range");
  }
  return Mrp(axis * std::tan(angle_rad / 4.0));
}

double principal_angle(const Mrp& sigma) {
  return 4.0 * std::atan(sigma.norm());
}

Vec3 principal_axis(const Mrp& sigma) {
  const double n = sigma.norm();
  if (n == 0.0) {
    return Vec3::UnitX();
  }
  return sigma.vec() / n;
}

Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return s;
}

Mat3 kinematic_matrix(const Mrp& sigma) {
  const Vec3& s = sigma.vec();
  const double s2 = s.squaredNorm();
  return 0.25 * ((1.0 - s2) * Mat3::Identity() + 2.0 * skew(s) +
                 2.0 * s * s.transpose());
}

Mat3 kinematic_matrix_inverse(const Mrp& sigma) {
  const double s2 = sigma.squared_norm();
  const double factor = 16.0 / ((1.0 + s2) * (1.0 + s2));
  return factor * kinematic_matrix(sigma).transpose();
}

Mat3 kinematic_matrix_dot(const Mrp& sigma, const Vec3& sigma_dot) {
  const Vec3& s = sigma.vec();
  const Vec3& ds = sigma_dot;
  return 0.25 * (-2.0 * s.dot(ds) * Mat3::Identity() + 2.0 * skew(ds) +
                 2.0 * (ds * s.transpose() + s * ds.transpose()));
}

Mat3 rotation_o_to_b(const Mrp& sigma) {
  const Vec3& s = sigma.vec();
  const double s2 = s.squaredNorm();
  const double denom = (1.0 + s2) * (1.0 + s2);
  const Mat3 sx = skew(s);
  return Mat3::Identity() + (8.0 * sx * sx - 4.0 * (1.0 - s2) * sx) / denom;
}

Mrp mrp_compose(const Mrp& a, const Mrp& b) {
  const Vec3& sa = a.vec();
  const Vec3& sb = b.vec();
  const double a2 = sa.squaredNorm();
  const double b2 = sb.squaredNorm();
  const double denom = 1.0 + a2 * b2 - 2.0 * sa.dot(sb);
  if (std::abs(denom) < 1e-6) {
    throw ValidationError("mrp_compose: composition approaches the 360 deg singularity");
  }
  const Vec3 num = (1.0 - a2) * sb + (1.0 - b2) * sa - 2.0 * sb.cross(sa);
  return Mrp(num / denom);
}

Mrp mrp_inverse(const Mrp& sigma) {
  return Mrp(-sigma.vec());
}

double attitude_error_angle(const Mrp& a, const Mrp& b) {
  const Mat3 rel = rotation_o_to_b(a) * rotation_o_to_b(b).transpose();
  const double c = std::clamp((rel.trace() - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

}  // namespace zpm
