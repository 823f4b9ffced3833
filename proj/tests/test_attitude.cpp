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

#include <doctest.h>

#include <cmath>
#include <random>

#include "test_helpers.hpp"
#include "zpm/attitude.hpp"

using namespace zpm;
using zpm_test::axis_angle_dcm;
using zpm_test::random_unit;
using zpm_test::random_vec;

TEST_CASE("Mrp construction enforces the representable range") {
  CHECK_NOTHROW(Mrp(1.0, 1.0, 1.0));
  CHECK_THROWS_AS(Mrp(3.0, 0.1, 0.0), ValidationError);
  CHECK_THROWS_AS(Mrp(std::nan(""), 0.0, 0.0), ValidationError);
  CHECK(Mrp().norm() == 0.0);
}

TEST_CASE("mrp_from_principal basics") {
  CHECK(mrp_from_principal(Vec3::UnitY(), 0.0).norm() == 0.0);

  const Mrp half_turn = mrp_from_principal(Vec3::UnitZ(), M_PI);
  CHECK(half_turn[0] == doctest::Approx(0.0));
  CHECK(half_turn[1] == doctest::Approx(0.0));
  CHECK(half_turn[2] == doctest::Approx(1.0));

  // 5 deg about x: tan(1.25 deg) computed here as the oracle.
  const Mrp five = mrp_from_principal(Vec3::UnitX(), 5.0 * M_PI / 180.0);
  CHECK(five[0] == doctest::Approx(std::tan(1.25 * M_PI / 180.0)).epsilon(1e-14));
  CHECK(five[1] == 0.0);

  CHECK_THROWS_AS(mrp_from_principal(Vec3(1.0, 1.0, 0.0), 0.3), ValidationError);
  CHECK_THROWS_AS(mrp_from_principal(Vec3::UnitX(), 4.0 * std::atan(3.0) + 0.01),
                  ValidationError);
}

TEST_CASE("principal angle and axis") {
  CHECK(principal_angle(Mrp()) == 0.0);
  CHECK(principal_angle(Mrp(0.0, 1.0, 0.0)) == doctest::Approx(M_PI).epsilon(1e-15));

  // Mission initial attitude: theta = 4 atan(|sigma|), evaluated here.
  const Mrp sigma0(0.01352, -0.04144, 0.05742);
  const double expect = 4.0 * std::atan(sigma0.norm());
  CHECK(principal_angle(sigma0) == doctest::Approx(expect).epsilon(1e-15));
  CHECK(expect == doctest::Approx(0.288).epsilon(2e-3));

  // Round trip through the principal decomposition.
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    const Vec3 axis = random_unit(rng);
    std::uniform_real_distribution<double> ang(1e-4, 280.0 * M_PI / 180.0);
    const double theta = ang(rng);
    const Mrp sigma = mrp_from_principal(axis, theta);
    CHECK(principal_angle(sigma) == doctest::Approx(theta).epsilon(1e-12));
    const Mrp back = mrp_from_principal(principal_axis(sigma), principal_angle(sigma));
    CHECK((back.vec() - sigma.vec()).norm() <= 1e-12);
  }
}

TEST_CASE("skew matrix") {
  std::mt19937 rng(7);
  const Vec3 v = random_vec(rng, 2.0);
  CHECK((skew(v) * v).norm() <= 1e-15);
  CHECK(((skew(Vec3::UnitX()) * Vec3::UnitY()) - Vec3::UnitZ()).norm() == 0.0);
  for (int i = 0; i < 50; ++i) {
    const Vec3 a = random_vec(rng, 3.0);
    const Vec3 b = random_vec(rng, 3.0);
    CHECK((skew(a) * b - a.cross(b)).norm() <= 1e-15 * a.norm() * b.norm() + 1e-300);
    CHECK((skew(a) + skew(a).transpose()).norm() == 0.0);
  }
}

TEST_CASE("kinematic matrix and its closed-form inverse") {
  CHECK((kinematic_matrix(Mrp()) - 0.25 * Mat3::Identity()).norm() == 0.0);
  CHECK((kinematic_matrix_inverse(Mrp()) - 4.0 * Mat3::Identity()).norm() <= 1e-15);

  // |sigma| = 1 makes the inverse prefactor 16/4 = 4.
  const Mrp unit(1.0, 0.0, 0.0);
  CHECK((kinematic_matrix_inverse(unit) - 4.0 * kinematic_matrix(unit).transpose())
            .norm() <= 1e-14);

  std::mt19937 rng(3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mrp sigma(random_unit(rng) * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    const Mat3 prod = kinematic_matrix_inverse(sigma) * kinematic_matrix(sigma);
    worst = std::max(worst, (prod - Mat3::Identity()).norm());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("kinematics match an integrated rotation (finite differences)") {
  // Constant body rate, orbit rate zero; attitude advanced by composing
  // the exact axis-angle increment. sigma_dot from the kinematic matrix
  // must match the finite difference of that rotation history.
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    const Mrp sigma0(random_unit(rng) * 0.5);
    const Vec3 omega = random_unit(rng) * 0.3;  // rad/s
    const double h = 1e-4;

    const auto attitude_at = [&](double dt) {
      const Mrp inc = mrp_from_principal(omega.normalized(), omega.norm() * dt);
      return mrp_compose(sigma0, inc);
    };
    const Vec3 fd =
        (attitude_at(h).vec() - attitude_at(-h).vec()) / (2.0 * h);
    const Vec3 analytic = kinematic_matrix(sigma0) * omega;
    CHECK((fd - analytic).norm() <= 1e-8);
  }
}

TEST_CASE("kinematic matrix time derivative matches finite differences") {
  std::mt19937 rng(13);
  for (int i = 0; i < 20; ++i) {
    const Vec3 s = random_unit(rng) * 0.6;
    const Vec3 ds = random_vec(rng, 0.01);
    const double h = 1e-6;
    const Mat3 fd =
        (kinematic_matrix(Mrp(Vec3(s + h * ds))) - kinematic_matrix(Mrp(Vec3(s - h * ds)))) /
        (2.0 * h);
    CHECK((fd - kinematic_matrix_dot(Mrp(s), ds)).norm() <= 1e-9);
  }
}

TEST_CASE("rotation matrix basics") {
  CHECK((rotation_o_to_b(Mrp()) - Mat3::Identity()).norm() == 0.0);

  const Mat3 half_turn = rotation_o_to_b(Mrp(0.0, 0.0, 1.0));
  Mat3 expect;
  expect << -1, 0, 0, 0, -1, 0, 0, 0, 1;
  CHECK((half_turn - expect).norm() <= 1e-15);
}

TEST_CASE("rotation matches the axis-angle oracle and stays orthogonal") {
  std::mt19937 rng(17);
  for (int i = 0; i < 200; ++i) {
    const Vec3 axis = random_unit(rng);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    const double theta = ang(rng);
    const Mat3 r = rotation_o_to_b(mrp_from_principal(axis, theta));
    CHECK((r - axis_angle_dcm(axis, theta)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((r.transpose() * r - Mat3::Identity()).norm() <= 1e-12);
    CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("mrp composition") {
  std::mt19937 rng(23);
  const Mrp a(random_unit(rng) * 0.4);
  CHECK((mrp_compose(a, Mrp()).vec() - a.vec()).norm() <= 1e-15);
  CHECK(mrp_compose(a, mrp_inverse(a)).norm() <= 1e-15);

  for (int i = 0; i < 200; ++i) {
    const Mrp p(random_unit(rng) * std::uniform_real_distribution<double>(0.0, 0.8)(rng));
    const Mrp q(random_unit(rng) * std::uniform_real_distribution<double>(0.0, 0.8)(rng));
    const Mat3 expect = rotation_o_to_b(q) * rotation_o_to_b(p);
    CHECK((rotation_o_to_b(mrp_compose(p, q)) - expect).cwiseAbs().maxCoeff() <= 1e-10);
  }

  // Associativity through the rotation-matrix oracle.
  for (int i = 0; i < 50; ++i) {
    const Mrp p(random_unit(rng) * 0.3);
    const Mrp q(random_unit(rng) * 0.3);
    const Mrp r(random_unit(rng) * 0.3);
    const Mrp left = mrp_compose(mrp_compose(p, q), r);
    const Mrp right = mrp_compose(p, mrp_compose(q, r));
    CHECK((rotation_o_to_b(left) - rotation_o_to_b(right)).norm() <= 1e-9);
  }

  // Two half turns about the same axis meet the 360 deg singularity.
  CHECK_THROWS_AS(mrp_compose(Mrp(1.0, 0.0, 0.0), Mrp(1.0, 0.0, 0.0)), ValidationError);
}

TEST_CASE("attitude error angle") {
  std::mt19937 rng(29);
  const Mrp a(random_unit(rng) * 0.5);
  CHECK(attitude_error_angle(a, a) == doctest::Approx(0.0));

  const double five_deg = 5.0 * M_PI / 180.0;
  const Mrp b = mrp_from_principal(random_unit(rng), five_deg);
  CHECK(attitude_error_angle(Mrp(), b) == doctest::Approx(five_deg).epsilon(1e-12));
  CHECK(attitude_error_angle(b, Mrp()) == doctest::Approx(five_deg).epsilon(1e-12));

  for (int i = 0; i < 100; ++i) {
    const Mrp p(random_unit(rng) * 0.4);
    const Mrp q(random_unit(rng) * 0.4);
    const Mrp r(random_unit(rng) * 0.4);
    CHECK(attitude_error_angle(p, q) == doctest::Approx(attitude_error_angle(q, p)));
    CHECK(attitude_error_angle(p, r) <=
          attitude_error_angle(p, q) + attitude_error_angle(q, r) + 1e-9);
  }
}
