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
#include <complex>
#include <random>

#include "test_helpers.hpp"
#include "zpm/tracking.hpp"

using namespace zpm;
using zpm_test::mission_plan;
using zpm_test::random_unit;
using zpm_test::random_vec;
using zpm_test::station_model;
using zpm_test::station_params;

namespace {

// sigma_ddot for a given state and torque, assembled from the dynamics
// primitives (time derivative of the kinematic relation).
Vec3 sigma_ddot_of(const StationState& s, const Vec3& u, const TorqueModel& model,
                   const SpacecraftParams& params) {
  const StateDerivative d = state_derivative(s, u, model, params);
  const Vec3 omega_o = orbit_rate_body(s.sigma, params.orbit_rate);
  const Vec3 omega_rel = s.omega - omega_o;
  const Vec3 omega_o_dot = -omega_rel.cross(omega_o);
  return kinematic_matrix_dot(s.sigma, d.sigma_dot) * omega_rel +
         kinematic_matrix(s.sigma) * (d.omega_dot - omega_o_dot);
}

StationState random_state(std::mt19937& rng) {
  StationState s;
  s.sigma = Mrp(random_unit(rng) * std::uniform_real_distribution<double>(0.0, 0.9)(rng));
  s.omega = random_vec(rng, 2e-3);
  s.h_cmg = random_vec(rng, 6000.0);
  s.t = std::uniform_real_distribution<double>(0.0, 6000.0)(rng);
  return s;
}

}  // namespace

TEST_CASE("tracker gains") {
  TrackerGains gains;
  CHECK(gains.kp() == doctest::Approx(-1e-4).epsilon(1e-15));
  CHECK(gains.kd() == doctest::Approx(-2.0 * 0.01 * 0.707).epsilon(1e-15));
  gains.omega_n = 0.0;
  CHECK_THROWS_AS(gains.validate(), ValidationError);

  // Closed-loop poles of s^2 - kd s - kp sit in the open left half plane.
  const TrackerGains def;
  const std::complex<double> disc =
      std::sqrt(std::complex<double>(def.kd() * def.kd() + 4.0 * def.kp(), 0.0));
  const std::complex<double> s1 = 0.5 * (def.kd() + disc);
  const std::complex<double> s2 = 0.5 * (def.kd() - disc);
  CHECK(s1.real() < 0.0);
  CHECK(s2.real() < 0.0);
  CHECK(std::abs(s1) == doctest::Approx(def.omega_n).epsilon(1e-12));
}

TEST_CASE("feedback law") {
  const TrackerGains gains;
  CHECK(feedback(Vec3::Zero(), Vec3::Zero(), gains).norm() == 0.0);
  const Vec3 dv = feedback(Vec3::UnitX(), Vec3::Zero(), gains);
  CHECK(dv.x() == doctest::Approx(-1e-4).epsilon(1e-14));
  CHECK(dv.y() == 0.0);
  CHECK(dv.z() == 0.0);

  // Per-axis decoupling and linearity.
  std::mt19937 rng(3);
  const Vec3 e = random_vec(rng, 0.1);
  const Vec3 edot = random_vec(rng, 1e-3);
  const Vec3 both = feedback(e, edot, gains);
  CHECK((both - feedback(e, Vec3::Zero(), gains) - feedback(Vec3::Zero(), edot, gains))
            .norm() <= 1e-18);
}

TEST_CASE("transformed control is feedforward plus feedback") {
  std::mt19937 rng(5);
  const Vec3 ff = random_vec(rng, 1e-6);
  const Vec3 fb = random_vec(rng, 1e-6);
  CHECK((transformed_control(ff, Vec3::Zero()) - ff).norm() == 0.0);
  CHECK((transformed_control(Vec3::Zero(), fb) - fb).norm() == 0.0);
  CHECK((transformed_control(ff, fb) - ff - fb).norm() == 0.0);
}

TEST_CASE("command torque inverts the linearized dynamics exactly") {
  const TorqueModel model = station_model();
  const SpacecraftParams params = station_params();
  std::mt19937 rng(7);

  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const StationState s = random_state(rng);
    const Vec3 v = random_vec(rng, 1e-5);
    const Vec3 u = command_torque(s, v, model, params);
    const Vec3 recovered = sigma_ddot_of(s, u, model, params);
    worst = std::max(worst, (recovered - v).norm() / std::max(1e-12, v.norm()));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("command torque agrees with a finite-difference acceleration") {
  // Integrate the plant two tiny steps with the command held and compare
  // the finite-difference attitude acceleration against the request.
  const TorqueModel model = station_model();
  const SpacecraftParams params = station_params();
  std::mt19937 rng(11);

  for (int i = 0; i < 25; ++i) {
    const StationState s0 = random_state(rng);
    const Vec3 v = random_vec(rng, 1e-5);
    const Vec3 u = command_torque(s0, v, model, params);

    const double h = 1e-3;
    const auto sigma_dot_at = [&](double dt) {
      // One RK4 step of size dt from s0 under constant u.
      const auto f = [&](const StationState& s) {
        return state_derivative(s, u, model, params);
      };
      const auto advance = [&](const StationState& s, const StateDerivative& d,
                               double hh) {
        StationState out;
        out.sigma = Mrp(Vec3(s.sigma.vec() + hh * d.sigma_dot));
        out.omega = s.omega + hh * d.omega_dot;
        out.h_cmg = s.h_cmg + hh * d.hc_dot;
        out.t = s.t + hh;
        return out;
      };
      const StateDerivative k1 = f(s0);
      const StateDerivative k2 = f(advance(s0, k1, 0.5 * dt));
      const StateDerivative k3 = f(advance(s0, k2, 0.5 * dt));
      const StateDerivative k4 = f(advance(s0, k3, dt));
      StationState s1;
      s1.sigma = Mrp(Vec3(s0.sigma.vec() +
                          dt / 6.0 *
                              (k1.sigma_dot + 2.0 * k2.sigma_dot + 2.0 * k3.sigma_dot +
                               k4.sigma_dot)));
      s1.omega = s0.omega + dt / 6.0 *
                                (k1.omega_dot + 2.0 * k2.omega_dot +
                                 2.0 * k3.omega_dot + k4.omega_dot);
      s1.h_cmg = s0.h_cmg + dt / 6.0 *
                                (k1.hc_dot + 2.0 * k2.hc_dot + 2.0 * k3.hc_dot +
                                 k4.hc_dot);
      s1.t = s0.t + dt;
      return state_derivative(s1, u, model, params).sigma_dot;
    };

    const Vec3 fd = (sigma_dot_at(h) - sigma_dot_at(-h)) / (2.0 * h);
    CHECK((fd - v).norm() <= 1e-5 * std::max(1e-9, v.norm()) + 1e-12);
  }
}

TEST_CASE("command torque reproduces the planner's feedforward on the nominal") {
  const ManeuverPlan& plan = mission_plan();
  const TorqueModel model = station_model();
  const SpacecraftParams params = station_params();

  for (double t : {100.0, 1700.0, 2900.0, 4300.0, 5900.0}) {
    StationState s;
    s.sigma = Mrp(plan.sigma(t));
    s.omega = plan.omega(t);
    s.h_cmg = Vec3::Zero();  // u_cmd does not depend on h_c
    s.t = t;
    const Vec3 u = command_torque(s, plan.sigma_ddot(t), model, params);
    CHECK((u - plan.control(t)).norm() <= 1e-6);
  }
}

TEST_CASE("command torque structure at identity attitude") {
  // At sigma = 0 with omega = omega_o the relative rotation stops, the
  // frame-rate correction vanishes, and v = 0 demands exactly the
  // gyroscopic balance torque.
  const TorqueModel model = station_model();
  const SpacecraftParams params = station_params();
  StationState s;
  s.sigma = Mrp();
  s.omega = orbit_rate_body(s.sigma, params.orbit_rate);
  s.t = 0.0;
  const Vec3 u = command_torque(s, Vec3::Zero(), model, params);
  const Vec3 expect = environmental_torque_body(s.sigma, 0.0, model) -
                      s.omega.cross(params.inertia * s.omega);
  CHECK((u - expect).norm() <= 1e-12 * expect.norm());
}

TEST_CASE("command limiting") {
  CmgLimits limits;  // defaults
  std::mt19937 rng(13);

  SUBCASE("interior small command passes through") {
    StationState s;
    s.sigma = Mrp(0.1, 0.0, 0.0);
    s.omega = Vec3(1e-3, -1e-3, 0.0);
    s.h_cmg = Vec3(1000.0, 500.0, -300.0);
    const Vec3 u(5.0, -3.0, 1.0);
    const LimitedCommand lim = limit_command(u, s, limits);
    CHECK_FALSE(lim.rate_clamped);
    CHECK_FALSE(lim.envelope_clamped);
    CHECK((lim.u - u).norm() == 0.0);
  }

  SUBCASE("rate clamp scales the momentum rate to exactly hdot_max") {
    StationState s;
    s.h_cmg = Vec3(100.0, 0.0, 0.0);
    s.omega = Vec3::Zero();
    const Vec3 u = Vec3(2.0 * limits.hdot_max, 0.0, 0.0);
    const LimitedCommand lim = limit_command(u, s, limits);
    CHECK(lim.rate_clamped);
    const Vec3 hc_rate = lim.u - s.omega.cross(s.h_cmg);
    CHECK(hc_rate.norm() == doctest::Approx(271.16).epsilon(1e-12));
  }

  SUBCASE("on the envelope only inward control remains") {
    StationState s;
    s.h_cmg = Vec3(limits.h_max, 0.0, 0.0);
    s.omega = Vec3(0.0, 5e-4, 0.0);
    const Vec3 hc_rate_cmd(10.0, 5.0, 0.0);  // radially outward component 10
    const Vec3 u = hc_rate_cmd + s.omega.cross(s.h_cmg);
    const LimitedCommand lim = limit_command(u, s, limits);
    CHECK(lim.envelope_clamped);
    const Vec3 hc_rate = lim.u - s.omega.cross(s.h_cmg);
    CHECK(std::abs(s.h_cmg.normalized().dot(hc_rate)) <= 1e-12 * hc_rate.norm());
  }

  SUBCASE("idempotent and never increases the momentum rate") {
    for (int i = 0; i < 200; ++i) {
      StationState s;
      s.sigma = Mrp(random_unit(rng) * 0.5);
      s.omega = random_vec(rng, 2e-3);
      const bool on_envelope = i % 3 == 0;
      s.h_cmg = random_unit(rng) * (on_envelope ? limits.h_max : 12000.0);
      const Vec3 u = random_vec(rng, 800.0);

      const LimitedCommand once = limit_command(u, s, limits);
      const LimitedCommand twice = limit_command(once.u, s, limits);
      CHECK((twice.u - once.u).norm() <= 1e-9 * std::max(1.0, once.u.norm()));

      const double rate_before = (u - s.omega.cross(s.h_cmg)).norm();
      const double rate_after = (once.u - s.omega.cross(s.h_cmg)).norm();
      CHECK(rate_after <= rate_before * (1.0 + 1e-12));
      CHECK(rate_after <= limits.hdot_max * (1.0 + 1e-12));
    }
  }
}
