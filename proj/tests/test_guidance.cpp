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
#include "zpm/guidance.hpp"

using namespace zpm;
using zpm_test::mission_nominal;
using zpm_test::random_unit;
using zpm_test::random_vec;
using zpm_test::station_model;
using zpm_test::station_params;

namespace {

const SensitivitySeries& mission_series() {
  static const SensitivitySeries series =
      sensitivity_series(mission_nominal(), station_model());
  return series;
}

Mat3 random_mat(std::mt19937& rng, double scale) {
  Mat3 m;
  std::uniform_real_distribution<double> u(-scale, scale);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("momentum error") {
  const SpacecraftParams params = station_params();
  const NominalTrajectory& nominal = mission_nominal();
  const NominalSample nom0 = nominal.sample(0.0);

  StationState s;
  s.sigma = Mrp(nominal.sigma_grid()[0]);
  s.omega = nominal.omega_grid()[0];
  s.h_cmg = nominal.hc_grid()[0];
  s.t = 0.0;
  CHECK(momentum_error(s, nom0, params).norm() <= 1e-9);

  // A pure CMG offset at the nominal attitude appears rotated into the
  // orbit frame with its magnitude intact.
  const Vec3 offset(4500.0, 0.0, 0.0);
  s.h_cmg += offset;
  const Vec3 dh = momentum_error(s, nom0, params);
  CHECK(dh.norm() == doctest::Approx(4500.0).epsilon(1e-9));
  CHECK((rotation_o_to_b(s.sigma) * dh - offset).norm() <= 1e-9 * offset.norm());
}

TEST_CASE("sensitivity matrix") {
  SUBCASE("all torque contributions off") {
    TorqueModel off = station_model();
    off.gravity_gradient = false;
    off.aerodynamic = false;
    CHECK(sensitivity_matrix(Mrp(0.1, 0.2, -0.3), 0.0, off).norm() == 0.0);
  }

  SUBCASE("diagonal-inertia analytic gradient at identity") {
    // With J = diag(A, B, C) the orbit-frame gravity gradient torque has
    // gradient 12 n^2 diag(C - B, C - A, 0) at sigma = 0 (the body
    // torque vanishes there, so the frame rotation contributes nothing).
    TorqueModel gg = station_model();
    gg.aerodynamic = false;
    const double a = 1.2e7, b = 3.1e7, c = 4.9e7;
    gg.params.inertia = Vec3(a, b, c).asDiagonal();
    const double n = gg.params.orbit_rate;
    Mat3 analytic = Mat3::Zero();
    analytic(0, 0) = 12.0 * n * n * (c - b);
    analytic(1, 1) = 12.0 * n * n * (c - a);
    const Mat3 fd = sensitivity_matrix(Mrp(), 0.0, gg);
    CHECK((fd - analytic).norm() <= 1e-6 * analytic.norm());
  }

  SUBCASE("Richardson convergence at second order") {
    const TorqueModel model = station_model();
    const Mrp sigma(0.05, -0.12, 0.31);
    // Steps large enough that truncation dominates roundoff.
    const Mat3 c1 = sensitivity_matrix(sigma, 0.0, model, 4e-3);
    const Mat3 c2 = sensitivity_matrix(sigma, 0.0, model, 2e-3);
    const Mat3 c4 = sensitivity_matrix(sigma, 0.0, model, 1e-3);
    const Mat3 extrap = (4.0 * c4 - c2) / 3.0;
    const double e1 = (c1 - extrap).norm();
    const double e2 = (c2 - extrap).norm();
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.25));
  }

  SUBCASE("fd step must be positive") {
    CHECK_THROWS_AS(sensitivity_matrix(Mrp(), 0.0, station_model(), 0.0),
                    ValidationError);
  }
}

TEST_CASE("sensitivity series time derivatives") {
  SUBCASE("linear matrices: exact slope, vanishing curvature") {
    const double step = 2.0;
    std::mt19937 rng(3);
    const Mat3 base = random_mat(rng, 5.0);
    const Mat3 slope = random_mat(rng, 0.3);
    std::vector<Mat3> c(9);
    for (std::size_t k = 0; k < c.size(); ++k) {
      c[k] = base + static_cast<double>(k) * step * slope;
    }
    const SensitivitySeries series(0.0, step, c);
    for (const auto& cd : series.c_dot_grid()) {
      CHECK((cd - slope).norm() <= 1e-12 * slope.norm());
    }
    for (const auto& cdd : series.c_ddot_grid()) {
      CHECK(cdd.norm() <= 1e-12 * slope.norm());
    }
  }

  SUBCASE("constant attitude: zero drift") {
    std::vector<Vec3> sig(20, Vec3(0.01352, -0.04144, 0.05742));
    std::vector<Vec3> zero(20, Vec3::Zero());
    const NominalTrajectory hold(0.0, 1.0, sig, zero, zero, zero, zero, zero);
    const SensitivitySeries series = sensitivity_series(hold, station_model());
    for (const auto& cd : series.c_dot_grid()) {
      CHECK(cd.norm() <= 1e-9);
    }
  }

  SUBCASE("mission series is smooth and bounded") {
    const SensitivitySeries& series = mission_series();
    double max_c = 0.0, max_cdot = 0.0, max_jump = 0.0;
    for (std::size_t k = 0; k < series.size(); ++k) {
      max_c = std::max(max_c, series.c_grid()[k].norm());
      max_cdot = std::max(max_cdot, series.c_dot_grid()[k].norm());
      if (k > 0) {
        max_jump = std::max(
            max_jump, (series.c_dot_grid()[k] - series.c_dot_grid()[k - 1]).norm());
      }
    }
    CHECK(max_c > 10.0);      // the torques do react to attitude
    CHECK(max_c < 5000.0);
    CHECK(max_cdot < 10.0);
    CHECK(max_jump < 0.1);    // no discontinuities on the grid

    // Interpolation reproduces grid points.
    const SensitivitySample at_grid = series.at(1000.0);
    CHECK((at_grid.C - series.c_grid()[1000]).norm() <= 1e-12 * max_c);
  }
}

TEST_CASE("coupling matrix") {
  AdjustGains gains;
  gains.k_r1 = 0.0;
  gains.k_r2 = 0.0;
  CHECK((coupling_matrix(gains) - Mat3::Identity()).norm() == 0.0);

  gains.k_r1 = 1.6;
  gains.k_r2 = 1.6;
  Mat3 expect;
  expect << 1.0, 0.0, -1.6, 0.0, 1.0, 0.0, 1.6, 0.0, 1.0;
  CHECK((coupling_matrix(gains) - expect).norm() == 0.0);
  CHECK(coupling_matrix(gains).determinant() ==
        doctest::Approx(1.0 + 1.6 * 1.6).epsilon(1e-15));
  CHECK(coupling_matrix(gains).trace() == doctest::Approx(3.0));
}

TEST_CASE("adjustment law") {
  AdjustGains gains;  // defaults
  std::mt19937 rng(17);

  CHECK(adjustment(Vec3::Zero(), random_mat(rng, 100.0), gains).norm() == 0.0);

  SUBCASE("linear below the cap") {
    gains.sigma_cap = 1e9;
    const Mat3 c = random_mat(rng, 100.0);
    const Vec3 h1 = random_vec(rng, 1000.0);
    const Vec3 h2 = random_vec(rng, 1000.0);
    const Vec3 sum = adjustment(Vec3(h1 + h2), c, gains);
    const Vec3 parts = adjustment(h1, c, gains) + adjustment(h2, c, gains);
    CHECK((sum - parts).norm() <= 1e-12 * std::max(1e-12, parts.norm()));
  }

  SUBCASE("Lyapunov decrease identity for the uncoupled law") {
    gains.k_r1 = 0.0;
    gains.k_r2 = 0.0;
    gains.sigma_cap = 1e9;
    const double n = station_params().orbit_rate;
    const Mat3 wx = skew(Vec3(0.0, -n, 0.0));
    for (int i = 0; i < 100; ++i) {
      const Mat3 c = random_mat(rng, 200.0);
      const Vec3 dh = random_vec(rng, 5000.0);
      const Vec3 dsig = adjustment(dh, c, gains);
      // V' = dH . (-[w x] dH + C dsig); the rotation term drops by
      // antisymmetry, leaving -k_a |C^T dH|^2.
      const double vdot = dh.dot(-wx * dh + c * dsig);
      const double expect = -gains.k_a * (c.transpose() * dh).squaredNorm();
      CHECK(vdot == doctest::Approx(expect).epsilon(1e-9));
      CHECK(vdot <= 0.0);
    }
  }

  SUBCASE("componentwise cap fires and freezes the rates") {
    gains.sigma_cap = 0.01;
    Mat3 c = Mat3::Identity() * 100.0;
    bool capped = false;
    const Vec3 d = adjustment(Vec3(1e6, 0.0, 0.0), c, gains, &capped);
    CHECK(capped);
    CHECK(std::abs(d.x()) == doctest::Approx(0.01));

    const SensitivitySample sens{c, Mat3::Zero(), Mat3::Zero()};
    const AdjustmentState st =
        evaluate_adjustment(Vec3(1e6, 0.0, 0.0), sens, gains, 0.0);
    CHECK(st.capped);
    CHECK(st.delta_sigma_dot.x() == 0.0);
    CHECK(st.delta_sigma_ddot.x() == 0.0);
  }

  SUBCASE("magnitude scale on the mission sensitivity") {
    const Mat3 c = mission_series().at(0.0).C;
    const Vec3 dh(4500.0, 0.0, 0.0);
    const Vec3 d = adjustment(dh, c, AdjustGains{});
    // Small attitude shift, far from either zero or the MRP scale.
    CHECK(d.norm() > 1e-5);
    CHECK(d.norm() <= 3.0 * AdjustGains{}.sigma_cap);
  }
}

TEST_CASE("adjustment rate expansion") {
  AdjustGains gains;
  gains.sigma_cap = 1e9;
  std::mt19937 rng(23);

  SUBCASE("zero inputs give zero rates") {
    SensitivitySample sens{random_mat(rng, 50.0), random_mat(rng, 1.0),
                           random_mat(rng, 0.1)};
    const auto [d1, d2] =
        adjustment_rates(Vec3::Zero(), Vec3::Zero(), sens, gains, 1e-3);
    CHECK(d1.norm() == 0.0);
    CHECK(d2.norm() == 0.0);
  }

  SUBCASE("constant sensitivity, no coupling, no orbit rate") {
    gains.k_r1 = 0.0;
    gains.k_r2 = 0.0;
    const Mat3 c = random_mat(rng, 50.0);
    const SensitivitySample sens{c, Mat3::Zero(), Mat3::Zero()};
    const Vec3 dh = random_vec(rng, 1000.0);
    const Vec3 dsig = random_vec(rng, 0.01);
    const auto [d1, d2] = adjustment_rates(dh, dsig, sens, gains, 0.0);
    const Vec3 expect1 = -gains.k_a * (c.transpose() * c * dsig);
    CHECK((d1 - expect1).norm() <= 1e-12 * std::max(1e-12, expect1.norm()));
    const Vec3 expect2 = -gains.k_a * (c.transpose() * c * d1);
    CHECK((d2 - expect2).norm() <= 1e-12 * std::max(1e-12, expect2.norm()));
  }
}

TEST_CASE("rate expansion matches time differentiation along the error flow") {
  // Propagate the linearized momentum error under the coupled law with a
  // deliberately large gain (it magnifies the terms that distinguish the
  // two second-derivative variants), then compare the analytic rates
  // against finite differences of the sampled adjustment history.
  AdjustGains gains;
  gains.k_a = 3e-6;
  gains.sigma_cap = 1e9;
  const double n = station_params().orbit_rate;
  const SensitivitySeries& series = mission_series();

  // Sampling fine enough that the finite differences resolve the
  // (deliberately fast) error dynamics.
  const Vec3 dh0(4500.0, 0.0, 0.0);
  const auto history = propagate_linearized_error(series, gains, n, dh0, 0.25);
  REQUIRE(history.size() > 4000);

  const auto fd_check = [&](bool compat) {
    AdjustGains g = gains;
    g.b4_transpose_compat = compat;
    double worst1 = 0.0, worst2 = 0.0;
    double scale1 = 0.0, scale2 = 0.0;
    for (std::size_t k = 500; k + 500 < history.size(); k += 97) {
      const auto& prev = history[k - 1];
      const auto& cur = history[k];
      const auto& next = history[k + 1];
      const double h = next.t - cur.t;
      const Vec3 fd1 = (next.delta_sigma - prev.delta_sigma) / (2.0 * h);
      const Vec3 fd2 =
          (next.delta_sigma - 2.0 * cur.delta_sigma + prev.delta_sigma) / (h * h);
      const auto [d1, d2] = adjustment_rates(cur.delta_H_orbit, cur.delta_sigma,
                                             series.at(cur.t), g, n);
      worst1 = std::max(worst1, (d1 - fd1).norm());
      worst2 = std::max(worst2, (d2 - fd2).norm());
      scale1 = std::max(scale1, fd1.norm());
      scale2 = std::max(scale2, fd2.norm());
    }
    return std::array<double, 2>{worst1 / scale1, worst2 / scale2};
  };

  const auto derived = fd_check(false);
  CHECK(derived[0] <= 1e-3);
  CHECK(derived[1] <= 1e-3);

  // The transposed compatibility variant must be visibly worse on the
  // second derivative; the first derivative does not involve it.
  const auto compat = fd_check(true);
  CHECK(compat[1] > 10.0 * derived[1]);
  MESSAGE("second-derivative relative residual: derived=" << derived[1]
          << " transposed=" << compat[1]);
}

TEST_CASE("adjusted reference") {
  const NominalSample nom = mission_nominal().sample(1234.0);
  AdjustmentState adj;
  const AdjustedReference pass = adjusted_reference(nom, adj);
  CHECK((pass.sigma.vec() - nom.sigma.vec()).norm() == 0.0);
  CHECK((pass.sigma_dot - nom.sigma_dot).norm() == 0.0);

  adj.delta_sigma = Vec3(0.01, -0.02, 0.005);
  adj.delta_sigma_dot = Vec3(1e-5, 0.0, -1e-5);
  adj.delta_sigma_ddot = Vec3(0.0, 1e-8, 0.0);
  const AdjustedReference shifted = adjusted_reference(nom, adj);
  CHECK((shifted.sigma.vec() - nom.sigma.vec() - adj.delta_sigma).norm() <= 1e-15);
  CHECK((shifted.sigma_dot - nom.sigma_dot - adj.delta_sigma_dot).norm() <= 1e-15);
  CHECK((shifted.sigma_ddot - nom.sigma_ddot - adj.delta_sigma_ddot).norm() <= 1e-15);
}

TEST_CASE("lyapunov value") {
  CHECK(lyapunov_value(Vec3::Zero()) == 0.0);
  CHECK(lyapunov_value(Vec3(4500.0, 0.0, 0.0)) ==
        doctest::Approx(0.5 * 4500.0 * 4500.0));
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    CHECK(lyapunov_value(random_vec(rng, 100.0)) >= 0.0);
  }
}

TEST_CASE("linearized propagation: uncoupled law decreases V, coupling wins at the end") {
  const double n = station_params().orbit_rate;
  const SensitivitySeries& series = mission_series();

  std::mt19937 rng(29);
  for (int trial = 0; trial < 3; ++trial) {
    const Vec3 dh0 = random_unit(rng) * 4500.0;
    const auto ltac =
        propagate_linearized_error(series, AdjustGains{}.ltac_variant(), n, dh0, 5.0);
    for (std::size_t k = 1; k < ltac.size(); ++k) {
      CHECK(ltac[k].lyapunov <= ltac[k - 1].lyapunov * (1.0 + 1e-6));
      CHECK(ltac[k].lyapunov_rate <= 1e-12 * (1.0 + ltac[k].lyapunov));
    }

    const auto rtac = propagate_linearized_error(series, AdjustGains{}, n, dh0, 5.0);
    CHECK(rtac.back().delta_H_orbit.norm() < ltac.back().delta_H_orbit.norm());
  }
}
