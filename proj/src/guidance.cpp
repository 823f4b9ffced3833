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

#include "zpm/guidance.hpp"

#include <algorithm>
#include <cmath>

#include "zpm/detail/hermite.hpp"

namespace zpm {

void AdjustGains::validate() const {
  if (!(k_a > 0.0)) {
    throw ValidationError("AdjustGains: k_a must be positive");
  }
  if (k_r1 < 0.0 || k_r2 < 0.0) {
    throw ValidationError("AdjustGains: k_r1, k_r2 must be nonnegative");
  }
  if (!(sigma_cap > 0.0)) {
    throw ValidationError("AdjustGains: sigma_cap must be positive");
  }
}

SensitivitySeries::SensitivitySeries(double t0, double step, std::vector<Mat3> c)
    : t0_(t0), step_(step), c_(std::move(c)) {
  if (!(step_ > 0.0) || c_.size() < 4) {
    throw ValidationError("SensitivitySeries: needs a positive step and at least 4 samples");
  }
  const std::size_t n = c_.size();
  c_dot_.resize(n);
  c_ddot_.resize(n);
  const double h = step_;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    c_dot_[k] = (c_[k + 1] - c_[k - 1]) / (2.0 * h);
    c_ddot_[k] = (c_[k + 1] - 2.0 * c_[k] + c_[k - 1]) / (h * h);
  }
  // Second order one-sided stencils at the ends.
  c_dot_[0] = (-3.0 * c_[0] + 4.0 * c_[1] - c_[2]) / (2.0 * h);
  c_dot_[n - 1] = (3.0 * c_[n - 1] - 4.0 * c_[n - 2] + c_[n - 3]) / (2.0 * h);
  c_ddot_[0] = (2.0 * c_[0] - 5.0 * c_[1] + 4.0 * c_[2] - c_[3]) / (h * h);
  c_ddot_[n - 1] =
      (2.0 * c_[n - 1] - 5.0 * c_[n - 2] + 4.0 * c_[n - 3] - c_[n - 4]) / (h * h);
}

SensitivitySample SensitivitySeries::at(double t) const {
  const std::size_t k = detail::cell_index(t, t0_, step_, size());
  double s = (t - (t0_ + step_ * static_cast<double>(k))) / step_;
  s = std::clamp(s, 0.0, 1.0);

  SensitivitySample out;
  out.C = detail::cubic_hermite(c_[k], c_[k + 1], Mat3(step_ * c_dot_[k]),
                                Mat3(step_ * c_dot_[k + 1]), s);
  out.C_dot = detail::cubic_hermite(c_dot_[k], c_dot_[k + 1], Mat3(step_ * c_ddot_[k]),
                                    Mat3(step_ * c_ddot_[k + 1]), s);
  // Linear blend is plenty for the second derivative.
  out.C_ddot = (1.0 - s) * c_ddot_[k] + s * c_ddot_[k + 1];
  return out;
}

Vec3 momentum_error(const StationState& state, const NominalSample& nominal_at_t,
                    const SpacecraftParams& params) {
  // The reference profile is rebuilt from the nominal state tuple with
  // the controller's inertia. When that inertia matches the planning
  // value this is exactly the trajectory's stored H_orbit; when the
  // actual inertia is known to differ, rebuilding keeps "zero error"
  // equivalent to "CMG momentum on its planned profile", which is the
  // quantity the maneuver must deliver.
  const Vec3 h_total = state.h_cmg + params.inertia * state.omega;
  const Vec3 reference =
      rotation_o_to_b(nominal_at_t.sigma).transpose() *
      (nominal_at_t.h_cmg + params.inertia * nominal_at_t.omega);
  return rotation_o_to_b(state.sigma).transpose() * h_total - reference;
}

Mat3 sensitivity_matrix(const Mrp& sigma_nominal, double t, const TorqueModel& model,
                        double fd_step) {
  if (!(fd_step > 0.0)) {
    throw ValidationError("sensitivity_matrix: fd_step must be positive");
  }
  (void)t;  // both torques are attitude-only in the orbit frame
  const auto torque_orbit = [&](const Vec3& s) -> Vec3 {
    const Mrp sigma(s);
    Vec3 tau = Vec3::Zero();
    if (model.gravity_gradient) {
      tau += gravity_gradient_torque(sigma, model.params);
    }
    if (model.aerodynamic) {
      tau += aerodynamic_torque(sigma, model.aero);
    }
    return rotation_o_to_b(sigma).transpose() * tau;
  };

  Mat3 c = Mat3::Zero();
  const Vec3 s0 = sigma_nominal.vec();
  for (int j = 0; j < 3; ++j) {
    Vec3 plus = s0;
    Vec3 minus = s0;
    plus[j] += fd_step;
    minus[j] -= fd_step;
    c.col(j) = (torque_orbit(plus) - torque_orbit(minus)) / (2.0 * fd_step);
  }
  return c;
}

SensitivitySeries sensitivity_series(const NominalTrajectory& traj,
                                     const TorqueModel& model, double fd_step) {
  std::vector<Mat3> c(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.t0() + traj.step() * static_cast<double>(k);
    c[k] = sensitivity_matrix(Mrp(traj.sigma_grid()[k]), t, model, fd_step);
  }
  return SensitivitySeries(traj.t0(), traj.step(), std::move(c));
}

Mat3 coupling_matrix(const AdjustGains& gains) {
  Mat3 r;
  r << 1.0, 0.0, -gains.k_r1,
       0.0, 1.0, 0.0,
       gains.k_r2, 0.0, 1.0;
  return r;
}

Vec3 adjustment(const Vec3& delta_H_orbit, const Mat3& C, const AdjustGains& gains,
                bool* capped) {
  Vec3 d = -gains.k_a * (C.transpose() * (coupling_matrix(gains) * delta_H_orbit));
  bool hit = false;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) > gains.sigma_cap) {
      d[i] = std::copysign(gains.sigma_cap, d[i]);
      hit = true;
    }
  }
  if (capped != nullptr) {
    *capped = hit;
  }
  return d;
}

std::pair<Vec3, Vec3> adjustment_rates(const Vec3& delta_H_orbit,
                                       const Vec3& delta_sigma,
                                       const SensitivitySample& sens,
                                       const AdjustGains& gains, double orbit_rate) {
  const Mat3 r = coupling_matrix(gains);
  const Mat3 wx = skew(Vec3(0.0, -orbit_rate, 0.0));
  const Mat3& c = sens.C;
  const Mat3& cd = sens.C_dot;
  const Mat3& cdd = sens.C_ddot;

  const Mat3 b1 = cd.transpose() * r - c.transpose() * r * wx;
  const Mat3 b2 = c.transpose() * r * c;
  const Mat3 b3 = cdd.transpose() * r - 2.0 * cd.transpose() * r * wx +
                  c.transpose() * r * wx * wx;
  // Differentiating the first-derivative expansion once more yields
  // C^T R dC/dt as the final term; the transposed variant is kept as a
  // compatibility switch.
  const Mat3 b4_tail = gains.b4_transpose_compat ? Mat3(c.transpose() * r * cd.transpose())
                                                 : Mat3(c.transpose() * r * cd);
  const Mat3 b4 = 2.0 * cd.transpose() * r * c - c.transpose() * r * wx * c + b4_tail;

  const Vec3 d_dot = -gains.k_a * (b1 * delta_H_orbit + b2 * delta_sigma);
  const Vec3 d_ddot =
      -gains.k_a * (b3 * delta_H_orbit + b4 * delta_sigma + b2 * d_dot);
  return {d_dot, d_ddot};
}

AdjustmentState evaluate_adjustment(const Vec3& delta_H_orbit,
                                    const SensitivitySample& sens,
                                    const AdjustGains& gains, double orbit_rate) {
  AdjustmentState adj;
  adj.delta_H_orbit = delta_H_orbit;

  const Vec3 raw = -gains.k_a *
                   (sens.C.transpose() * (coupling_matrix(gains) * delta_H_orbit));
  adj.delta_sigma = raw;
  bool capped[3] = {false, false, false};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(raw[i]) > gains.sigma_cap) {
      adj.delta_sigma[i] = std::copysign(gains.sigma_cap, raw[i]);
      capped[i] = true;
      adj.capped = true;
    }
  }

  auto [d_dot, d_ddot] =
      adjustment_rates(delta_H_orbit, adj.delta_sigma, sens, gains, orbit_rate);
  // A saturated component holds its value, so its reference rates vanish.
  for (int i = 0; i < 3; ++i) {
    if (capped[i]) {
      d_dot[i] = 0.0;
      d_ddot[i] = 0.0;
    }
  }
  adj.delta_sigma_dot = d_dot;
  adj.delta_sigma_ddot = d_ddot;
  return adj;
}

AdjustedReference adjusted_reference(const NominalSample& nominal_at_t,
                                     const AdjustmentState& adj) {
  AdjustedReference ref;
  ref.sigma = Mrp(nominal_at_t.sigma.vec() + adj.delta_sigma);
  ref.sigma_dot = nominal_at_t.sigma_dot + adj.delta_sigma_dot;
  ref.sigma_ddot = nominal_at_t.sigma_ddot + adj.delta_sigma_ddot;
  return ref;
}

double lyapunov_value(const Vec3& delta_H_orbit) {
  return 0.5 * delta_H_orbit.squaredNorm();
}

std::vector<LinearPropagationPoint> propagate_linearized_error(
    const SensitivitySeries& series, const AdjustGains& gains, double orbit_rate,
    const Vec3& dH0, double sample_step) {
  gains.validate();
  if (!(sample_step > 0.0)) {
    throw ValidationError("propagate_linearized_error: sample_step must be positive");
  }
  const double t0 = series.t0();
  const double tf = t0 + series.step() * static_cast<double>(series.size() - 1);
  const Mat3 wx = skew(Vec3(0.0, -orbit_rate, 0.0));

  const auto rhs = [&](double t, const Vec3& dh) -> Vec3 {
    const Mat3 c = series.at(t).C;
    return -wx * dh + c * adjustment(dh, c, gains);
  };

  std::vector<LinearPropagationPoint> out;
  Vec3 dh = dH0;
  double t = t0;
  while (true) {
    LinearPropagationPoint pt;
    pt.t = t;
    pt.delta_H_orbit = dh;
    const Mat3 c = series.at(t).C;
    pt.delta_sigma = adjustment(dh, c, gains);
    pt.lyapunov = lyapunov_value(dh);
    pt.lyapunov_rate = dh.dot(-wx * dh + c * pt.delta_sigma);
    out.push_back(pt);
    if (t >= tf - 1e-9 * sample_step) break;

    const double h = std::min(sample_step, tf - t);
    const Vec3 k1 = rhs(t, dh);
    const Vec3 k2 = rhs(t + 0.5 * h, dh + 0.5 * h * k1);
    const Vec3 k3 = rhs(t + 0.5 * h, dh + 0.5 * h * k2);
    const Vec3 k4 = rhs(t + h, dh + h * k3);
    dh += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return out;
}

}  // namespace zpm
