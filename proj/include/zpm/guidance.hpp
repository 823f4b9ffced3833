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

#include <utility>
#include <vector>

#include "zpm/nominal.hpp"

namespace zpm {

/// Gains of the trajectory adjusting controller. k_r1 = k_r2 = 0 turns
/// the redesigned controller (RTAC) into the plain Lyapunov controller
/// (LTAC). sigma_cap bounds each component of the commanded adjustment
/// so the tracker always stays in its linear regime.
struct AdjustGains {
  double k_a = 5e-8;
  double k_r1 = 1.6;
  double k_r2 = 1.6;
  double sigma_cap = 0.2;
  /// Uses the transposed final term of the second-derivative expansion
  /// instead of the re-derived one (compatibility switch, see README).
  bool b4_transpose_compat = false;

  void validate() const;
  AdjustGains ltac_variant() const {
    AdjustGains g = *this;
    g.k_r1 = 0.0;
    g.k_r2 = 0.0;
    return g;
  }
};

/// Sensitivity of the orbit-frame environmental torque to the attitude,
/// with time derivatives, at one instant of the nominal trajectory.
struct SensitivitySample {
  Mat3 C = Mat3::Zero();
  Mat3 C_dot = Mat3::Zero();
  Mat3 C_ddot = Mat3::Zero();
};

/// Sensitivity matrices tabulated on the nominal trajectory grid. The
/// series is immutable after construction and safe to share between
/// concurrently running simulations.
class SensitivitySeries {
 public:
  SensitivitySeries() = default;
  SensitivitySeries(double t0, double step, std::vector<Mat3> c);

  double t0() const { return t0_; }
  double step() const { return step_; }
  std::size_t size() const { return c_.size(); }

  /// Hermite-interpolated sensitivity at t (clamped to the grid span).
  SensitivitySample at(double t) const;

  const std::vector<Mat3>& c_grid() const { return c_; }
  const std::vector<Mat3>& c_dot_grid() const { return c_dot_; }
  const std::vector<Mat3>& c_ddot_grid() const { return c_ddot_; }

 private:
  double t0_ = 0.0;
  double step_ = 1.0;
  std::vector<Mat3> c_, c_dot_, c_ddot_;
};

/// Full state of the trajectory adjustment at one control epoch.
struct AdjustmentState {
  Vec3 delta_H_orbit = Vec3::Zero();
  Vec3 delta_sigma = Vec3::Zero();
  Vec3 delta_sigma_dot = Vec3::Zero();
  Vec3 delta_sigma_ddot = Vec3::Zero();
  bool capped = false;
};

/// Adjusted reference handed to the tracking controller.
struct AdjustedReference {
  Mrp sigma;
  Vec3 sigma_dot = Vec3::Zero();
  Vec3 sigma_ddot = Vec3::Zero();
};

/// Total momentum error in the orbit frame,
/// dH = R_o^b(sigma)^T (h_c + J omega) - H_ref(t), where the reference
/// is the nominal tuple's momentum evaluated with the same (controller)
/// inertia -- identical to the stored nominal H_orbit unless the actual
/// inertia is known to differ from the planning value.
Vec3 momentum_error(const StationState& state, const NominalSample& nominal_at_t,
                    const SpacecraftParams& params);

/// Sensitivity of the orbit-frame gravity gradient plus drag torque to
/// the attitude, by central finite differences with step fd_step on each
/// sigma component. The disturbance term never enters: it does not
/// depend on the attitude.
Mat3 sensitivity_matrix(const Mrp& sigma_nominal, double t, const TorqueModel& model,
                        double fd_step = 1e-6);

/// Sensitivity matrices over the whole nominal grid; time derivatives by
/// central differences in time (second order one-sided at the ends).
SensitivitySeries sensitivity_series(const NominalTrajectory& traj,
                                     const TorqueModel& model, double fd_step = 1e-6);

/// State coupling matrix R = [[1, 0, -k_r1], [0, 1, 0], [k_r2, 0, 1]].
Mat3 coupling_matrix(const AdjustGains& gains);

/// Attitude adjustment delta_sigma = -k_a C^T R dH, componentwise capped
/// at +-gains.sigma_cap. Sets *capped when the cap fired.
Vec3 adjustment(const Vec3& delta_H_orbit, const Mat3& C, const AdjustGains& gains,
                bool* capped = nullptr);

/// First and second time derivatives of the adjustment law along the
/// momentum error dynamics (uncapped; callers freeze capped components).
/// The first derivative feeds back into the second.
std::pair<Vec3, Vec3> adjustment_rates(const Vec3& delta_H_orbit,
                                       const Vec3& delta_sigma,
                                       const SensitivitySample& sens,
                                       const AdjustGains& gains, double orbit_rate);

/// Convenience wrapper producing the full adjustment state at one epoch,
/// with rate components zeroed wherever the cap froze delta_sigma.
AdjustmentState evaluate_adjustment(const Vec3& delta_H_orbit,
                                    const SensitivitySample& sens,
                                    const AdjustGains& gains, double orbit_rate);

/// Nominal reference shifted by the adjustment.
AdjustedReference adjusted_reference(const NominalSample& nominal_at_t,
                                     const AdjustmentState& adj);

/// V = 1/2 dH . dH.
double lyapunov_value(const Vec3& delta_H_orbit);

/// One sample of the closed adjustment loop propagated on the linearized
/// momentum error dynamics (no plant, no tracker): dH' = -[w_o x] dH + C
/// delta_sigma. Used for controller-level analysis and verification.
struct LinearPropagationPoint {
  double t = 0.0;
  Vec3 delta_H_orbit = Vec3::Zero();
  Vec3 delta_sigma = Vec3::Zero();
  double lyapunov = 0.0;
  double lyapunov_rate = 0.0;
};

/// Propagates the linearized momentum error under the adjustment law
/// from dH0 across the sensitivity series span (fixed-step RK4, sampled
/// every sample_step seconds).
std::vector<LinearPropagationPoint> propagate_linearized_error(
    const SensitivitySeries& series, const AdjustGains& gains, double orbit_rate,
    const Vec3& dH0, double sample_step = 1.0);

}  // namespace zpm
