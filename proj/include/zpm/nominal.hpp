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

#include <string>
#include <vector>

#include "zpm/dynamics.hpp"

namespace zpm {

/// Prescribed start and end states of a maneuver.
struct BoundaryConditions {
  Mrp sigma0;
  Mrp sigmaf;
  Vec3 omega0 = Vec3::Zero();
  Vec3 omegaf = Vec3::Zero();
  Vec3 hc0 = Vec3::Zero();
  Vec3 hcf = Vec3::Zero();
  double t0 = 0.0;
  double tf = 6000.0;

  void validate() const;
};

/// Reference values at one instant of the nominal trajectory.
struct NominalSample {
  Mrp sigma;
  Vec3 sigma_dot = Vec3::Zero();
  Vec3 sigma_ddot = Vec3::Zero();
  Vec3 omega = Vec3::Zero();
  Vec3 h_cmg = Vec3::Zero();
  Vec3 H_orbit = Vec3::Zero();
};

/// Analytic description of the reference maneuver: a per-component
/// polynomial attitude profile through the boundary states, with rates,
/// feedforward torque and CMG momentum recovered from the equations of
/// motion. The base profile is a quintic matching position and rate at
/// both ends with zero endpoint acceleration; optional interior shape
/// terms (which vanish with two derivatives at both ends) bend the path
/// without touching the boundary conditions.
class ManeuverPlan {
 public:
  /// Number of interior shape basis functions per attitude component.
  static constexpr int kShapeTerms = 3;
  using ShapeCoeffs = Eigen::Matrix<double, 3, kShapeTerms>;

  ManeuverPlan(const BoundaryConditions& bounds, const SpacecraftParams& params,
               const TorqueModel& model,
               const ShapeCoeffs& shape = ShapeCoeffs::Zero());

  Vec3 sigma(double t) const;
  Vec3 sigma_dot(double t) const;
  Vec3 sigma_ddot(double t) const;
  Vec3 omega(double t) const;
  Vec3 omega_dot(double t) const;
  /// Torque that makes the plant follow the plan exactly (inverse dynamics).
  Vec3 control(double t) const;

  const BoundaryConditions& bounds() const { return bounds_; }
  const SpacecraftParams& params() const { return params_; }
  const ShapeCoeffs& shape() const { return shape_; }

 private:
  BoundaryConditions bounds_;
  SpacecraftParams params_;
  TorqueModel model_;
  ShapeCoeffs shape_;
  // Monomial coefficients in normalized time s = (t - t0) / (tf - t0).
  Eigen::Matrix<double, 3, 9> coeffs_;
};

/// Time-sampled nominal trajectory with Hermite interpolation between
/// the uniform grid points.
class NominalTrajectory {
 public:
  NominalTrajectory() = default;
  NominalTrajectory(double t0, double step, std::vector<Vec3> sigma,
                    std::vector<Vec3> sigma_dot, std::vector<Vec3> sigma_ddot,
                    std::vector<Vec3> omega, std::vector<Vec3> h_cmg,
                    std::vector<Vec3> H_orbit);

  double t0() const { return t0_; }
  double tf() const { return t0_ + step_ * static_cast<double>(size() - 1); }
  double step() const { return step_; }
  std::size_t size() const { return sigma_.size(); }

  /// Interpolated reference at t; throws ValidationError outside [t0, tf].
  NominalSample sample(double t) const;

  const std::vector<Vec3>& sigma_grid() const { return sigma_; }
  const std::vector<Vec3>& sigma_dot_grid() const { return sigma_dot_; }
  const std::vector<Vec3>& sigma_ddot_grid() const { return sigma_ddot_; }
  const std::vector<Vec3>& omega_grid() const { return omega_; }
  const std::vector<Vec3>& hc_grid() const { return hc_; }
  const std::vector<Vec3>& Ho_grid() const { return Ho_; }

 private:
  double t0_ = 0.0;
  double step_ = 1.0;
  std::vector<Vec3> sigma_, sigma_dot_, sigma_ddot_, omega_, hc_, Ho_;
  std::vector<Vec3> hc_slope_, Ho_slope_, omega_slope_, ddot_slope_;
};

/// Pass/fail report of a trajectory against the CMG capability.
struct TrajectoryReport {
  double max_hc = 0.0;        // N m s
  double t_max_hc = 0.0;      // s
  double max_hc_rate = 0.0;   // N m
  double t_max_hc_rate = 0.0; // s
  double h_max = 0.0;
  double rate_limit = 0.0;    // rate_margin * hdot_max
  bool momentum_ok = false;
  bool rate_ok = false;
  bool pass() const { return momentum_ok && rate_ok; }
};

/// Plans the reference maneuver between the boundary states.
///
/// If the plain quintic profile already respects the CMG momentum and
/// rate limits it is returned unchanged. Otherwise the interior shape
/// terms are tuned (deterministic derivative-free descent) to pull the
/// peak CMG momentum down; large maneuvers usually need this, because
/// the momentum the environmental torque feeds into the system depends
/// strongly on the attitude path taken between the endpoints.
ManeuverPlan plan_maneuver(const BoundaryConditions& bounds,
                           const SpacecraftParams& params, const TorqueModel& model,
                           double rate_margin = 0.8);

/// Samples a plan onto a uniform grid: attitude and rates analytically,
/// CMG momentum by integrating its equation of motion from hc0. The
/// terminal CMG momentum is a consequence of the flown path, not a
/// constraint: it will generally differ from BoundaryConditions::hcf
/// (momentum-optimal planning is out of scope).
NominalTrajectory sample_plan(const ManeuverPlan& plan, double step);

/// plan_maneuver + sample_plan, with a final validation pass. Throws
/// ValidationError when even the shaped trajectory violates the momentum
/// envelope or rate_margin * hdot_max, reporting peak values and times.
NominalTrajectory generate_nominal(const BoundaryConditions& bounds,
                                   const SpacecraftParams& params,
                                   const TorqueModel& model, double step,
                                   double rate_margin = 0.8);

/// Momentum profile consistent with the given model (typically the
/// controller's, whose inertia may differ from the planning value)
/// along the trajectory's attitude history, anchored at the stored
/// terminal CMG momentum by backward integration. With the planning
/// parameters this reproduces the trajectory's own momentum profile; in
/// a known inertia-mismatch case it is the profile the guidance must
/// steer toward so the CMGs still end on their planned terminal state.
NominalTrajectory retarget_momentum(const NominalTrajectory& traj,
                                    const TorqueModel& model);

/// CSV export with header
/// t,s1,s2,s3,ds1,ds2,ds3,dds1,dds2,dds3,w1,w2,w3,hc1,hc2,hc3,Ho1,Ho2,Ho3.
void export_trajectory(const NominalTrajectory& traj, const std::string& path);

/// Parses a trajectory CSV; errors carry the offending line number.
NominalTrajectory import_trajectory(const std::string& path);

/// Peak CMG momentum / momentum rate of the trajectory against the limits.
TrajectoryReport validate_trajectory(const NominalTrajectory& traj,
                                     const SpacecraftParams& params,
                                     double rate_margin = 0.8);

}  // namespace zpm
