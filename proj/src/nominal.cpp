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

#include "zpm/nominal.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "zpm/detail/hermite.hpp"

namespace zpm {

namespace {

constexpr const char* kTrajectoryHeader =
    "t,s1,s2,s3,ds1,ds2,ds3,dds1,dds2,dds3,w1,w2,w3,hc1,hc2,hc3,Ho1,Ho2,Ho3";

// Interior shape basis in normalized time: s^3 (1-s)^3 times {64,
// 64(2s-1), 64(2s-1)^2}, expanded to monomials. Each basis function and
// its first two derivatives vanish at s = 0 and s = 1, so shape terms
// never disturb the boundary conditions.
constexpr std::array<std::array<double, 9>, ManeuverPlan::kShapeTerms> kShapeBasis{{
    {0, 0, 0, 64, -192, 192, -64, 0, 0},
    {0, 0, 0, -64, 320, -576, 448, -128, 0},
    {0, 0, 0, 64, -448, 1216, -1600, 1024, -256},
}};

// d/dt of the closed-form kinematic matrix inverse.
Mat3 kinematic_matrix_inverse_dot(const Mrp& sigma, const Vec3& sigma_dot) {
  const double s2 = sigma.squared_norm();
  const double one_p = 1.0 + s2;
  const double sdot = sigma.vec().dot(sigma_dot);
  const Mat3 t_t = kinematic_matrix(sigma).transpose();
  const Mat3 tdot_t = kinematic_matrix_dot(sigma, sigma_dot).transpose();
  return -64.0 * sdot / (one_p * one_p * one_p) * t_t +
         16.0 / (one_p * one_p) * tdot_t;
}

// Peak |h_c| / |hdot_c| of a plan, evaluated with RK4 on a coarse grid.
struct PlanCost {
  double peak_hc = 0.0;
  double peak_rate = 0.0;
  double max_sigma = 0.0;
};

PlanCost evaluate_plan(const ManeuverPlan& plan, int n_steps) {
  const auto& b = plan.bounds();
  const double step = (b.tf - b.t0) / n_steps;
  PlanCost cost;
  Vec3 hc = b.hc0;
  cost.peak_hc = hc.norm();
  const auto rate = [&](double t, const Vec3& h) -> Vec3 {
    return plan.control(t) - plan.omega(t).cross(h);
  };
  for (int k = 0; k < n_steps; ++k) {
    const double t = b.t0 + step * k;
    const Vec3 k1 = rate(t, hc);
    const Vec3 k2 = rate(t + 0.5 * step, hc + 0.5 * step * k1);
    const Vec3 k3 = rate(t + 0.5 * step, hc + 0.5 * step * k2);
    const Vec3 k4 = rate(t + step, hc + step * k3);
    hc += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    cost.peak_hc = std::max(cost.peak_hc, hc.norm());
    cost.peak_rate = std::max(cost.peak_rate, k1.norm());
    cost.max_sigma = std::max(cost.max_sigma, plan.sigma(t + step).norm());
  }
  return cost;
}

// Derivative-free Nelder-Mead minimization; deterministic for fixed
// inputs, which keeps trajectory generation reproducible.
Eigen::VectorXd nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& x0, double scale, int max_evals) {
  const int n = static_cast<int>(x0.size());
  std::vector<Eigen::VectorXd> xs(n + 1, x0);
  std::vector<double> fs(n + 1);
  for (int i = 0; i < n; ++i) xs[i + 1][i] += scale;
  int evals = 0;
  for (int i = 0; i <= n; ++i) fs[i] = (++evals, f(xs[i]));

  std::vector<int> order(n + 1);
  while (evals < max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fs[a] < fs[b]; });
    const int best = order[0];
    const int worst = order[n];
    const int second_worst = order[n - 1];
    if (fs[worst] - fs[best] < 1e-6 * (1.0 + std::abs(fs[best]))) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += xs[i];
    }
    centroid /= n;

    const Eigen::VectorXd reflected = centroid + (centroid - xs[worst]);
    const double f_r = (++evals, f(reflected));
    if (f_r < fs[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - xs[worst]);
      const double f_e = (++evals, f(expanded));
      if (f_e < f_r) {
        xs[worst] = expanded;
        fs[worst] = f_e;
      } else {
        xs[worst] = reflected;
        fs[worst] = f_r;
      }
    } else if (f_r < fs[second_worst]) {
      xs[worst] = reflected;
      fs[worst] = f_r;
    } else {
      const Eigen::VectorXd contracted = centroid + 0.5 * (xs[worst] - centroid);
      const double f_c = (++evals, f(contracted));
      if (f_c < fs[worst]) {
        xs[worst] = contracted;
        fs[worst] = f_c;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          xs[i] = xs[best] + 0.5 * (xs[i] - xs[best]);
          fs[i] = (++evals, f(xs[i]));
        }
      }
    }
  }
  const auto it = std::min_element(fs.begin(), fs.end());
  return xs[static_cast<std::size_t>(it - fs.begin())];
}

}  // namespace

void BoundaryConditions::validate() const {
  if (!(tf > t0)) {
    throw ValidationError("BoundaryConditions: tf must exceed t0");
  }
  for (const Vec3* v : {&omega0, &omegaf, &hc0, &hcf}) {
    if (!v->allFinite()) {
      throw ValidationError("BoundaryConditions: non-finite entries");
    }
  }
}

ManeuverPlan::ManeuverPlan(const BoundaryConditions& bounds,
                           const SpacecraftParams& params, const TorqueModel& model,
                           const ShapeCoeffs& shape)
    : bounds_(bounds), params_(params), model_(model), shape_(shape) {
  bounds.validate();
  params.validate();
  const double span = bounds.tf - bounds.t0;

  // Endpoint attitude rates follow from the boundary body rates.
  const Vec3 sdot0 = kinematic_matrix(bounds.sigma0) *
                     (bounds.omega0 - orbit_rate_body(bounds.sigma0, params.orbit_rate));
  const Vec3 sdotf = kinematic_matrix(bounds.sigmaf) *
                     (bounds.omegaf - orbit_rate_body(bounds.sigmaf, params.orbit_rate));

  // Quintic in normalized time with zero endpoint acceleration, plus the
  // interior shape terms.
  coeffs_.setZero();
  for (int i = 0; i < 3; ++i) {
    const double a0 = bounds.sigma0[i];
    const double a1 = bounds.sigmaf[i];
    const double v0 = sdot0[i] * span;
    const double v1 = sdotf[i] * span;
    const double d = a1 - a0;
    coeffs_(i, 0) = a0;
    coeffs_(i, 1) = v0;
    coeffs_(i, 3) = 10.0 * d - 6.0 * v0 - 4.0 * v1;
    coeffs_(i, 4) = -15.0 * d + 8.0 * v0 + 7.0 * v1;
    coeffs_(i, 5) = 6.0 * d - 3.0 * v0 - 3.0 * v1;
    for (int m = 0; m < kShapeTerms; ++m) {
      for (int p = 0; p < 9; ++p) {
        coeffs_(i, p) += shape(i, m) * kShapeBasis[m][p];
      }
    }
  }
}

Vec3 ManeuverPlan::sigma(double t) const {
  const double s = (t - bounds_.t0) / (bounds_.tf - bounds_.t0);
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    double acc = 0.0;
    for (int p = 8; p >= 0; --p) acc = acc * s + coeffs_(i, p);
    out[i] = acc;
  }
  return out;
}

Vec3 ManeuverPlan::sigma_dot(double t) const {
  const double span = bounds_.tf - bounds_.t0;
  const double s = (t - bounds_.t0) / span;
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    double acc = 0.0;
    for (int p = 8; p >= 1; --p) acc = acc * s + static_cast<double>(p) * coeffs_(i, p);
    out[i] = acc / span;
  }
  return out;
}

Vec3 ManeuverPlan::sigma_ddot(double t) const {
  const double span = bounds_.tf - bounds_.t0;
  const double s = (t - bounds_.t0) / span;
  Vec3 out;
  for (int i = 0; i < 3; ++i) {
    double acc = 0.0;
    for (int p = 8; p >= 2; --p) {
      acc = acc * s + static_cast<double>(p * (p - 1)) * coeffs_(i, p);
    }
    out[i] = acc / (span * span);
  }
  return out;
}

Vec3 ManeuverPlan::omega(double t) const {
  const Mrp sig(sigma(t));
  return kinematic_matrix_inverse(sig) * sigma_dot(t) +
         orbit_rate_body(sig, params_.orbit_rate);
}

Vec3 ManeuverPlan::omega_dot(double t) const {
  const Mrp sig(sigma(t));
  const Vec3 sdot = sigma_dot(t);
  const Vec3 sddot = sigma_ddot(t);
  const Vec3 omega_o = orbit_rate_body(sig, params_.orbit_rate);
  const Vec3 omega_b = kinematic_matrix_inverse(sig) * sdot + omega_o;
  const Vec3 omega_rel = omega_b - omega_o;
  // omega = T^-1 sigma_dot + omega_o, differentiated in the body frame;
  // d/dt omega_o = -omega_rel x omega_o by the transport theorem.
  return kinematic_matrix_inverse_dot(sig, sdot) * sdot +
         kinematic_matrix_inverse(sig) * sddot - omega_rel.cross(omega_o);
}

Vec3 ManeuverPlan::control(double t) const {
  const Mrp sig(sigma(t));
  const Vec3 w = omega(t);
  const Vec3 tau_e = environmental_torque_body(sig, t, model_);
  return tau_e - w.cross(params_.inertia * w) - params_.inertia * omega_dot(t);
}

ManeuverPlan plan_maneuver(const BoundaryConditions& bounds,
                           const SpacecraftParams& params, const TorqueModel& model,
                           double rate_margin) {
  const ManeuverPlan base(bounds, params, model);
  const double rate_limit = rate_margin * params.hdot_max;

  const int coarse_steps = 300;
  const PlanCost base_cost = evaluate_plan(base, coarse_steps);
  if (base_cost.peak_hc <= 0.98 * params.h_max && base_cost.peak_rate <= 0.98 * rate_limit) {
    return base;
  }

  // The plain quintic overdraws the CMGs; bend the interior of the path
  // to reduce the momentum the environmental torque pumps into the
  // system. The cost rewards a low momentum peak and fences the rate
  // limit and the MRP range.
  const auto cost = [&](const Eigen::VectorXd& x) {
    ManeuverPlan::ShapeCoeffs shape;
    for (int i = 0; i < 3; ++i) {
      for (int m = 0; m < ManeuverPlan::kShapeTerms; ++m) {
        shape(i, m) = x[i * ManeuverPlan::kShapeTerms + m];
      }
    }
    const ManeuverPlan candidate(bounds, params, model, shape);
    const PlanCost c = evaluate_plan(candidate, coarse_steps);
    double f = c.peak_hc;
    if (c.peak_rate > 0.9 * rate_limit) f += 1e3 * (c.peak_rate - 0.9 * rate_limit);
    if (c.max_sigma > 2.5) f += 1e7 * (c.max_sigma - 2.5);
    return f;
  };

  Eigen::VectorXd best = Eigen::VectorXd::Zero(3 * ManeuverPlan::kShapeTerms);
  best = nelder_mead(cost, best, 0.05, 900);
  best = nelder_mead(cost, best, 0.01, 600);

  ManeuverPlan::ShapeCoeffs shape;
  for (int i = 0; i < 3; ++i) {
    for (int m = 0; m < ManeuverPlan::kShapeTerms; ++m) {
      shape(i, m) = best[i * ManeuverPlan::kShapeTerms + m];
    }
  }
  return ManeuverPlan(bounds, params, model, shape);
}

NominalTrajectory sample_plan(const ManeuverPlan& plan, double step) {
  const BoundaryConditions& bounds = plan.bounds();
  if (!(step > 0.0)) {
    throw ValidationError("sample_plan: step must be positive");
  }
  const double span = bounds.tf - bounds.t0;
  const auto n_steps = static_cast<std::size_t>(std::llround(span / step));
  if (n_steps < 1 || std::abs(span - static_cast<double>(n_steps) * step) > 1e-9 * span) {
    throw ValidationError("sample_plan: step must divide tf - t0");
  }

  const std::size_t n = n_steps + 1;
  std::vector<Vec3> sig(n), sdot(n), sddot(n), omega(n), hc(n), Ho(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = bounds.t0 + step * static_cast<double>(k);
    sig[k] = plan.sigma(t);
    sdot[k] = plan.sigma_dot(t);
    sddot[k] = plan.sigma_ddot(t);
    omega[k] = plan.omega(t);
  }
  // Endpoints are exact by construction; pin them to silence roundoff.
  sig.front() = bounds.sigma0.vec();
  sig.back() = bounds.sigmaf.vec();
  omega.front() = bounds.omega0;
  omega.back() = bounds.omegaf;

  // CMG momentum from its equation of motion under the feedforward
  // torque, classic RK4 on the grid.
  hc[0] = bounds.hc0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double t = bounds.t0 + step * static_cast<double>(k);
    const auto rate = [&](double ti, const Vec3& h) -> Vec3 {
      return plan.control(ti) - plan.omega(ti).cross(h);
    };
    const Vec3 k1 = rate(t, hc[k]);
    const Vec3 k2 = rate(t + 0.5 * step, hc[k] + 0.5 * step * k1);
    const Vec3 k3 = rate(t + 0.5 * step, hc[k] + 0.5 * step * k2);
    const Vec3 k4 = rate(t + step, hc[k] + step * k3);
    hc[k + 1] = hc[k] + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  const Mat3& inertia = plan.params().inertia;
  for (std::size_t k = 0; k < n; ++k) {
    Ho[k] = rotation_o_to_b(Mrp(sig[k])).transpose() * (hc[k] + inertia * omega[k]);
  }
  return NominalTrajectory(bounds.t0, step, std::move(sig), std::move(sdot),
                           std::move(sddot), std::move(omega), std::move(hc),
                           std::move(Ho));
}

NominalTrajectory generate_nominal(const BoundaryConditions& bounds,
                                   const SpacecraftParams& params,
                                   const TorqueModel& model, double step,
                                   double rate_margin) {
  const ManeuverPlan plan = plan_maneuver(bounds, params, model, rate_margin);
  NominalTrajectory traj = sample_plan(plan, step);

  const TrajectoryReport report = validate_trajectory(traj, params, rate_margin);
  if (!report.pass()) {
    std::ostringstream msg;
    msg << "generate_nominal: trajectory violates CMG limits;"
        << " max |h_c| = " << report.max_hc << " N m s at t = " << report.t_max_hc
        << " s (limit " << report.h_max << "), max |hdot_c| = " << report.max_hc_rate
        << " N m at t = " << report.t_max_hc_rate << " s (limit " << report.rate_limit
        << ")";
    throw ValidationError(msg.str());
  }
  return traj;
}

NominalTrajectory::NominalTrajectory(double t0, double step, std::vector<Vec3> sigma,
                                     std::vector<Vec3> sigma_dot,
                                     std::vector<Vec3> sigma_ddot,
                                     std::vector<Vec3> omega, std::vector<Vec3> h_cmg,
                                     std::vector<Vec3> H_orbit)
    : t0_(t0),
      step_(step),
      sigma_(std::move(sigma)),
      sigma_dot_(std::move(sigma_dot)),
      sigma_ddot_(std::move(sigma_ddot)),
      omega_(std::move(omega)),
      hc_(std::move(h_cmg)),
      Ho_(std::move(H_orbit)) {
  if (!(step_ > 0.0)) {
    throw ValidationError("NominalTrajectory: step must be positive");
  }
  const std::size_t n = sigma_.size();
  if (n < 2 || sigma_dot_.size() != n || sigma_ddot_.size() != n ||
      omega_.size() != n || hc_.size() != n || Ho_.size() != n) {
    throw ValidationError("NominalTrajectory: inconsistent grid sizes");
  }
  hc_slope_ = detail::grid_slopes(hc_);
  Ho_slope_ = detail::grid_slopes(Ho_);
  omega_slope_ = detail::grid_slopes(omega_);
  ddot_slope_ = detail::grid_slopes(sigma_ddot_);
}

NominalSample NominalTrajectory::sample(double t) const {
  const double t_end = tf();
  const double slack = 1e-9 * step_;
  if (t < t0_ - slack || t > t_end + slack) {
    throw ValidationError("NominalTrajectory::sample: t outside [t0, tf]");
  }
  const std::size_t k = detail::cell_index(t, t0_, step_, size());
  const double s = (t - (t0_ + step_ * static_cast<double>(k))) / step_;

  NominalSample out;
  // sigma uses its stored derivative as the Hermite slope, sigma_dot the
  // stored second derivative; the remaining fields use grid slopes.
  out.sigma = Mrp(detail::cubic_hermite(sigma_[k], sigma_[k + 1],
                                        Vec3(step_ * sigma_dot_[k]),
                                        Vec3(step_ * sigma_dot_[k + 1]), s));
  out.sigma_dot = detail::cubic_hermite(sigma_dot_[k], sigma_dot_[k + 1],
                                        Vec3(step_ * sigma_ddot_[k]),
                                        Vec3(step_ * sigma_ddot_[k + 1]), s);
  out.sigma_ddot = detail::cubic_hermite(sigma_ddot_[k], sigma_ddot_[k + 1],
                                         ddot_slope_[k], ddot_slope_[k + 1], s);
  out.omega = detail::cubic_hermite(omega_[k], omega_[k + 1], omega_slope_[k],
                                    omega_slope_[k + 1], s);
  out.h_cmg = detail::cubic_hermite(hc_[k], hc_[k + 1], hc_slope_[k], hc_slope_[k + 1], s);
  out.H_orbit = detail::cubic_hermite(Ho_[k], Ho_[k + 1], Ho_slope_[k], Ho_slope_[k + 1], s);
  return out;
}

NominalTrajectory retarget_momentum(const NominalTrajectory& traj,
                                    const TorqueModel& model) {
  const SpacecraftParams& params = model.params;
  const Mat3& inertia = params.inertia;
  const std::size_t n = traj.size();
  const double step = traj.step();

  // Feedforward torque along the stored attitude history under the
  // given model (inverse dynamics, same construction as the planner).
  const auto control_at = [&](double t) -> Vec3 {
    const NominalSample s = traj.sample(t);
    const Vec3 omega_o = orbit_rate_body(s.sigma, params.orbit_rate);
    const Vec3 omega = kinematic_matrix_inverse(s.sigma) * s.sigma_dot + omega_o;
    const Vec3 omega_rel = omega - omega_o;
    const Vec3 omega_dot =
        kinematic_matrix_inverse_dot(s.sigma, s.sigma_dot) * s.sigma_dot +
        kinematic_matrix_inverse(s.sigma) * s.sigma_ddot - omega_rel.cross(omega_o);
    return environmental_torque_body(s.sigma, t, model) -
           omega.cross(inertia * omega) - inertia * omega_dot;
  };
  const auto omega_at = [&](double t) -> Vec3 {
    const NominalSample s = traj.sample(t);
    return kinematic_matrix_inverse(s.sigma) * s.sigma_dot +
           orbit_rate_body(s.sigma, params.orbit_rate);
  };

  // Backward march from the planned terminal CMG momentum.
  std::vector<Vec3> hc(n);
  hc[n - 1] = traj.hc_grid().back();
  const auto rate = [&](double t, const Vec3& h) -> Vec3 {
    return control_at(t) - omega_at(t).cross(h);
  };
  for (std::size_t k = n - 1; k > 0; --k) {
    const double t = traj.t0() + step * static_cast<double>(k);
    const double h = -step;
    const Vec3 k1 = rate(t, hc[k]);
    const Vec3 k2 = rate(t + 0.5 * h, hc[k] + 0.5 * h * k1);
    const Vec3 k3 = rate(t + 0.5 * h, hc[k] + 0.5 * h * k2);
    const Vec3 k4 = rate(t + h, hc[k] + h * k3);
    hc[k - 1] = hc[k] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  std::vector<Vec3> Ho(n);
  for (std::size_t k = 0; k < n; ++k) {
    Ho[k] = rotation_o_to_b(Mrp(traj.sigma_grid()[k])).transpose() *
            (hc[k] + inertia * traj.omega_grid()[k]);
  }
  return NominalTrajectory(traj.t0(), step, traj.sigma_grid(), traj.sigma_dot_grid(),
                           traj.sigma_ddot_grid(), traj.omega_grid(), std::move(hc),
                           std::move(Ho));
}

void export_trajectory(const NominalTrajectory& traj, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("export_trajectory: cannot open " + path + " for writing");
  }
  out << kTrajectoryHeader << "\n";
  char line[1024];
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.t0() + traj.step() * static_cast<double>(k);
    const Vec3& s = traj.sigma_grid()[k];
    const Vec3& ds = traj.sigma_dot_grid()[k];
    const Vec3& dds = traj.sigma_ddot_grid()[k];
    const Vec3& w = traj.omega_grid()[k];
    const Vec3& hc = traj.hc_grid()[k];
    const Vec3& Ho = traj.Ho_grid()[k];
    std::snprintf(line, sizeof(line),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  t, s.x(), s.y(), s.z(), ds.x(), ds.y(), ds.z(), dds.x(), dds.y(),
                  dds.z(), w.x(), w.y(), w.z(), hc.x(), hc.y(), hc.z(), Ho.x(),
                  Ho.y(), Ho.z());
    out << line;
  }
  if (!out) {
    throw IoError("export_trajectory: write to " + path + " failed");
  }
}

NominalTrajectory import_trajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("import_trajectory: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError(path + ":1: empty trajectory file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader) {
    throw ValidationError(path + ":1: bad header, expected '" +
                          std::string(kTrajectoryHeader) + "'");
  }

  std::vector<double> ts;
  std::vector<Vec3> sig, sdot, sddot, omega, hc, Ho;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 19> v{};
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= v.size()) {
        throw ValidationError(path + ":" + std::to_string(lineno) +
                              ": too many columns");
      }
      try {
        std::size_t used = 0;
        v[col] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ValidationError(path + ":" + std::to_string(lineno) + ": column " +
                              std::to_string(col + 1) + ": not a number: '" + cell + "'");
      }
      ++col;
    }
    if (col != v.size()) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": expected 19 columns, got " + std::to_string(col));
    }
    ts.push_back(v[0]);
    sig.emplace_back(v[1], v[2], v[3]);
    sdot.emplace_back(v[4], v[5], v[6]);
    sddot.emplace_back(v[7], v[8], v[9]);
    omega.emplace_back(v[10], v[11], v[12]);
    hc.emplace_back(v[13], v[14], v[15]);
    Ho.emplace_back(v[16], v[17], v[18]);
  }
  if (ts.size() < 2) {
    throw ValidationError(path + ": trajectory needs at least two samples");
  }
  const double step = ts[1] - ts[0];
  if (!(step > 0.0)) {
    throw ValidationError(path + ":3: time column must be strictly increasing");
  }
  for (std::size_t k = 1; k < ts.size(); ++k) {
    const double dt = ts[k] - ts[k - 1];
    if (!(dt > 0.0)) {
      throw ValidationError(path + ":" + std::to_string(k + 2) +
                            ": time column must be strictly increasing");
    }
    if (std::abs(dt - step) > 1e-6 * step) {
      throw ValidationError(path + ":" + std::to_string(k + 2) +
                            ": non-uniform time step (" + std::to_string(dt) +
                            " vs " + std::to_string(step) + ")");
    }
  }
  return NominalTrajectory(ts[0], step, std::move(sig), std::move(sdot),
                           std::move(sddot), std::move(omega), std::move(hc),
                           std::move(Ho));
}

TrajectoryReport validate_trajectory(const NominalTrajectory& traj,
                                     const SpacecraftParams& params,
                                     double rate_margin) {
  TrajectoryReport report;
  report.h_max = params.h_max;
  report.rate_limit = rate_margin * params.hdot_max;

  const auto& hc = traj.hc_grid();
  const double step = traj.step();
  for (std::size_t k = 0; k < hc.size(); ++k) {
    const double mag = hc[k].norm();
    if (mag > report.max_hc) {
      report.max_hc = mag;
      report.t_max_hc = traj.t0() + step * static_cast<double>(k);
    }
    Vec3 rate;
    if (k == 0) {
      rate = (hc[1] - hc[0]) / step;
    } else if (k + 1 == hc.size()) {
      rate = (hc[k] - hc[k - 1]) / step;
    } else {
      rate = (hc[k + 1] - hc[k - 1]) / (2.0 * step);
    }
    const double rmag = rate.norm();
    if (rmag > report.max_hc_rate) {
      report.max_hc_rate = rmag;
      report.t_max_hc_rate = traj.t0() + step * static_cast<double>(k);
    }
  }
  report.momentum_ok = report.max_hc <= report.h_max;
  report.rate_ok = report.max_hc_rate <= report.rate_limit;
  return report;
}

}  // namespace zpm
