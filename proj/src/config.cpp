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

#include "zpm/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace zpm {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_numbers(const std::string& value, const std::string& where,
                                  std::size_t expected) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ValidationError(where + ": not a number: '" + cell + "'");
    }
  }
  if (out.size() != expected) {
    throw ValidationError(where + ": expected " + std::to_string(expected) +
                          " comma-separated numbers, got " + std::to_string(out.size()));
  }
  return out;
}

Mat3 parse_mat3(const Config& cfg, const std::string& section, const std::string& key) {
  const auto v = parse_numbers(cfg.raw(section, key), section + "." + key, 9);
  Mat3 m;
  m << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
  return m;
}

}  // namespace

const std::string& default_config_text() {
  static const std::string text = R"cfg(# zpmsim scenario configuration.
# All values are SI (m, s, kg, rad, N) unless a key name says otherwise.
# The defaults describe the -90 deg space-station maneuver example case.

[spacecraft]
# Inertia matrix, row major, kg m^2.
inertia = 24180443, 3780010, 3896127, 3780010, 37607882, -1171169, 3896127, -1171169, 51562389
# Circular orbit rate, rad/s.
orbit_rate = 1.1461e-3
# CMG momentum envelope (N m s) and torque capability (N m).
h_max = 19524.0
hdot_max = 271.16
# Gravitational parameter, m^3/s^2 (only used to derive the relative wind speed).
mu = 3.986004418e14

[aero]
# Constant projected cross section, m^2.
area = 500.0
# Mass center -> pressure center offset, body frame, m.
cp_offset = -9.70, 1.71, 1.74
# Atmospheric density, kg/m^3, and drag coefficient.
density = 2e-11
drag_coeff = 2.2
# Relative wind magnitude, m/s; 'auto' derives the circular orbit speed
# from orbit_rate and mu.
wind_speed = auto
# Scales the along-track wind (1 = full corotating-atmosphere wind).
corotation_factor = 1.0

[bounds]
# Maneuver time span, s.
t0 = 0.0
tf = 6000.0
# Initial and terminal attitude (MRP), body rates (rad/s) and CMG
# momentum (N m s). The terminal CMG momentum is a planning target only;
# the generated trajectory ends wherever its dynamics lead it.
sigma0 = 0.01352, -0.04144, 0.05742
omega0 = -0.2541e-3, -1.1145e-3, 0.0826e-3
hc0 = -672.5, -237.3, -5276.8
sigmaf = -0.03636, -0.02063, -0.41360
omegaf = 1.1353e-3, 0.0030e-3, -0.1571e-3
hcf = -12.2, -4822.6, -183.0

[nominal]
# Reference trajectory grid step, s (must divide tf - t0).
step = 1.0
# Fraction of hdot_max the planned trajectory may use.
rate_margin = 0.8
# Optional: import a pre-planned trajectory CSV instead of generating one.
trajectory_file =

[truth]
# Torques acting on the plant.
gravity_gradient = true
aerodynamic = true
# Peak of the disturbance torque bump, N m; 0,0,0 disables it. The bump
# spans [t0, tf] and peaks at the midpoint.
disturbance_vd = 0.0, 0.0, 0.0
# Frame the disturbance is expressed in: body or orbit.
disturbance_frame = body
# Scales the truth inertia relative to [spacecraft] inertia (model mismatch study).
inertia_scale = 1.0

[controller]
# Inertia the controllers believe: 'truth' (obtained on-line) or 'nominal'.
inertia = truth
# Environmental torques in the controller's model.
gravity_gradient = true
aerodynamic = true

[adjust]
# Trajectory adjusting controller: momentum error feedback gain and the
# x/z coupling gains (k_r1 = k_r2 = 0 reduces RTAC to LTAC).
k_a = 5e-8
k_r1 = 1.6
k_r2 = 1.6
# Componentwise bound on the commanded attitude adjustment (MRP units).
# Recovering from CMG saturation can demand adjustments up to ~0.13.
sigma_cap = 0.2
# Finite-difference step for the torque sensitivity matrix.
fd_step = 1e-6
# Use the transposed final term in the second-derivative expansion (see README).
b4_transpose_compat = false

[tracker]
# Control bandwidth, rad/s, and damping ratio of the tracking loop.
omega_n = 0.01
zeta = 0.707

[sim]
# Control update period, s (0 = evaluate the control continuously).
control_period = 1.0
# Logging interval, s.
log_step = 1.0
# Integrator tolerances (embedded Runge-Kutta 4(5)).
rel_tol = 1e-6
abs_tol = 1e-9

[initial_error]
# Explicit initial-state errors for single runs. The attitude error is a
# rotation of attitude_angle_deg about attitude_axis.
attitude_axis = 1.0, 0.0, 0.0
attitude_angle_deg = 0.0
omega_error = 0.0, 0.0, 0.0
hc_error = 0.0, 0.0, 0.0

[errors]
# Monte-Carlo error specification: random directions, fixed magnitudes.
attitude_angle_deg = 5.0
# Rate error magnitude as a fraction of orbit_rate.
omega_frac = 0.05
hc_mag = 1000.0
# Uniform principal-moment scaling range (1.0 / 1.0 disables it).
inertia_lo = 1.0
inertia_hi = 1.0
# 'principal' draws one factor per principal moment, 'global' one factor
# for the whole matrix.
inertia_mode = principal
# Optional disturbance bump applied to the truth model in campaigns.
disturbance_vd = 0.0, 0.0, 0.0
)cfg";
  return text;
}

Config Config::defaults() {
  Config cfg;
  cfg.merge_text(default_config_text(), "<defaults>", true);
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg = defaults();
  cfg.merge_text(text, origin, false);
  return cfg;
}

void Config::merge_text(const std::string& text, const std::string& origin,
                        bool allow_new_keys) {
  std::stringstream ss(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ValidationError(where + ": malformed section header '" + line + "'");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (!allow_new_keys && values_.find(section) == values_.end()) {
        throw ValidationError(where + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(where + ": expected 'key = value', got '" + line + "'");
    }
    if (section.empty()) {
      throw ValidationError(where + ": key outside of any [section]");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto& sec = values_[section];
    if (!allow_new_keys && sec.find(key) == sec.end()) {
      throw ValidationError(where + ": unknown key '" + section + "." + key + "'");
    }
    sec[key] = value;
  }
}

void Config::set(const std::string& dotted_key, const std::string& value) {
  const auto dot = dotted_key.find('.');
  if (dot == std::string::npos) {
    throw ValidationError("override '" + dotted_key + "': expected section.key");
  }
  const std::string section = trim(dotted_key.substr(0, dot));
  const std::string key = trim(dotted_key.substr(dot + 1));
  const auto sec = values_.find(section);
  if (sec == values_.end() || sec->second.find(key) == sec->second.end()) {
    throw ValidationError("override: unknown key '" + section + "." + key + "'");
  }
  sec->second[key] = trim(value);
}

const std::string& Config::raw(const std::string& section, const std::string& key) const {
  const auto sec = values_.find(section);
  if (sec == values_.end()) {
    throw ValidationError("config: unknown section [" + section + "]");
  }
  const auto it = sec->second.find(key);
  if (it == sec->second.end()) {
    throw ValidationError("config: unknown key '" + section + "." + key + "'");
  }
  return it->second;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const std::string& value = raw(section, key);
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw ValidationError(section + "." + key + ": not a number: '" + value + "'");
  }
}

bool Config::get_bool(const std::string& section, const std::string& key) const {
  const std::string& value = raw(section, key);
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ValidationError(section + "." + key + ": not a boolean: '" + value + "'");
}

Vec3 Config::get_vec3(const std::string& section, const std::string& key) const {
  const auto v = parse_numbers(raw(section, key), section + "." + key, 3);
  return Vec3(v[0], v[1], v[2]);
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
  return raw(section, key);
}

LoadedSetup setup_from_config(const Config& cfg) {
  LoadedSetup setup;
  Scenario& sc = setup.scenario;

  SpacecraftParams params;
  params.inertia = parse_mat3(cfg, "spacecraft", "inertia");
  params.orbit_rate = cfg.get_double("spacecraft", "orbit_rate");
  params.h_max = cfg.get_double("spacecraft", "h_max");
  params.hdot_max = cfg.get_double("spacecraft", "hdot_max");
  params.mu = cfg.get_double("spacecraft", "mu");
  params.validate();

  AeroParams aero;
  aero.area = cfg.get_double("aero", "area");
  aero.cp_offset = cfg.get_vec3("aero", "cp_offset");
  aero.density = cfg.get_double("aero", "density");
  aero.drag_coeff = cfg.get_double("aero", "drag_coeff");
  const std::string wind = cfg.get_string("aero", "wind_speed");
  aero.wind_speed = (wind == "auto") ? params.orbital_speed()
                                     : cfg.get_double("aero", "wind_speed");
  aero.corotation_factor = cfg.get_double("aero", "corotation_factor");
  aero.validate();

  sc.bounds.t0 = cfg.get_double("bounds", "t0");
  sc.bounds.tf = cfg.get_double("bounds", "tf");
  sc.bounds.sigma0 = Mrp(cfg.get_vec3("bounds", "sigma0"));
  sc.bounds.sigmaf = Mrp(cfg.get_vec3("bounds", "sigmaf"));
  sc.bounds.omega0 = cfg.get_vec3("bounds", "omega0");
  sc.bounds.omegaf = cfg.get_vec3("bounds", "omegaf");
  sc.bounds.hc0 = cfg.get_vec3("bounds", "hc0");
  sc.bounds.hcf = cfg.get_vec3("bounds", "hcf");

  // Planning model: the nominal conditions, no disturbance.
  sc.nominal_model.gravity_gradient = true;
  sc.nominal_model.aerodynamic = true;
  sc.nominal_model.disturbance = false;
  sc.nominal_model.params = params;
  sc.nominal_model.aero = aero;

  // Truth model.
  sc.truth_model.gravity_gradient = cfg.get_bool("truth", "gravity_gradient");
  sc.truth_model.aerodynamic = cfg.get_bool("truth", "aerodynamic");
  sc.truth_model.params = params;
  sc.truth_model.params.inertia =
      cfg.get_double("truth", "inertia_scale") * params.inertia;
  sc.truth_model.aero = aero;
  const Vec3 vd = cfg.get_vec3("truth", "disturbance_vd");
  sc.truth_model.disturbance = vd.squaredNorm() > 0.0;
  sc.truth_model.dist.v_d = vd;
  sc.truth_model.dist.t0 = sc.bounds.t0;
  sc.truth_model.dist.tf = sc.bounds.tf;
  const std::string frame = cfg.get_string("truth", "disturbance_frame");
  if (frame == "body") {
    sc.truth_model.dist.frame = Frame::body;
  } else if (frame == "orbit") {
    sc.truth_model.dist.frame = Frame::orbit;
  } else {
    throw ValidationError("truth.disturbance_frame: expected body or orbit, got '" +
                          frame + "'");
  }

  // Controller model (no disturbance knowledge).
  sc.controller_model.gravity_gradient = cfg.get_bool("controller", "gravity_gradient");
  sc.controller_model.aerodynamic = cfg.get_bool("controller", "aerodynamic");
  sc.controller_model.disturbance = false;
  sc.controller_model.params = params;
  sc.controller_model.aero = aero;
  const std::string ctrl_inertia = cfg.get_string("controller", "inertia");
  if (ctrl_inertia == "truth") {
    sc.controller_model.params.inertia = sc.truth_model.params.inertia;
  } else if (ctrl_inertia == "nominal") {
    sc.controller_model.params.inertia = params.inertia;
  } else {
    throw ValidationError("controller.inertia: expected truth or nominal, got '" +
                          ctrl_inertia + "'");
  }

  sc.adjust.k_a = cfg.get_double("adjust", "k_a");
  sc.adjust.k_r1 = cfg.get_double("adjust", "k_r1");
  sc.adjust.k_r2 = cfg.get_double("adjust", "k_r2");
  sc.adjust.sigma_cap = cfg.get_double("adjust", "sigma_cap");
  sc.adjust.b4_transpose_compat = cfg.get_bool("adjust", "b4_transpose_compat");
  sc.fd_step = cfg.get_double("adjust", "fd_step");

  sc.tracker.omega_n = cfg.get_double("tracker", "omega_n");
  sc.tracker.zeta = cfg.get_double("tracker", "zeta");

  sc.limits.h_max = params.h_max;
  sc.limits.hdot_max = params.hdot_max;

  sc.control_period = cfg.get_double("sim", "control_period");
  sc.log_step = cfg.get_double("sim", "log_step");
  sc.integrator.rel_tol = cfg.get_double("sim", "rel_tol");
  sc.integrator.abs_tol = cfg.get_double("sim", "abs_tol");

  sc.nominal_step = cfg.get_double("nominal", "step");
  sc.rate_margin = cfg.get_double("nominal", "rate_margin");
  setup.trajectory_file = cfg.get_string("nominal", "trajectory_file");

  sc.initial_errors.attitude_axis = cfg.get_vec3("initial_error", "attitude_axis");
  sc.initial_errors.attitude_angle =
      cfg.get_double("initial_error", "attitude_angle_deg") * M_PI / 180.0;
  sc.initial_errors.omega_error = cfg.get_vec3("initial_error", "omega_error");
  sc.initial_errors.hc_error = cfg.get_vec3("initial_error", "hc_error");

  ErrorSpec& err = setup.errors;
  err.attitude_angle_deg = cfg.get_double("errors", "attitude_angle_deg");
  err.omega_frac = cfg.get_double("errors", "omega_frac");
  err.hc_mag = cfg.get_double("errors", "hc_mag");
  err.inertia_lo = cfg.get_double("errors", "inertia_lo");
  err.inertia_hi = cfg.get_double("errors", "inertia_hi");
  const std::string imode = cfg.get_string("errors", "inertia_mode");
  if (imode == "principal") {
    err.inertia_mode = ErrorSpec::InertiaMode::principal;
  } else if (imode == "global") {
    err.inertia_mode = ErrorSpec::InertiaMode::global;
  } else {
    throw ValidationError("errors.inertia_mode: expected principal or global, got '" +
                          imode + "'");
  }
  const Vec3 evd = cfg.get_vec3("errors", "disturbance_vd");
  if (evd.squaredNorm() > 0.0) {
    err.disturbance_vd = evd;
  }
  err.validate();

  sc.validate();
  return setup;
}

NominalTrajectory nominal_for_setup(const LoadedSetup& setup) {
  if (!setup.trajectory_file.empty()) {
    return import_trajectory(setup.trajectory_file);
  }
  const Scenario& sc = setup.scenario;
  return generate_nominal(sc.bounds, sc.nominal_model.params, sc.nominal_model,
                          sc.nominal_step, sc.rate_margin);
}

}  // namespace zpm
