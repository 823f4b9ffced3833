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

#include <cstdint>
#include <string>
#include <vector>

#include "zpm/attitude.hpp"

namespace zpm {

/// One logged instant of a closed-loop run.
struct SimLogRow {
  double t = 0.0;           // s
  Mrp sigma;                // attitude vs orbit frame
  Vec3 omega = Vec3::Zero();    // body rates, rad/s
  Vec3 h_cmg = Vec3::Zero();    // CMG momentum, body frame, N m s
  double hc_norm = 0.0;
  Vec3 H_orbit = Vec3::Zero();  // total momentum, orbit frame, N m s
  Vec3 dH_orbit = Vec3::Zero(); // total momentum error vs nominal, orbit frame
  double dH_norm = 0.0;
  Vec3 delta_sigma = Vec3::Zero();  // commanded trajectory adjustment
  Vec3 u = Vec3::Zero();            // applied CMG torque, N m
  bool rate_clamped = false;
  bool envelope_clamped = false;
  double lyapunov = 0.0;    // 0.5 |dH_orbit|^2
};

/// Dense history of one run plus a few whole-run statistics.
struct SimLog {
  std::vector<SimLogRow> rows;
  double log_step = 1.0;
  std::string mode;

  std::uint64_t rate_clamp_steps = 0;
  std::uint64_t envelope_clamp_steps = 0;
  std::uint64_t adjustment_cap_steps = 0;
  double conservation_residual = 0.0;  // N m s, filled after the run

  double t0() const { return rows.empty() ? 0.0 : rows.front().t; }
  double tf() const { return rows.empty() ? 0.0 : rows.back().t; }
};

}  // namespace zpm
