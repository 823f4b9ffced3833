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

#include "zpm/zpm.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "zpm/config.hpp"
#include "zpm/report.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs fn, translating C++ exceptions into status codes.
template <typename Fn>
zpm_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return ZPM_OK;
  } catch (const zpm::ValidationError& e) {
    set_error(e.what());
    return ZPM_ERR_VALIDATION;
  } catch (const zpm::IoError& e) {
    set_error(e.what());
    return ZPM_ERR_IO;
  } catch (const std::exception& e) {
    set_error(e.what());
    return ZPM_ERR_RUNTIME;
  }
}

template <typename Fn>
auto guarded_ptr(Fn&& fn) -> decltype(fn()) {
  try {
    auto* out = fn();
    g_last_error.clear();
    return out;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

}  // namespace

struct zpm_scenario {
  zpm::Config config;
};

struct zpm_trajectory {
  zpm::NominalTrajectory traj;
};

struct zpm_run_result {
  zpm::SimLog log;
  zpm::TerminalErrors terminal;
  std::string mode;
};

struct zpm_campaign {
  zpm::CampaignResult result;
  zpm::Scenario base;
  zpm::NominalTrajectory nominal;
};

extern "C" {

const char* zpm_version(void) { return "0.1.0"; }

const char* zpm_last_error(void) { return g_last_error.c_str(); }

void zpm_string_free(char* s) { delete[] s; }

zpm_scenario* zpm_scenario_default(void) {
  return guarded_ptr([] { return new zpm_scenario{zpm::Config::defaults()}; });
}

zpm_scenario* zpm_scenario_load(const char* config_path) {
  if (config_path == nullptr) {
    set_error("zpm_scenario_load: config_path is NULL");
    return nullptr;
  }
  return guarded_ptr([&] { return new zpm_scenario{zpm::Config::load(config_path)}; });
}

zpm_status zpm_scenario_set(zpm_scenario* scenario, const char* dotted_key,
                            const char* value) {
  if (scenario == nullptr || dotted_key == nullptr || value == nullptr) {
    set_error("zpm_scenario_set: NULL argument");
    return ZPM_ERR_INVALID_ARGUMENT;
  }
  const zpm_status st = guarded([&] { scenario->config.set(dotted_key, value); });
  return st == ZPM_ERR_VALIDATION ? ZPM_ERR_INVALID_ARGUMENT : st;
}

char* zpm_default_config_text(void) { return dup_string(zpm::default_config_text()); }

void zpm_scenario_free(zpm_scenario* scenario) { delete scenario; }

zpm_trajectory* zpm_nominal_generate(const zpm_scenario* scenario) {
  if (scenario == nullptr) {
    set_error("zpm_nominal_generate: scenario is NULL");
    return nullptr;
  }
  return guarded_ptr([&]() -> zpm_trajectory* {
    const zpm::LoadedSetup setup = zpm::setup_from_config(scenario->config);
    return new zpm_trajectory{zpm::nominal_for_setup(setup)};
  });
}

zpm_trajectory* zpm_trajectory_load(const char* csv_path) {
  if (csv_path == nullptr) {
    set_error("zpm_trajectory_load: csv_path is NULL");
    return nullptr;
  }
  return guarded_ptr(
      [&] { return new zpm_trajectory{zpm::import_trajectory(csv_path)}; });
}

zpm_status zpm_trajectory_save(const zpm_trajectory* trajectory, const char* csv_path) {
  if (trajectory == nullptr || csv_path == nullptr) {
    set_error("zpm_trajectory_save: NULL argument");
    return ZPM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { zpm::export_trajectory(trajectory->traj, csv_path); });
}

char* zpm_trajectory_validate_json(const zpm_trajectory* trajectory,
                                   const zpm_scenario* scenario) {
  if (trajectory == nullptr || scenario == nullptr) {
    set_error("zpm_trajectory_validate_json: NULL argument");
    return nullptr;
  }
  try {
    const zpm::LoadedSetup setup = zpm::setup_from_config(scenario->config);
    const zpm::TrajectoryReport report = zpm::validate_trajectory(
        trajectory->traj, setup.scenario.nominal_model.params,
        setup.scenario.rate_margin);
    nlohmann::json j;
    j["pass"] = report.pass();
    j["momentum"] = {{"max_Nms", report.max_hc},
                     {"t_s", report.t_max_hc},
                     {"limit_Nms", report.h_max},
                     {"ok", report.momentum_ok}};
    j["rate"] = {{"max_Nm", report.max_hc_rate},
                 {"t_s", report.t_max_hc_rate},
                 {"limit_Nm", report.rate_limit},
                 {"ok", report.rate_ok}};
    g_last_error.clear();
    return dup_string(j.dump(2) + "\n");
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

void zpm_trajectory_free(zpm_trajectory* trajectory) { delete trajectory; }

zpm_run_result* zpm_simulate(const zpm_scenario* scenario,
                             const zpm_trajectory* trajectory, const char* mode) {
  if (scenario == nullptr || trajectory == nullptr || mode == nullptr) {
    set_error("zpm_simulate: NULL argument");
    return nullptr;
  }
  return guarded_ptr([&]() -> zpm_run_result* {
    zpm::LoadedSetup setup = zpm::setup_from_config(scenario->config);
    setup.scenario.mode = zpm::mode_from_string(mode);
    zpm::SimLog log = zpm::run(setup.scenario, trajectory->traj);
    const zpm::TerminalErrors terminal =
        zpm::terminal_metrics(log, setup.scenario.bounds, trajectory->traj);
    return new zpm_run_result{std::move(log), terminal, mode};
  });
}

zpm_status zpm_result_terminal_errors(const zpm_run_result* result, double out[4]) {
  if (result == nullptr || out == nullptr) {
    set_error("zpm_result_terminal_errors: NULL argument");
    return ZPM_ERR_INVALID_ARGUMENT;
  }
  out[0] = result->terminal.attitude_deg;
  out[1] = result->terminal.omega_err;
  out[2] = result->terminal.hc_err;
  out[3] = result->terminal.H_err;
  return ZPM_OK;
}

char* zpm_result_summary_json(const zpm_run_result* result) {
  if (result == nullptr) {
    set_error("zpm_result_summary_json: result is NULL");
    return nullptr;
  }
  return dup_string(zpm::run_summary_json(result->log, result->terminal, result->mode));
}

zpm_status zpm_result_write_log_csv(const zpm_run_result* result, const char* path) {
  if (result == nullptr || path == nullptr) {
    set_error("zpm_result_write_log_csv: NULL argument");
    return ZPM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] { zpm::write_log_csv(result->log, path); });
}

zpm_status zpm_result_write_report(const zpm_run_result* result, const char* out_dir) {
  if (result == nullptr || out_dir == nullptr) {
    set_error("zpm_result_write_report: NULL argument");
    return ZPM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    zpm::write_run_report(result->log, result->terminal, result->mode, out_dir);
  });
}

void zpm_run_result_free(zpm_run_result* result) { delete result; }

zpm_campaign* zpm_campaign_run(const zpm_scenario* scenario,
                               const zpm_trajectory* trajectory, int n_samples,
                               uint64_t master_seed, const char* modes_csv,
                               int threads) {
  if (scenario == nullptr || trajectory == nullptr || modes_csv == nullptr) {
    set_error("zpm_campaign_run: NULL argument");
    return nullptr;
  }
  return guarded_ptr([&]() -> zpm_campaign* {
    std::vector<zpm::GuidanceMode> modes;
    std::string token;
    for (const char* p = modes_csv;; ++p) {
      if (*p == ',' || *p == '\0') {
        if (!token.empty()) modes.push_back(zpm::mode_from_string(token));
        token.clear();
        if (*p == '\0') break;
      } else if (*p != ' ') {
        token.push_back(*p);
      }
    }
    const zpm::LoadedSetup setup = zpm::setup_from_config(scenario->config);
    zpm::CampaignResult result =
        zpm::run_campaign(setup.scenario, trajectory->traj, setup.errors, n_samples,
                          modes, master_seed, threads);
    return new zpm_campaign{std::move(result), setup.scenario, trajectory->traj};
  });
}

char* zpm_campaign_summary_json(const zpm_campaign* campaign) {
  if (campaign == nullptr) {
    set_error("zpm_campaign_summary_json: campaign is NULL");
    return nullptr;
  }
  return dup_string(zpm::campaign_summary_json(campaign->result));
}

zpm_status zpm_campaign_write_report(const zpm_campaign* campaign, const char* out_dir) {
  if (campaign == nullptr || out_dir == nullptr) {
    set_error("zpm_campaign_write_report: NULL argument");
    return ZPM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    zpm::write_campaign_report(campaign->result, campaign->base, campaign->nominal,
                               out_dir);
  });
}

void zpm_campaign_free(zpm_campaign* campaign) { delete campaign; }

zpm_status zpm_plot_log_csv(const char* log_csv_path, const char* kind,
                            const char* out_svg_path) {
  if (log_csv_path == nullptr || kind == nullptr || out_svg_path == nullptr) {
    set_error("zpm_plot_log_csv: NULL argument");
    return ZPM_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const zpm::SimLog log = zpm::read_log_csv(log_csv_path);
    zpm::write_log_chart(log, kind, out_svg_path);
  });
}

}  // extern "C"
