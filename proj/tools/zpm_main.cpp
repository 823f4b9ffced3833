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

// Command line front end; talks to the library exclusively through the
// C interface in zpm/zpm.h.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zpm/zpm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

int exit_code(zpm_status status) {
  switch (status) {
    case ZPM_OK: return kExitOk;
    case ZPM_ERR_INVALID_ARGUMENT: return kExitUsage;
    case ZPM_ERR_VALIDATION: return kExitValidation;
    case ZPM_ERR_IO:
    case ZPM_ERR_RUNTIME: return kExitRuntime;
  }
  return kExitRuntime;
}

int fail(zpm_status status) {
  std::fprintf(stderr, "error: %s\n", zpm_last_error());
  return exit_code(status);
}

struct ScenarioHandle {
  zpm_scenario* ptr = nullptr;
  ~ScenarioHandle() { zpm_scenario_free(ptr); }
};
struct TrajectoryHandle {
  zpm_trajectory* ptr = nullptr;
  ~TrajectoryHandle() { zpm_trajectory_free(ptr); }
};
struct ResultHandle {
  zpm_run_result* ptr = nullptr;
  ~ResultHandle() { zpm_run_result_free(ptr); }
};
struct CampaignHandle {
  zpm_campaign* ptr = nullptr;
  ~CampaignHandle() { zpm_campaign_free(ptr); }
};
struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { zpm_string_free(ptr); }
};

// Scenario from --config (or defaults) with --set overrides applied.
int make_scenario(const std::string& config_path,
                  const std::vector<std::string>& overrides, ScenarioHandle& out) {
  out.ptr = config_path.empty() ? zpm_scenario_default()
                                : zpm_scenario_load(config_path.c_str());
  if (out.ptr == nullptr) {
    return fail(ZPM_ERR_VALIDATION);
  }
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects section.key=value, got '%s'\n",
                   kv.c_str());
      return kExitUsage;
    }
    const zpm_status st = zpm_scenario_set(out.ptr, kv.substr(0, eq).c_str(),
                                           kv.substr(eq + 1).c_str());
    if (st != ZPM_OK) {
      return fail(st);
    }
  }
  return kExitOk;
}

int make_nominal(const ScenarioHandle& scenario, TrajectoryHandle& out) {
  out.ptr = zpm_nominal_generate(scenario.ptr);
  if (out.ptr == nullptr) {
    return fail(ZPM_ERR_VALIDATION);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Space-station zero-propellant maneuver guidance simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Scenario configuration file")
      ->expected(1);
  app.add_option("--set", overrides, "Override a config value (section.key=value)")
      ->take_all();

  // nominal generate / validate
  auto* nominal = app.add_subcommand("nominal", "Reference trajectory tools");
  nominal->require_subcommand(1);
  auto* nom_gen = nominal->add_subcommand("generate", "Plan and export the trajectory");
  std::string nom_out;
  nom_gen->add_option("--out", nom_out, "Output trajectory CSV")->required();
  auto* nom_val = nominal->add_subcommand("validate", "Check a trajectory against the CMG limits");
  std::string nom_traj;
  nom_val->add_option("--traj", nom_traj, "Trajectory CSV")->required();

  auto* simulate = app.add_subcommand("simulate", "One closed-loop maneuver run");
  std::string sim_mode = "traditional";
  std::string sim_out;
  simulate->add_option("--mode", sim_mode, "traditional | ltac | rtac");
  simulate->add_option("--out", sim_out, "Output directory")->required();

  auto* mc = app.add_subcommand("montecarlo", "Monte-Carlo robustness campaign");
  int mc_samples = 100;
  std::uint64_t mc_seed = 1;
  std::string mc_modes = "traditional,ltac,rtac";
  std::string mc_out;
  int mc_threads = 0;
  mc->add_option("--samples", mc_samples, "Number of samples");
  mc->add_option("--seed", mc_seed, "Master seed");
  mc->add_option("--modes", mc_modes, "Comma-separated guidance modes");
  mc->add_option("--threads", mc_threads, "Worker threads (0 = hardware)");
  mc->add_option("--out", mc_out, "Output directory")->required();

  auto* plot = app.add_subcommand("plot", "Re-render a chart from a stored log");
  std::string plot_log, plot_out, plot_kind = "hc";
  plot->add_option("--log", plot_log, "Run log CSV")->required();
  plot->add_option("--out", plot_out, "Output SVG")->required();
  plot->add_option("--kind", plot_kind, "hc | dH | sigma");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (plot->parsed()) {
    const zpm_status st =
        zpm_plot_log_csv(plot_log.c_str(), plot_kind.c_str(), plot_out.c_str());
    if (st != ZPM_OK) return fail(st);
    std::printf("wrote %s\n", plot_out.c_str());
    return kExitOk;
  }

  ScenarioHandle scenario;
  if (const int rc = make_scenario(config_path, overrides, scenario); rc != kExitOk) {
    return rc;
  }

  if (nominal->parsed()) {
    if (nom_gen->parsed()) {
      TrajectoryHandle traj;
      if (const int rc = make_nominal(scenario, traj); rc != kExitOk) return rc;
      if (const zpm_status st = zpm_trajectory_save(traj.ptr, nom_out.c_str());
          st != ZPM_OK) {
        return fail(st);
      }
      OwnedString report{zpm_trajectory_validate_json(traj.ptr, scenario.ptr)};
      if (report.ptr != nullptr) std::printf("%s", report.ptr);
      std::printf("wrote %s\n", nom_out.c_str());
      return kExitOk;
    }
    // nominal validate
    TrajectoryHandle traj{zpm_trajectory_load(nom_traj.c_str())};
    if (traj.ptr == nullptr) return fail(ZPM_ERR_VALIDATION);
    OwnedString report{zpm_trajectory_validate_json(traj.ptr, scenario.ptr)};
    if (report.ptr == nullptr) return fail(ZPM_ERR_VALIDATION);
    std::printf("%s", report.ptr);
    const bool pass = std::string(report.ptr).find("\"pass\": true") != std::string::npos;
    return pass ? kExitOk : kExitValidation;
  }

  if (simulate->parsed()) {
    TrajectoryHandle traj;
    if (const int rc = make_nominal(scenario, traj); rc != kExitOk) return rc;
    ResultHandle result{zpm_simulate(scenario.ptr, traj.ptr, sim_mode.c_str())};
    if (result.ptr == nullptr) return fail(ZPM_ERR_RUNTIME);
    if (const zpm_status st = zpm_result_write_report(result.ptr, sim_out.c_str());
        st != ZPM_OK) {
      return fail(st);
    }
    OwnedString summary{zpm_result_summary_json(result.ptr)};
    if (summary.ptr != nullptr) std::printf("%s", summary.ptr);
    std::printf("wrote %s/{log.csv,summary.json,*.svg}\n", sim_out.c_str());
    return kExitOk;
  }

  if (mc->parsed()) {
    TrajectoryHandle traj;
    if (const int rc = make_nominal(scenario, traj); rc != kExitOk) return rc;
    CampaignHandle campaign{zpm_campaign_run(scenario.ptr, traj.ptr, mc_samples,
                                             mc_seed, mc_modes.c_str(), mc_threads)};
    if (campaign.ptr == nullptr) return fail(ZPM_ERR_RUNTIME);
    if (const zpm_status st = zpm_campaign_write_report(campaign.ptr, mc_out.c_str());
        st != ZPM_OK) {
      return fail(st);
    }
    OwnedString summary{zpm_campaign_summary_json(campaign.ptr)};
    if (summary.ptr != nullptr) std::printf("%s", summary.ptr);
    std::printf("wrote %s/{stats.csv,samples.csv,summary.json,...}\n", mc_out.c_str());
    return kExitOk;
  }

  return kExitUsage;
}
