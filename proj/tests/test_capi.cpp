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

#include <cstring>
#include <filesystem>
#include <string>

#include "zpm/zpm.h"

namespace {

std::string temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::create_directories(dir);
  return dir.string();
}

// Short station-holding scenario so library-level tests stay quick.
zpm_scenario* quick_scenario() {
  zpm_scenario* sc = zpm_scenario_default();
  REQUIRE(sc != nullptr);
  REQUIRE(zpm_scenario_set(sc, "bounds.tf", "240") == ZPM_OK);
  REQUIRE(zpm_scenario_set(sc, "bounds.sigmaf", "0.01352, -0.04144, 0.05742") == ZPM_OK);
  REQUIRE(zpm_scenario_set(sc, "bounds.omegaf", "-0.2541e-3, -1.1145e-3, 0.0826e-3") ==
          ZPM_OK);
  REQUIRE(zpm_scenario_set(sc, "bounds.hcf", "-672.5, -237.3, -5276.8") == ZPM_OK);
  REQUIRE(zpm_scenario_set(sc, "initial_error.hc_error", "500, 0, 0") == ZPM_OK);
  return sc;
}

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::strlen(zpm_version()) > 0);
  CHECK(zpm_last_error() != nullptr);
}

TEST_CASE("default config text is exposed") {
  char* text = zpm_default_config_text();
  REQUIRE(text != nullptr);
  CHECK(std::string(text).find("[spacecraft]") != std::string::npos);
  CHECK(std::string(text).find("h_max") != std::string::npos);
  zpm_string_free(text);
}

TEST_CASE("scenario handling and argument errors") {
  zpm_scenario* sc = zpm_scenario_default();
  REQUIRE(sc != nullptr);
  CHECK(zpm_scenario_set(sc, "tracker.omega_n", "0.02") == ZPM_OK);
  CHECK(zpm_scenario_set(sc, "tracker.no_such", "1") == ZPM_ERR_INVALID_ARGUMENT);
  CHECK(std::string(zpm_last_error()).find("no_such") != std::string::npos);
  CHECK(zpm_scenario_set(nullptr, "a.b", "1") == ZPM_ERR_INVALID_ARGUMENT);
  zpm_scenario_free(sc);

  CHECK(zpm_scenario_load("/nonexistent/zpm.cfg") == nullptr);
  CHECK(std::strlen(zpm_last_error()) > 0);
}

TEST_CASE("full flow through the C interface") {
  const std::string dir = temp_dir("zpm_capi_flow");
  zpm_scenario* sc = quick_scenario();

  zpm_trajectory* traj = zpm_nominal_generate(sc);
  REQUIRE(traj != nullptr);

  // Save / load round trip.
  const std::string traj_path = dir + "/nominal.csv";
  REQUIRE(zpm_trajectory_save(traj, traj_path.c_str()) == ZPM_OK);
  zpm_trajectory* loaded = zpm_trajectory_load(traj_path.c_str());
  REQUIRE(loaded != nullptr);

  char* report = zpm_trajectory_validate_json(loaded, sc);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"pass\": true") != std::string::npos);
  zpm_string_free(report);

  // Simulate two guidance modes on the same trajectory.
  double trad[4] = {0, 0, 0, 0};
  double rtac[4] = {0, 0, 0, 0};
  zpm_run_result* r1 = zpm_simulate(sc, loaded, "traditional");
  REQUIRE(r1 != nullptr);
  REQUIRE(zpm_result_terminal_errors(r1, trad) == ZPM_OK);
  zpm_run_result* r2 = zpm_simulate(sc, loaded, "rtac");
  REQUIRE(r2 != nullptr);
  REQUIRE(zpm_result_terminal_errors(r2, rtac) == ZPM_OK);
  CHECK(trad[2] > 0.0);
  // Over a short horizon the adjustment acts on the total momentum
  // error first; the CMG error converges later (so compare H, not h_c).
  CHECK(rtac[3] < trad[3]);

  char* summary = zpm_result_summary_json(r2);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("\"mode\": \"rtac\"") != std::string::npos);
  CHECK(std::string(summary).find("conservation_residual") != std::string::npos);
  zpm_string_free(summary);

  REQUIRE(zpm_result_write_report(r2, (dir + "/run").c_str()) == ZPM_OK);
  CHECK(std::filesystem::exists(dir + "/run/log.csv"));
  CHECK(std::filesystem::exists(dir + "/run/summary.json"));
  CHECK(std::filesystem::exists(dir + "/run/hc_norm.svg"));

  // Plot re-rendering from the stored log.
  CHECK(zpm_plot_log_csv((dir + "/run/log.csv").c_str(), "sigma",
                         (dir + "/sigma.svg").c_str()) == ZPM_OK);
  CHECK(std::filesystem::exists(dir + "/sigma.svg"));
  CHECK(zpm_plot_log_csv((dir + "/run/log.csv").c_str(), "nope",
                         (dir + "/x.svg").c_str()) == ZPM_ERR_VALIDATION);

  // Bad mode name.
  CHECK(zpm_simulate(sc, loaded, "fancy") == nullptr);
  CHECK(std::string(zpm_last_error()).find("fancy") != std::string::npos);

  zpm_run_result_free(r1);
  zpm_run_result_free(r2);

  // Small paired campaign.
  zpm_campaign* campaign = zpm_campaign_run(sc, loaded, 3, 11, "traditional,rtac", 1);
  REQUIRE(campaign != nullptr);
  char* cj = zpm_campaign_summary_json(campaign);
  REQUIRE(cj != nullptr);
  CHECK(std::string(cj).find("\"samples\": 3") != std::string::npos);
  zpm_string_free(cj);
  REQUIRE(zpm_campaign_write_report(campaign, (dir + "/mc").c_str()) == ZPM_OK);
  CHECK(std::filesystem::exists(dir + "/mc/stats.csv"));
  CHECK(std::filesystem::exists(dir + "/mc/samples.csv"));
  zpm_campaign_free(campaign);

  zpm_trajectory_free(loaded);
  zpm_trajectory_free(traj);
  zpm_scenario_free(sc);
}

TEST_CASE("trajectory error paths") {
  CHECK(zpm_trajectory_load("/nonexistent/t.csv") == nullptr);
  CHECK(std::strlen(zpm_last_error()) > 0);
  CHECK(zpm_trajectory_save(nullptr, "/tmp/x.csv") == ZPM_ERR_INVALID_ARGUMENT);
  CHECK(zpm_nominal_generate(nullptr) == nullptr);
  CHECK(zpm_simulate(nullptr, nullptr, "rtac") == nullptr);
}
