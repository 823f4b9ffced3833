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

#include "zpm/config.hpp"

namespace zpm {

/// One polyline of an SVG line chart.
struct ChartSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Renders a simple SVG line chart (axes, ticks, legend).
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<ChartSeries>& series);

/// Dense run history as CSV; read_log_csv parses the same format back
/// (for re-rendering plots from stored logs).
void write_log_csv(const SimLog& log, const std::string& path);
SimLog read_log_csv(const std::string& path);

/// Terminal metrics, clamp statistics and the conservation health check
/// of one run, as a JSON document.
std::string run_summary_json(const SimLog& log, const TerminalErrors& terminal,
                             const std::string& mode);

/// log.csv + summary.json + the standard chart set into a directory.
void write_run_report(const SimLog& log, const TerminalErrors& terminal,
                      const std::string& mode, const std::string& out_dir,
                      const std::string& prefix = "");

/// The three standard chart kinds: "hc" (CMG momentum magnitude), "dH"
/// (total momentum error magnitude), "sigma" (attitude components).
void write_log_chart(const SimLog& log, const std::string& kind,
                     const std::string& path);

/// Campaign outputs: stats.csv (mode x metric x {average, maximum}),
/// samples.csv (one row per sample and mode) and summary.json.
void write_campaign_stats_csv(const CampaignResult& result, const std::string& path);
void write_campaign_samples_csv(const CampaignResult& result, const std::string& path);
std::string campaign_summary_json(const CampaignResult& result);

/// Everything above plus per-mode charts of the first sample's run.
void write_campaign_report(const CampaignResult& result, const Scenario& base,
                           const NominalTrajectory& nominal, const std::string& out_dir);

}  // namespace zpm
