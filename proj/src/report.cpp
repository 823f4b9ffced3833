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

#include "zpm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zpm {

namespace {

constexpr const char* kLogHeader =
    "t,s1,s2,s3,w1,w2,w3,hc1,hc2,hc3,hc_norm,Ho1,Ho2,Ho3,dHo1,dHo2,dHo3,"
    "dH_norm,dsig1,dsig2,dsig3,u1,u2,u3,rate_clamp,env_clamp,V";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Ticks {
  std::vector<double> values;
  double lo = 0.0;
  double hi = 1.0;
};

Ticks nice_ticks(double lo, double hi) {
  if (!(hi > lo)) {
    hi = lo + 1.0;
  }
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  Ticks t;
  t.lo = std::floor(lo / step) * step;
  t.hi = std::ceil(hi / step) * step;
  for (double v = t.lo; v <= t.hi + 0.5 * step; v += step) {
    t.values.push_back(v);
  }
  return t;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

nlohmann::json terminal_json(const TerminalErrors& e) {
  return {{"attitude_deg", e.attitude_deg},
          {"omega_rad_s", e.omega_err},
          {"hc_Nms", e.hc_err},
          {"H_Nms", e.H_err}};
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<ChartSeries>& series) {
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        x_min = x_max = s.x[i];
        y_min = y_max = s.y[i];
        first = false;
      }
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  const Ticks xt = nice_ticks(x_min, x_max);
  const Ticks yt = nice_ticks(y_min, y_max);

  const double width = 860.0, height = 520.0;
  const double left = 80.0, right = 20.0, top = 48.0, bottom = 64.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const auto to_x = [&](double v) {
    return left + (v - xt.lo) / (xt.hi - xt.lo) * plot_w;
  };
  const auto to_y = [&](double v) {
    return top + plot_h - (v - yt.lo) / (yt.hi - yt.lo) * plot_h;
  };

  std::ofstream out(path);
  if (!out) {
    throw IoError("write_svg_chart: cannot open " + path + " for writing");
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  for (const double v : xt.values) {
    const double x = to_x(v);
    out << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\""
        << top + plot_h << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(v) << "</text>\n";
  }
  for (const double v : yt.values) {
    const double y = to_y(v);
    out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << tick_label(v) << "</text>\n";
  }
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << x_label << "</text>\n";
  out << "<text x=\"20\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 20 " << top + plot_h / 2 << ")\">" << y_label
      << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[si % 6]
        << "\" stroke-width=\"1.4\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << to_x(s.x[i]) << "," << to_y(s.y[i]) << " ";
    }
    out << "\"/>\n";
  }
  for (std::size_t si = 0; si < series.size(); ++si) {
    const double y = top + 14 + 16 * static_cast<double>(si);
    out << "<line x1=\"" << left + plot_w - 130 << "\" y1=\"" << y << "\" x2=\""
        << left + plot_w - 106 << "\" y2=\"" << y << "\" stroke=\"" << kPalette[si % 6]
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + plot_w - 100 << "\" y=\"" << y + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[si].name
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) {
    throw IoError("write_svg_chart: write to " + path + " failed");
  }
}

void write_log_csv(const SimLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("write_log_csv: cannot open " + path + " for writing");
  }
  out << kLogHeader << "\n";
  for (const auto& r : log.rows) {
    out << fmt(r.t) << ',' << fmt(r.sigma[0]) << ',' << fmt(r.sigma[1]) << ','
        << fmt(r.sigma[2]) << ',' << fmt(r.omega.x()) << ',' << fmt(r.omega.y()) << ','
        << fmt(r.omega.z()) << ',' << fmt(r.h_cmg.x()) << ',' << fmt(r.h_cmg.y()) << ','
        << fmt(r.h_cmg.z()) << ',' << fmt(r.hc_norm) << ',' << fmt(r.H_orbit.x()) << ','
        << fmt(r.H_orbit.y()) << ',' << fmt(r.H_orbit.z()) << ',' << fmt(r.dH_orbit.x())
        << ',' << fmt(r.dH_orbit.y()) << ',' << fmt(r.dH_orbit.z()) << ','
        << fmt(r.dH_norm) << ',' << fmt(r.delta_sigma.x()) << ','
        << fmt(r.delta_sigma.y()) << ',' << fmt(r.delta_sigma.z()) << ','
        << fmt(r.u.x()) << ',' << fmt(r.u.y()) << ',' << fmt(r.u.z()) << ','
        << (r.rate_clamped ? 1 : 0) << ',' << (r.envelope_clamped ? 1 : 0) << ','
        << fmt(r.lyapunov) << "\n";
  }
  if (!out) {
    throw IoError("write_log_csv: write to " + path + " failed");
  }
}

SimLog read_log_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("read_log_csv: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError(path + ":1: empty log file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kLogHeader) {
    throw ValidationError(path + ":1: unexpected log header");
  }
  SimLog log;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 27> v{};
    std::stringstream ss(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(ss, cell, ',')) {
      if (col >= v.size()) {
        throw ValidationError(path + ":" + std::to_string(lineno) + ": too many columns");
      }
      try {
        v[col] = std::stod(cell);
      } catch (const std::exception&) {
        throw ValidationError(path + ":" + std::to_string(lineno) +
                              ": not a number: '" + cell + "'");
      }
      ++col;
    }
    if (col != v.size()) {
      throw ValidationError(path + ":" + std::to_string(lineno) +
                            ": expected 27 columns, got " + std::to_string(col));
    }
    SimLogRow r;
    r.t = v[0];
    r.sigma = Mrp(v[1], v[2], v[3]);
    r.omega = Vec3(v[4], v[5], v[6]);
    r.h_cmg = Vec3(v[7], v[8], v[9]);
    r.hc_norm = v[10];
    r.H_orbit = Vec3(v[11], v[12], v[13]);
    r.dH_orbit = Vec3(v[14], v[15], v[16]);
    r.dH_norm = v[17];
    r.delta_sigma = Vec3(v[18], v[19], v[20]);
    r.u = Vec3(v[21], v[22], v[23]);
    r.rate_clamped = v[24] != 0.0;
    r.envelope_clamped = v[25] != 0.0;
    r.lyapunov = v[26];
    log.rows.push_back(r);
  }
  if (log.rows.size() >= 2) {
    log.log_step = log.rows[1].t - log.rows[0].t;
  }
  return log;
}

std::string run_summary_json(const SimLog& log, const TerminalErrors& terminal,
                             const std::string& mode) {
  nlohmann::json j;
  j["mode"] = mode;
  j["t0"] = log.t0();
  j["tf"] = log.tf();
  j["log_step"] = log.log_step;
  j["samples"] = log.rows.size();
  j["terminal_errors"] = terminal_json(terminal);
  j["conservation_residual_Nms"] = log.conservation_residual;
  j["clamps"] = {{"rate_steps", log.rate_clamp_steps},
                 {"envelope_steps", log.envelope_clamp_steps},
                 {"adjustment_cap_steps", log.adjustment_cap_steps}};
  double max_hc = 0.0;
  double final_dH = 0.0;
  for (const auto& r : log.rows) max_hc = std::max(max_hc, r.hc_norm);
  if (!log.rows.empty()) final_dH = log.rows.back().dH_norm;
  j["max_hc_Nms"] = max_hc;
  j["final_dH_Nms"] = final_dH;
  return j.dump(2) + "\n";
}

void write_log_chart(const SimLog& log, const std::string& kind,
                     const std::string& path) {
  std::vector<double> t;
  t.reserve(log.rows.size());
  for (const auto& r : log.rows) t.push_back(r.t);

  std::vector<ChartSeries> series;
  std::string title, ylabel;
  if (kind == "hc") {
    ChartSeries s{"|h_c|", t, {}};
    for (const auto& r : log.rows) s.y.push_back(r.hc_norm);
    series.push_back(std::move(s));
    title = "CMG momentum magnitude";
    ylabel = "|h_c|  (N m s)";
  } else if (kind == "dH") {
    ChartSeries s{"|dH^o|", t, {}};
    for (const auto& r : log.rows) s.y.push_back(r.dH_norm);
    series.push_back(std::move(s));
    title = "Total momentum error magnitude";
    ylabel = "|dH^o|  (N m s)";
  } else if (kind == "sigma") {
    for (int i = 0; i < 3; ++i) {
      ChartSeries s{"sigma_" + std::to_string(i + 1), t, {}};
      for (const auto& r : log.rows) s.y.push_back(r.sigma[i]);
      series.push_back(std::move(s));
    }
    title = "Attitude components";
    ylabel = "sigma (MRP)";
  } else {
    throw ValidationError("write_log_chart: unknown kind '" + kind +
                          "' (expected hc, dH or sigma)");
  }
  write_svg_chart(path, title, "t  (s)", ylabel, series);
}

void write_run_report(const SimLog& log, const TerminalErrors& terminal,
                      const std::string& mode, const std::string& out_dir,
                      const std::string& prefix) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("write_run_report: cannot create directory " + out_dir);
  }
  const std::string base = out_dir + "/" + prefix;
  write_log_csv(log, base + "log.csv");
  std::ofstream summary(base + "summary.json");
  if (!summary) {
    throw IoError("write_run_report: cannot open " + base + "summary.json");
  }
  summary << run_summary_json(log, terminal, mode);
  write_log_chart(log, "hc", base + "hc_norm.svg");
  write_log_chart(log, "dH", base + "dH_norm.svg");
  write_log_chart(log, "sigma", base + "sigma.svg");
}

void write_campaign_stats_csv(const CampaignResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("write_campaign_stats_csv: cannot open " + path);
  }
  out << "mode,metric,average,maximum\n";
  static constexpr const char* kMetrics[] = {"attitude_deg", "omega_rad_s", "hc_Nms",
                                             "H_Nms"};
  for (const GuidanceMode mode : result.modes) {
    const auto it = result.aggregates.find(mode);
    if (it == result.aggregates.end()) continue;
    const Aggregate& agg = it->second;
    const double avg[4] = {agg.average.attitude_deg, agg.average.omega_err,
                           agg.average.hc_err, agg.average.H_err};
    const double mx[4] = {agg.maximum.attitude_deg, agg.maximum.omega_err,
                          agg.maximum.hc_err, agg.maximum.H_err};
    for (int m = 0; m < 4; ++m) {
      out << to_string(mode) << ',' << kMetrics[m] << ',' << fmt(avg[m]) << ','
          << fmt(mx[m]) << "\n";
    }
  }
  if (!out) {
    throw IoError("write_campaign_stats_csv: write to " + path + " failed");
  }
}

void write_campaign_samples_csv(const CampaignResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("write_campaign_samples_csv: cannot open " + path);
  }
  out << "sample,mode,attitude_deg,omega_rad_s,hc_Nms,H_Nms,failed,error\n";
  for (const auto& sample : result.samples) {
    if (sample.failed) {
      out << sample.index << ",,,,,," << 1 << ",\"" << sample.error << "\"\n";
      continue;
    }
    for (const GuidanceMode mode : result.modes) {
      const auto it = sample.metrics.find(mode);
      if (it == sample.metrics.end()) continue;
      const TerminalErrors& e = it->second;
      out << sample.index << ',' << to_string(mode) << ',' << fmt(e.attitude_deg) << ','
          << fmt(e.omega_err) << ',' << fmt(e.hc_err) << ',' << fmt(e.H_err) << ",0,\n";
    }
  }
  if (!out) {
    throw IoError("write_campaign_samples_csv: write to " + path + " failed");
  }
}

std::string campaign_summary_json(const CampaignResult& result) {
  nlohmann::json j;
  j["samples"] = result.samples.size();
  j["failed"] = result.failed_count();
  j["master_seed"] = result.master_seed;
  nlohmann::json modes = nlohmann::json::array();
  for (const GuidanceMode m : result.modes) modes.push_back(to_string(m));
  j["modes"] = modes;
  j["errors"] = {{"attitude_angle_deg", result.spec.attitude_angle_deg},
                 {"omega_frac", result.spec.omega_frac},
                 {"hc_mag_Nms", result.spec.hc_mag},
                 {"inertia_lo", result.spec.inertia_lo},
                 {"inertia_hi", result.spec.inertia_hi}};
  if (result.spec.disturbance_vd.has_value()) {
    const Vec3& v = *result.spec.disturbance_vd;
    j["errors"]["disturbance_vd_Nm"] = {v.x(), v.y(), v.z()};
  }
  nlohmann::json aggs;
  for (const auto& [mode, agg] : result.aggregates) {
    aggs[to_string(mode)] = {{"count", agg.count},
                             {"average", terminal_json(agg.average)},
                             {"maximum", terminal_json(agg.maximum)}};
  }
  j["aggregates"] = aggs;
  return j.dump(2) + "\n";
}

void write_campaign_report(const CampaignResult& result, const Scenario& base,
                           const NominalTrajectory& nominal,
                           const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("write_campaign_report: cannot create directory " + out_dir);
  }
  write_campaign_stats_csv(result, out_dir + "/stats.csv");
  write_campaign_samples_csv(result, out_dir + "/samples.csv");
  std::ofstream summary(out_dir + "/summary.json");
  if (!summary) {
    throw IoError("write_campaign_report: cannot open " + out_dir + "/summary.json");
  }
  summary << campaign_summary_json(result);

  // Re-run the first sample per mode for the time-series views; draws
  // are deterministic, so this reproduces the campaign's member run.
  if (!result.samples.empty() && !result.modes.empty()) {
    const ErrorDraw draw = sample_errors(result.spec, 0, result.master_seed);
    Scenario scenario = scenario_for_sample(base, result.spec, draw);
    for (const GuidanceMode mode : result.modes) {
      scenario.mode = mode;
      const SimLog log = run(scenario, nominal);
      const TerminalErrors terminal = terminal_metrics(log, scenario.bounds, nominal);
      write_run_report(log, terminal, to_string(mode), out_dir,
                       "sample000_" + to_string(mode) + "_");
    }
  }
}

}  // namespace zpm
