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

#include <map>
#include <string>
#include <vector>

#include "zpm/experiments.hpp"

namespace zpm {

/// Parsed key-value configuration: section -> key -> raw value string.
/// Every key must exist in the default configuration; unknown keys are
/// validation errors, so typos cannot silently fall back to defaults.
class Config {
 public:
  /// Built-in defaults (the -90 deg station maneuver case).
  static Config defaults();
  /// Defaults overlaid with a file.
  static Config load(const std::string& path);
  /// Defaults overlaid with config text (diagnostics use `origin`).
  static Config parse(const std::string& text, const std::string& origin = "<config>");

  /// Applies one "section.key=value" override.
  void set(const std::string& dotted_key, const std::string& value);

  const std::string& raw(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  Vec3 get_vec3(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;

 private:
  void merge_text(const std::string& text, const std::string& origin, bool allow_new_keys);
  std::map<std::string, std::map<std::string, std::string>> values_;
};

/// Fully documented configuration text equal to the built-in defaults.
const std::string& default_config_text();

/// Scenario plus campaign error specification built from a Config.
struct LoadedSetup {
  Scenario scenario;
  ErrorSpec errors;
  std::string trajectory_file;  // optional pre-planned trajectory to import
};

LoadedSetup setup_from_config(const Config& config);

/// generate_nominal / import_trajectory according to the setup.
NominalTrajectory nominal_for_setup(const LoadedSetup& setup);

}  // namespace zpm
