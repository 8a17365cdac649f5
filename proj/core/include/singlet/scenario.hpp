// Copyright 2026 The singlet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario layer: flat key = value configuration parsing, experiment
// orchestration and CSV/SVG emission. This is what the singletsim command
// line tool drives.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "singlet/optimize.hpp"

namespace singlet {

enum class Command {
  Evolve,
  Steady,
  Rates,
  Benchmarks,
  Spectrum,
  Optimize,
  Sweep,
};

Command command_from_string(const std::string& name);  // throws ConfigError
std::string to_string(Command command);

struct ScenarioConfig {
  Command command = Command::Evolve;
  SystemParams params;  // figure3_preset(A) with explicit overrides applied
  std::set<std::string> explicit_keys;

  std::string initial_state_name = "mixture4";
  double t_end = 1000.0;
  double sample_interval = 1.0;
  double atol = 1e-9;
  double rtol = 1e-8;
  double steady_tol = 1e-5;

  std::string output_dir = ".";
  std::uint64_t seed = 0;
  std::optional<double> ghz;  // g/2pi in Hz; affects axis labels only
  bool svg = false;
  int jobs = 0;

  int sector = 2;              // spectrum command
  std::vector<double> a_grid;  // spectrum command anharmonicity grid

  std::string sweep_param;     // sweep command
  std::vector<double> sweep_grid;
  std::string sweep_param2;
  std::vector<double> sweep_grid2;

  std::vector<std::string> free_params = {"omega_bar", "epsilon", "delta_c"};
  int budget = 400;       // optimize command
  double t_target = 1000.0;
  int restarts = 4;
};

// Baseline: figure3_preset(1), command = evolve, t_end = 1000.
ScenarioConfig default_config();

// One `key = value` per line, `#` starts a comment. Unknown keys, unparsable
// values and range violations raise ConfigError naming the line.
ScenarioConfig parse_config(const std::string& text);

// Grid syntax shared by the config keys: either a comma-separated list of
// values or "lo:hi:count" for count evenly spaced points.
std::vector<double> parse_grid(const std::string& text);

struct RunArtifacts {
  std::vector<std::string> csv_paths;
  std::string summary;  // contents of summary.txt
};

// Executes the configured command and writes its artifacts into output_dir.
// Numerical failures leave a failure note in summary.txt and rethrow so the
// CLI can exit with code 2.
RunArtifacts run(const ScenarioConfig& config);

}  // namespace singlet
