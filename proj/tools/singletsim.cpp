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

// singletsim <command> [--config FILE] [--out DIR] [--jobs N] [--svg]
//            [--seed N]
//
// Commands: evolve, steady, rates, benchmarks, spectrum, optimize, sweep.
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "singlet/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw singlet::ConfigError("cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative stabilization of a two-transmon singlet state"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int jobs = -1;
  bool svg = false;
  long long seed = -1;

  for (const char* name :
       {"evolve", "steady", "rates", "benchmarks", "spectrum", "optimize",
        "sweep"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat key = value config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", jobs, "worker threads for sweeps and restarts");
    sub->add_flag("--svg", svg, "also render SVG line charts");
    sub->add_option("--seed", seed, "random seed for the optimizer");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    singlet::ScenarioConfig config =
        config_path.empty() ? singlet::default_config()
                            : singlet::parse_config(read_file(config_path));
    config.command =
        singlet::command_from_string(app.get_subcommands().front()->get_name());
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (jobs >= 0) config.jobs = jobs;
    if (svg) config.svg = true;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);

    const singlet::RunArtifacts artifacts = singlet::run(config);
    std::cout << artifacts.summary;
    for (const auto& path : artifacts.csv_paths) {
      std::cout << "wrote " << path << "\n";
    }
    return 0;
  } catch (const singlet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const singlet::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
