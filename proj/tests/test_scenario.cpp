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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "singlet/scenario.hpp"

using namespace singlet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "singlet_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kSmallDims = "d_t = 3\nd_c = 2\n";

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("empty config yields the full default scenario") {
  const ScenarioConfig c = parse_config("");
  CHECK(c.command == Command::Evolve);
  CHECK(c.params.A == 1.0);
  CHECK(c.t_end == 1000.0);
  CHECK(c.params.kappa == doctest::Approx(0.3));
  CHECK(c.initial_state_name == "mixture4");
}

TEST_CASE("anharmonicity override rebuilds the preset") {
  const ScenarioConfig c = parse_config("A = 4.75\n");
  CHECK(c.params.A == 4.75);
  // resonance conditions follow the new anharmonicity
  CHECK(c.params.delta2() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(c.params.omega_bar ==
        doctest::Approx(20.0 - 4.75 - std::sqrt(2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("explicit frequencies are not retuned") {
  const ScenarioConfig c = parse_config("A = 2\nomega_bar = 17.0\n");
  CHECK(c.params.omega_bar == 17.0);
  // delta_c still follows the resonance rule
  CHECK(c.params.delta_c ==
        doctest::Approx(std::sqrt(2.0) - 2.0 - std::sqrt(2.0) / 2.0)
            .epsilon(1e-12));
}

TEST_CASE("config errors cite the offending line") {
  CHECK_THROWS_WITH_AS(parse_config("kappa = -1\n"),
                       doctest::Contains("non-negative"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("\n\nwhat = 1\n"),
                       doctest::Contains("line 3"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("kappa = abc\n"),
                       doctest::Contains("cannot parse"), ConfigError);
  CHECK_THROWS_AS(parse_config("command = simulate\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("kappa 0.3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("command = sweep\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("d_t = 7\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
  const ScenarioConfig c = parse_config(
      "# a comment\n"
      "\n"
      "kappa = 0.25  # trailing comment\n");
  CHECK(c.params.kappa == 0.25);
  CHECK(c.explicit_keys.count("kappa") == 1);
}

TEST_CASE("grid syntax") {
  CHECK(parse_grid("1,2,3") == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(parse_grid("0:1:5") ==
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(parse_grid("2:3:1") == std::vector<double>{2.0});
  CHECK(parse_grid("0.5") == std::vector<double>{0.5});
  CHECK_THROWS_AS(parse_grid(""), ConfigError);
}

TEST_CASE("benchmarks command emits the rates csv") {
  const auto dir = fresh_dir("bench");
  ScenarioConfig c = parse_config("command = benchmarks\n");
  c.output_dir = dir.string();
  const RunArtifacts art = run(c);
  REQUIRE(art.csv_paths.size() == 1);
  const std::string csv = slurp(art.csv_paths[0]);
  CHECK(csv.find("kappa_opt,error_opt,tau,steady_fidelity") == 0);
  CHECK(csv.find("0.287") != std::string::npos);
  CHECK(fs::exists(dir / "summary.txt"));
}

TEST_CASE("evolve command writes the pinned timeseries schema") {
  const auto dir = fresh_dir("evolve");
  ScenarioConfig c = parse_config(
      std::string("command = evolve\n") + kSmallDims +
      "t_end = 5\nsample_interval = 1\n");
  c.output_dir = dir.string();
  const RunArtifacts art = run(c);
  const std::string csv = slurp((dir / "timeseries.csv").string());
  CHECK(csv.rfind("t,P00,P11,PT,PS,nphot,trace_err,mineig\n", 0) == 0);

  // first row: t = 0 with the mixture4 populations
  std::istringstream lines(csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  std::istringstream cells(first);
  std::string cell;
  std::vector<double> row;
  while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
  REQUIRE(row.size() == 8);
  CHECK(row[0] == 0.0);
  for (int q = 1; q <= 4; ++q) {
    CHECK(row[q] == doctest::Approx(0.25).epsilon(1e-12));
  }

  // byte-identical reruns
  const auto dir2 = fresh_dir("evolve2");
  c.output_dir = dir2.string();
  run(c);
  CHECK(slurp((dir / "timeseries.csv").string()) ==
        slurp((dir2 / "timeseries.csv").string()));
}

TEST_CASE("svg rendering is opt-in and well formed") {
  const auto dir = fresh_dir("svg");
  ScenarioConfig c = parse_config(
      std::string("command = evolve\nsvg = true\n") + kSmallDims +
      "t_end = 3\nsample_interval = 1\nghz = 3e8\n");
  c.output_dir = dir.string();
  run(c);
  const std::string svg = slurp((dir / "populations.svg").string());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("1/g =") != std::string::npos);  // ghz axis annotation
}

TEST_CASE("steady command reports fidelity and convergence") {
  const auto dir = fresh_dir("steady");
  ScenarioConfig c = parse_config(
      std::string("command = steady\n") + kSmallDims +
      "Omega1 = 0\nOmega2 = 0\ninitial_state = ground\nt_end = 400\n");
  c.output_dir = dir.string();
  const RunArtifacts art = run(c);
  CHECK(art.summary.find("fidelity =") != std::string::npos);
  CHECK(art.summary.find("converged = 1") != std::string::npos);
  CHECK(fs::exists(dir / "timeseries.csv"));
}

TEST_CASE("spectrum command emits one row per anharmonicity") {
  const auto dir = fresh_dir("spectrum");
  ScenarioConfig c = parse_config(
      "command = spectrum\nsector = 2\na_grid = 1:2:3\n");
  c.output_dir = dir.string();
  run(c);
  const std::string csv = slurp((dir / "spectrum.csv").string());
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("A,eig1,", 0) == 0);
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("degenerate sweep equals the steady command") {
  const std::string small =
      std::string(kSmallDims) + "t_end = 50\nsteady_tol = 1e-5\n";

  const auto dir_sweep = fresh_dir("sweep1");
  ScenarioConfig cs = parse_config(
      "command = sweep\nsweep_param = delta_omega\nsweep_grid = 0\n" + small);
  cs.output_dir = dir_sweep.string();
  run(cs);
  const std::string sweep_csv = slurp((dir_sweep / "sweep.csv").string());
  CHECK(sweep_csv.rfind("delta_omega,fidelity,converged\n", 0) == 0);

  const auto dir_steady = fresh_dir("steady1");
  ScenarioConfig cd = parse_config("command = steady\n" + small);
  cd.output_dir = dir_steady.string();
  const RunArtifacts steady_art = run(cd);

  // extract fidelity from both outputs
  const auto fid_from_summary = [&](const std::string& text) {
    const auto pos = text.find("fidelity = ");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + 11));
  };
  std::istringstream lines(sweep_csv);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  const auto c1 = row.find(',');
  const auto c2 = row.find(',', c1 + 1);
  const double sweep_fid = std::stod(row.substr(c1 + 1, c2 - c1 - 1));
  CHECK(sweep_fid ==
        doctest::Approx(fid_from_summary(steady_art.summary)).epsilon(1e-12));
}

TEST_CASE("two-parameter sweep emits the grid and preparation times") {
  const auto dir = fresh_dir("sweep2");
  ScenarioConfig c = parse_config(
      std::string("command = sweep\n") + kSmallDims +
      "sweep_param = delta_A\nsweep_grid = 0.75,1.25\n"
      "sweep_param2 = delta_g\nsweep_grid2 = 0.5,1.0,1.5\n"
      "t_end = 30\n");
  c.output_dir = dir.string();
  const RunArtifacts art = run(c);
  CHECK(art.csv_paths.size() == 2);

  const std::string csv = slurp((dir / "sweep.csv").string());
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "delta_A,delta_g,fidelity,converged");
  // declaration order: outer grid major, inner grid minor
  std::getline(lines, line);
  CHECK(line.rfind("0.75,0.5,", 0) == 0);
  std::getline(lines, line);
  CHECK(line.rfind("0.75,1,", 0) == 0);
  int rows = 2;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 6);

  const std::string pt = slurp((dir / "preptime.csv").string());
  CHECK(pt.rfind("delta_A,delta_g,time_to_threshold\n", 0) == 0);
}

TEST_CASE("numerical failure leaves a note and rethrows") {
  const auto dir = fresh_dir("fail");
  ScenarioConfig c = parse_config(
      std::string("command = evolve\n") + kSmallDims +
      "t_end = 5\nrtol = 1e-300\natol = 1e-300\n");
  c.output_dir = dir.string();
  CHECK_THROWS_AS(run(c), NumericalFailure);
  const std::string summary = slurp((dir / "summary.txt").string());
  CHECK(summary.find("FAILED") != std::string::npos);
}

}  // TEST_SUITE
