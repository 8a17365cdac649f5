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

// Derivative-free tuning of the drive and resonator frequencies. The drives
// Stark-shift the engineered resonances by O(Omega^2/delta), so the bare
// resonance conditions are only a starting point; a multi-start Nelder-Mead
// simplex fine-tunes them against the simulated steady-state fidelity.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "singlet/dynamics.hpp"

namespace singlet {

struct OptimizeOptions {
  int budget = 400;          // total objective evaluations across restarts
  double t_target = 1000.0;  // objective = steady fidelity reached by here
  int restarts = 4;
  std::uint64_t seed = 0;
  double simplex_edge = 0.05;  // initial simplex scale [g]
  int jobs = 0;                // concurrent restarts; 0 = hardware threads
  SteadyOptions steady;        // integration settings for the objective
  std::string initial_state_name = "mixture4";
  // Test hook: replaces the simulation objective entirely.
  std::function<double(const SystemParams&)> objective;
};

struct OptResult {
  SystemParams best_params;
  double best_fidelity = 0.0;
  int evaluations = 0;
  // Every evaluation in restart order: (free-parameter vector, fidelity).
  std::vector<std::pair<std::vector<double>, double>> trace;
};

// `free` is a subset of {omega_bar, epsilon, delta_c, delta_Omega}. Restarts
// jitter around the resonance-condition guesses (delta2 = sqrt2 g,
// delta_c = delta2 - delta1, epsilon = 1). With a fixed seed the trace is
// reproducible bit for bit.
OptResult optimize_frequencies(const SystemParams& base,
                               const std::vector<std::string>& free,
                               const OptimizeOptions& options = {});

struct ScanPoint {
  double value = 0.0;
  double fidelity = 0.0;
  bool converged = false;
  bool failed = false;          // numerical failure; fidelity is NaN then
  double threshold_time = -1.0;
};

struct GridScanOptions {
  double t_target = 1000.0;
  int jobs = 0;
  SteadyOptions steady;
  std::string initial_state_name = "mixture4";
};

// Independent steady_state evaluations, one per grid value; output order
// matches input order regardless of how the points are scheduled. A failing
// point is recorded, not propagated.
std::vector<ScanPoint> grid_scan(const SystemParams& base,
                                 const std::string& parameter,
                                 const std::vector<double>& values,
                                 const GridScanOptions& options = {});

}  // namespace singlet
