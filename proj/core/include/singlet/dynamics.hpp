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

// Lindblad master equation propagation: adaptive Dormand-Prince 5(4)
// integration of the density matrix, superoperator construction for
// frozen-drive oracles, observable extraction and limit-cycle steady-state
// detection under the periodic drive.

#pragma once

#include <array>
#include <vector>

#include "singlet/model.hpp"

namespace singlet {

struct IntegrateOptions {
  double atol = 1e-9;            // absolute tolerance per matrix entry
  double rtol = 1e-8;            // relative tolerance per matrix entry
  double sample_interval = 1.0;  // observable sampling cadence [1/g]
  double max_step = 0.0;         // extra cap; <= 0 keeps only the period/10 cap
  double initial_step = 1e-3;
  bool track_eigenvalues = true;  // min-eig diagnostic at each sample
  double trace_tol = 1e-6;        // |Tr rho - 1| beyond this aborts
  double positivity_floor = -1e-5;  // min eigenvalue below this aborts
};

// Sampled trajectory of the observables of interest plus the integration
// diagnostics that back the invariant checks.
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::array<double, 4>> populations;  // P00, P11, PT, PS
  std::vector<double> photon_number;
  std::vector<double> trace_error;
  std::vector<double> min_eigenvalue;  // NaN when eigenvalue tracking is off
};

struct SteadyOptions {
  double tol = 1e-5;       // max window-averaged population change
  double t_max = 2000.0;   // give up (converged = false) past this time
  double threshold = 0.9;  // fidelity threshold for threshold_time
  int window_samples = 16; // trapezoid points per drive period
  IntegrateOptions integ;
};

// Drive-period-averaged description of the asymptotic state. The steady
// state under the periodic drive is a limit cycle; fidelity is the averaged
// singlet population over the final window.
struct SteadyReport {
  double fidelity = 0.0;
  bool converged = false;
  double convergence_time = 0.0;  // end of the first window of the settled pair
  double window_drift = 0.0;      // last observed window-to-window change
  double threshold_time = -1.0;   // first window end with P_S >= threshold
  std::array<double, 4> window_populations{};
};

// Right-hand side i[rho, H(t)] + sum_k (L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho}).
Matrix lindblad_rhs(const ModelSpec& model, const Matrix& rho, double t);

// Superoperator L with vec(rhs) = L vec(rho), column-stacking convention.
// Serves as the independent oracle for the direct right-hand side and as a
// frozen-drive steady-state solver.
Matrix build_liouvillian(const ModelSpec& model, double t);

// P_i = Tr((|psi_i><psi_i| (x) I_cav) rho) for psi_i = 00, 11, T, S.
std::array<double, 4> populations(const Matrix& rho, int d_t, int d_c);

// `rho_final`, when given, receives the density matrix at t_end.
TimeSeries integrate(const ModelSpec& model, const Matrix& rho0, double t_end,
                     const IntegrateOptions& options = {},
                     Matrix* rho_final = nullptr);

// Integrates window by window (window = one drive period) until the averaged
// population vector settles to `tol` or t_max is reached. Optionally records
// the sampled trajectory of the run into `series`.
SteadyReport steady_state(const ModelSpec& model, const Matrix& rho0,
                          const SteadyOptions& options = {},
                          TimeSeries* series = nullptr);

}  // namespace singlet
