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

// Physical model of two driven transmons coupled to a lossy resonator,
// expressed in the frame rotating at the mean drive frequency. compile()
// turns a parameter set into the static Hamiltonian, the oscillating drive
// terms and the Lindblad operator list consumed by the dynamics module.

#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "singlet/qop.hpp"

namespace singlet {

// All rates and frequencies are in units of the coupling g; time in 1/g.
// Transmon 2 inherits its parameters through the deviation ratios:
// omega_2 = omega + delta_omega, A_2 = delta_A * A, g_2 = delta_g * g.
struct SystemParams {
  double g = 1.0;
  double delta_g = 1.0;      // g2 / g1
  double omega = 20.0;       // |0>-|1> level spacing of transmon 1
  double delta_omega = 0.0;  // omega2 - omega1
  double A = 1.0;            // anharmonicity of transmon 1
  double delta_A = 1.0;      // A2 / A1

  double omega_bar = 18.0;  // mean drive frequency (rotating-frame origin)
  double epsilon = 1.0;     // virtuality detuning of the single-photon steps
  double delta_c = 0.0;     // resonator detuning omega_c - omega_bar

  double Omega1 = 0.0;       // drive amplitudes
  double Omega2 = 0.0;
  double delta_Omega = 1.0;  // amplitude ratio of the Omega2 tone on transmon 2
  double theta = 0.0;        // phase error of the Omega2 tone on transmon 1

  double kappa = 0.0;      // resonator photon loss
  double gamma = 0.0;      // qubit relaxation
  double gamma_phi = 0.0;  // qubit pure dephasing
  double nbar = 0.0;       // residual thermal photon number

  int d_t = 4;  // transmon levels kept (3 or 4)
  int d_c = 4;  // resonator levels kept

  // Detunings are always recomputed from omega, omega_bar and A; they are
  // never stored independently.
  double delta1() const { return omega - omega_bar; }
  double delta2() const { return 2.0 * (omega - omega_bar) - 2.0 * A; }

  // Field detunings in the mean-frequency frame: Delta_{1/2} = -+(delta1 + eps).
  double Delta1() const { return -(delta1() + epsilon); }
  double Delta2() const { return -Delta1(); }

  // Period of the rotating-frame drive, 2*pi/|Delta1|.
  double drive_period() const;

  double omega_j(int j) const { return j == 0 ? omega : omega + delta_omega; }
  double anharmonicity_j(int j) const { return j == 0 ? A : delta_A * A; }
  double g_j(int j) const { return j == 0 ? g : delta_g * g; }

  // Throws ConfigError on non-finite values or range violations.
  void validate() const;
};

// Places omega_bar and delta_c on the bare resonance conditions
// delta2 = sqrt(2) g and delta_c = delta2 - delta1 for the current omega,
// A and g. Drive-induced Stark shifts are left to the optimizer.
void apply_resonance_conditions(SystemParams& p);

// Parameter set of the main time-trace figure: g = 1, Omega_{1,2} = 1/3,
// kappa = 0.3, gamma = 1/5400, omega = 20, four transmon levels, four
// resonator levels, frequencies on the resonance conditions.
SystemParams figure3_preset(double anharmonicity);

// Name-based access to the double-valued fields (config parsing, sweeps,
// optimizer). Unknown names throw ConfigError.
const std::vector<std::string>& param_names();
double get_param(const SystemParams& p, const std::string& name);
void set_param(SystemParams& p, const std::string& name, double value);

// One oscillating drive term: amplitude * exp(i frequency t) * op + h.c.
struct DriveTerm {
  Matrix op;
  Complex amplitude;
  double frequency;
};

// Compiled model. Immutable after construction; safe to share across threads.
struct ModelSpec {
  Matrix h_static;                    // H'_free + H_cav
  std::vector<DriveTerm> drive_terms; // H'_d(t); zero-amplitude terms dropped
  std::vector<Matrix> lindblads;      // sqrt(rate) folded into each operator
  std::array<int, 3> dims{};          // (d_t, d_t, d_c)
  double drive_period = 0.0;

  int dim() const { return dims[0] * dims[1] * dims[2]; }
  std::vector<int> dim_list() const { return {dims[0], dims[1], dims[2]}; }

  Matrix drive_hamiltonian(double t) const;
  Matrix hamiltonian(double t) const;
};

ModelSpec compile(const SystemParams& params);

// Initial density matrices used by the experiments, resonator in vacuum.
// `name` is one of "mixture4", "ground", or a bell_basis state name.
Matrix initial_state(const std::string& name, int d_t, int d_c);

}  // namespace singlet
