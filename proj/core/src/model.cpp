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

#include "singlet/model.hpp"

#include <cmath>
#include <numbers>

namespace singlet {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ConfigError(std::string(name) + " must be finite");
  }
}

void require_non_negative(double v, const char* name) {
  require_finite(v, name);
  if (v < 0.0) {
    throw ConfigError(std::string(name) + " must be non-negative, got " +
                      std::to_string(v));
  }
}

}  // namespace

double SystemParams::drive_period() const {
  const double d1 = std::abs(Delta1());
  if (d1 <= 0.0) {
    throw ConfigError("drive period undefined: Delta1 = 0");
  }
  return 2.0 * kPi / d1;
}

void SystemParams::validate() const {
  require_finite(g, "g");
  require_finite(delta_g, "delta_g");
  require_finite(omega, "omega");
  require_finite(delta_omega, "delta_omega");
  require_finite(A, "A");
  require_finite(delta_A, "delta_A");
  require_finite(omega_bar, "omega_bar");
  require_finite(epsilon, "epsilon");
  require_finite(delta_c, "delta_c");
  require_finite(Omega1, "Omega1");
  require_finite(Omega2, "Omega2");
  require_finite(delta_Omega, "delta_Omega");
  require_finite(theta, "theta");
  require_non_negative(kappa, "kappa");
  require_non_negative(gamma, "gamma");
  require_non_negative(gamma_phi, "gamma_phi");
  require_non_negative(nbar, "nbar");
  if (d_t != 3 && d_t != 4) {
    throw ConfigError("d_t must be 3 or 4, got " + std::to_string(d_t));
  }
  if (d_c < 2) {
    throw ConfigError("d_c must be >= 2, got " + std::to_string(d_c));
  }
}

void apply_resonance_conditions(SystemParams& p) {
  // delta2 = sqrt(2) g  =>  delta1 = A + g/sqrt(2)  =>  omega_bar = omega - delta1
  const double delta1 = p.A + p.g / std::sqrt(2.0);
  p.omega_bar = p.omega - delta1;
  // resonator resonant with the upper transition: delta_c = delta2 - delta1
  p.delta_c = std::sqrt(2.0) * p.g - delta1;
}

SystemParams figure3_preset(double anharmonicity) {
  if (!(anharmonicity > 0.0)) {
    throw ConfigError("figure3_preset: anharmonicity must be > 0");
  }
  SystemParams p;
  p.g = 1.0;
  p.omega = 20.0;
  p.A = anharmonicity;
  p.Omega1 = 1.0 / 3.0;
  p.Omega2 = 1.0 / 3.0;
  p.kappa = 0.3;
  p.gamma = 1.0 / 5400.0;
  p.gamma_phi = 0.0;
  p.nbar = 0.0;
  p.epsilon = 1.0;
  p.d_t = 4;
  p.d_c = 4;
  apply_resonance_conditions(p);
  return p;
}

namespace {

using FieldPtr = double SystemParams::*;

const std::map<std::string, FieldPtr>& field_table() {
  static const std::map<std::string, FieldPtr> table = {
      {"g", &SystemParams::g},
      {"delta_g", &SystemParams::delta_g},
      {"omega", &SystemParams::omega},
      {"delta_omega", &SystemParams::delta_omega},
      {"A", &SystemParams::A},
      {"delta_A", &SystemParams::delta_A},
      {"omega_bar", &SystemParams::omega_bar},
      {"epsilon", &SystemParams::epsilon},
      {"delta_c", &SystemParams::delta_c},
      {"Omega1", &SystemParams::Omega1},
      {"Omega2", &SystemParams::Omega2},
      {"delta_Omega", &SystemParams::delta_Omega},
      {"theta", &SystemParams::theta},
      {"kappa", &SystemParams::kappa},
      {"gamma", &SystemParams::gamma},
      {"gamma_phi", &SystemParams::gamma_phi},
      {"nbar", &SystemParams::nbar},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& param_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, ptr] : field_table()) out.push_back(name);
    return out;
  }();
  return names;
}

double get_param(const SystemParams& p, const std::string& name) {
  auto it = field_table().find(name);
  if (it == field_table().end()) {
    throw ConfigError("unknown parameter '" + name + "'");
  }
  return p.*(it->second);
}

void set_param(SystemParams& p, const std::string& name, double value) {
  auto it = field_table().find(name);
  if (it == field_table().end()) {
    throw ConfigError("unknown parameter '" + name + "'");
  }
  p.*(it->second) = value;
}

Matrix ModelSpec::drive_hamiltonian(double t) const {
  const int d = dim();
  Matrix h = Matrix::Zero(d, d);
  for (const auto& term : drive_terms) {
    const Complex phase =
        term.amplitude * std::exp(Complex(0.0, term.frequency * t));
    h += phase * term.op;
    h += std::conj(phase) * term.op.adjoint();
  }
  return h;
}

Matrix ModelSpec::hamiltonian(double t) const {
  return h_static + drive_hamiltonian(t);
}

ModelSpec compile(const SystemParams& params) {
  params.validate();

  const int d_t = params.d_t;
  const int d_c = params.d_c;
  const std::vector<int> dims = {d_t, d_t, d_c};

  ModelSpec spec;
  spec.dims = {d_t, d_t, d_c};
  spec.drive_period = params.drive_period();

  const Matrix a = qop::embed(qop::destroy(d_c), 2, dims);
  const Matrix b_t = qop::destroy(d_t);  // sqrt(k+1) lowering ladder

  // H'_free: delta_c a^dag a + per-transmon Duffing ladder in the rotating
  // frame, delta_k = k (omega_j - omega_bar) - A_j k (k-1).
  spec.h_static = params.delta_c * qop::embed(qop::number(d_c), 2, dims);
  for (int j = 0; j < 2; ++j) {
    Matrix diag = Matrix::Zero(d_t, d_t);
    const double detuning = params.omega_j(j) - params.omega_bar;
    const double anh = params.anharmonicity_j(j);
    for (int k = 0; k < d_t; ++k) {
      diag(k, k) = k * detuning - anh * k * (k - 1);
    }
    spec.h_static += qop::embed(diag, j, dims);
  }

  // H_cav: sum_j g_j (a^dag b_j + b_j^dag a).
  for (int j = 0; j < 2; ++j) {
    const Matrix b_j = qop::embed(b_t, j, dims);
    spec.h_static +=
        params.g_j(j) * (a.adjoint() * b_j + b_j.adjoint() * a);
  }

  // H'_d: raising ladder b_j^dag with tone coefficients
  //   transmon 1: Omega1/2 e^{i Delta1 t} - e^{-i theta} Omega2/2 e^{i Delta2 t}
  //   transmon 2: Omega1/2 e^{i Delta1 t} + delta_Omega Omega2/2 e^{i Delta2 t}
  // The opposite sign of the Omega2 tone on transmon 1 is the symmetry
  // breaking of the scheme; theta and delta_Omega are its imperfections.
  const double D1 = params.Delta1();
  const double D2 = params.Delta2();
  const Complex half{0.5, 0.0};
  const std::array<Complex, 2> omega2_coeff = {
      -std::exp(Complex(0.0, -params.theta)) * half * params.Omega2,
      Complex(params.delta_Omega, 0.0) * half * params.Omega2};
  for (int j = 0; j < 2; ++j) {
    const Matrix raise = qop::embed(b_t, j, dims).adjoint();
    if (params.Omega1 != 0.0) {
      spec.drive_terms.push_back({raise, half * params.Omega1, D1});
    }
    if (omega2_coeff[j] != Complex{0.0, 0.0}) {
      spec.drive_terms.push_back({raise, omega2_coeff[j], D2});
    }
  }

  // Collapse operators, rates folded in. Zero-rate channels are dropped.
  auto push_lindblad = [&](double rate, const Matrix& op) {
    if (rate > 0.0) {
      spec.lindblads.push_back(std::sqrt(rate) * op);
    }
  };
  for (int j = 0; j < 2; ++j) {
    for (int k = 1; k < d_t; ++k) {
      push_lindblad(k * params.gamma,
                    qop::embed(qop::basis_op(d_t, k - 1, k), j, dims));
    }
    push_lindblad(2.0 * params.gamma_phi,
                  qop::embed(qop::number(d_t), j, dims));
  }
  push_lindblad(params.kappa * (params.nbar + 1.0), a);
  push_lindblad(params.kappa * params.nbar, a.adjoint());

  return spec;
}

Matrix initial_state(const std::string& name, int d_t, int d_c) {
  const auto basis = qop::bell_basis(d_t);
  const Vector vac = qop::ket(d_c, 0);
  const int dim = d_t * d_t * d_c;

  auto pure = [&](const Vector& two_transmon) {
    const Vector full = qop::kron(two_transmon, vac);
    return Matrix(full * full.adjoint());
  };

  if (name == "ground") {
    return pure(basis.at("00"));
  }
  if (name == "mixture4") {
    Matrix rho = Matrix::Zero(dim, dim);
    for (const char* s : {"00", "11", "T", "S"}) {
      rho += 0.25 * pure(basis.at(s));
    }
    return rho;
  }
  if (auto it = basis.find(name); it != basis.end()) {
    return pure(it->second);
  }
  throw ConfigError("unknown initial state '" + name + "'");
}

}  // namespace singlet
