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

#include "singlet/effective.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace singlet {

namespace {

void check_denominator(double value, const char* name) {
  if (std::abs(value) < 1e-12) {
    throw SingularityError(std::string("omega_eff: resonance at ") + name +
                           " = 0");
  }
}

}  // namespace

double omega_eff(double Omega1, double Omega2, double A, double delta2,
                 double epsilon) {
  const double d0 = epsilon;
  const double d1 = delta2 + epsilon;
  const double d2 = 2.0 * A + epsilon;
  const double d3 = 2.0 * A + delta2 + epsilon;
  check_denominator(d0, "epsilon");
  check_denominator(d1, "delta2 + epsilon");
  check_denominator(d2, "2A + epsilon");
  check_denominator(d3, "2A + delta2 + epsilon");
  // Paired so both brackets vanish identically at A = 0.
  const double bracket = (1.0 / d0 - 1.0 / d2) + (1.0 / d1 - 1.0 / d3);
  return Omega1 * Omega2 / (2.0 * std::sqrt(2.0)) * bracket;
}

double omega_eff_closed_form(double Omega1, double Omega2, double A,
                             double delta2, double epsilon) {
  const double d0 = epsilon;
  const double d1 = delta2 + epsilon;
  const double d2 = 2.0 * A + epsilon;
  const double d3 = 2.0 * A + delta2 + epsilon;
  check_denominator(d0, "epsilon");
  check_denominator(d1, "delta2 + epsilon");
  check_denominator(d2, "2A + epsilon");
  check_denominator(d3, "2A + delta2 + epsilon");
  const double numerator = 2.0 * A * (d1 * d3 + d0 * d2);
  return Omega1 * Omega2 / (2.0 * std::sqrt(2.0)) * numerator /
         (d0 * d1 * d2 * d3);
}

EffectiveRates effective_rates(const SystemParams& params) {
  params.validate();
  const double g = params.g;
  const double delta1 = params.delta1();
  const double delta2 = params.delta2();

  EffectiveRates out;
  out.omega_eff = omega_eff(params.Omega1, params.Omega2, params.A, delta2,
                            params.epsilon);

  // Complex detunings fold the line widths into the energies:
  // delta~_j = delta_j - i j gamma / 2, delta~_c = delta_c - i kappa / 2.
  const Complex dt1{delta1, -params.gamma / 2.0};
  const Complex dt2{delta2, -params.gamma};
  const Complex dtc{params.delta_c, -params.kappa / 2.0};
  const Complex d1c = dt1 + dtc;

  const double sqrt2_g = std::sqrt(2.0) * g;
  out.g_eff_S0 = sqrt2_g - dt2 * d1c / sqrt2_g;
  out.g_eff_T1 = 2.0 * g - dt2 * d1c / (2.0 * g);

  if (std::abs(out.g_eff_S0) < 1e-12) {
    throw SingularityError("effective_rates: |g_eff_S0| vanishes");
  }
  const double om2 = out.omega_eff * out.omega_eff;
  out.kappa_plus = params.kappa * om2 / (2.0 * std::norm(out.g_eff_S0));
  out.kappa_minus = params.kappa * om2 / std::norm(out.g_eff_T1);

  const double det = params.delta_c - delta1;
  out.kappa_reshuffle =
      2.0 * params.kappa * g * g /
      (2.0 * g * g + det * det / 2.0 + params.kappa * params.kappa / 4.0);
  return out;
}

RateModelResult rate_model(double kappa_plus, double kappa_minus,
                           double gamma_total, double p_s0, double t) {
  if (kappa_plus < 0.0 || kappa_minus < 0.0 || gamma_total < 0.0) {
    throw std::invalid_argument("rate_model: rates must be non-negative");
  }
  const double total = kappa_plus + kappa_minus + gamma_total;
  if (total <= 0.0) {
    throw DegenerateInputError(
        "rate_model: all rates zero, steady state undefined");
  }
  RateModelResult out;
  out.steady = kappa_plus / total;
  out.p_s_at_t = out.steady + (p_s0 - out.steady) * std::exp(-total * t);
  out.error = kappa_plus > 0.0
                  ? (gamma_total + kappa_minus) / kappa_plus
                  : std::numeric_limits<double>::infinity();
  return out;
}

Benchmarks benchmarks(double gamma, double g) {
  if (!(gamma > 0.0)) {
    throw std::domain_error("benchmarks: gamma must be > 0");
  }
  if (!(g > 0.0)) {
    throw std::domain_error("benchmarks: g must be > 0");
  }
  Benchmarks out;
  const double root = std::cbrt(2.0 * gamma * g * g);
  out.kappa_opt = 4.0 * root;
  out.error_opt = 24.0 * std::pow(2.0 * gamma / g, 2.0 / 3.0);
  out.tau = 32.0 / root;
  out.steady_fidelity = std::max(0.0, 1.0 - out.error_opt);
  return out;
}

namespace {

// Indices of the product basis states whose total excitation number
// (transmon level indices plus photon number) equals `sector`.
std::vector<int> sector_indices(int d_t, int d_c, int sector) {
  std::vector<int> idx;
  for (int k1 = 0; k1 < d_t; ++k1) {
    for (int k2 = 0; k2 < d_t; ++k2) {
      for (int n = 0; n < d_c; ++n) {
        if (k1 + k2 + n == sector) {
          idx.push_back((k1 * d_t + k2) * d_c + n);
        }
      }
    }
  }
  return idx;
}

Matrix sector_block(const SystemParams& params, int sector,
                    std::vector<int>& idx) {
  const ModelSpec spec = compile(params);
  idx = sector_indices(params.d_t, params.d_c, sector);
  if (idx.empty()) {
    throw DegenerateInputError("dressed_spectrum: empty excitation sector " +
                               std::to_string(sector));
  }
  const int n = static_cast<int>(idx.size());
  Matrix block(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      block(i, j) = spec.h_static(idx[i], idx[j]);
    }
  }
  return block;
}

}  // namespace

std::vector<double> dressed_spectrum(const SystemParams& params, int sector) {
  std::vector<int> idx;
  const Matrix block = sector_block(params, sector, idx);
  Eigen::SelfAdjointEigenSolver<Matrix> es(block, Eigen::EigenvaluesOnly);
  const auto& vals = es.eigenvalues();
  return {vals.data(), vals.data() + vals.size()};
}

std::vector<DressedBranch> dressed_branches(const SystemParams& params,
                                            int sector, const Vector& probe) {
  std::vector<int> idx;
  const Matrix block = sector_block(params, sector, idx);
  if (probe.size() != params.d_t * params.d_t * params.d_c) {
    throw InvalidDimensionError(
        "dressed_branches: probe dim does not match the tensor space");
  }
  Vector probe_in_sector(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    probe_in_sector(i) = probe(idx[i]);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(block);
  std::vector<DressedBranch> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out[i].energy = es.eigenvalues()(i);
    out[i].weight = std::norm(probe_in_sector.dot(es.eigenvectors().col(i)));
  }
  return out;
}

}  // namespace singlet
